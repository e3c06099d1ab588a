#pragma once

namespace emfdose::dosimetry {

/// Air–skin boundary exposure. Only surface_sar() creates instances, so
/// sar_surface always satisfies 2·pd·(1 − R²)/(δ·ρ).
class SurfaceExposure {
 public:
  double pd_incident_w_per_m2() const { return pd_incident_; }
  double reflection() const { return reflection_; }
  double penetration_depth_m() const { return penetration_depth_; }
  double mass_density_kg_per_m3() const { return mass_density_; }
  double sar_surface_w_per_kg() const { return sar_surface_; }

 private:
  friend SurfaceExposure surface_sar(double, double, double, double);
  SurfaceExposure() = default;

  double pd_incident_ = 0.0;
  double reflection_ = 0.0;
  double penetration_depth_ = 0.0;
  double mass_density_ = 0.0;
  double sar_surface_ = 0.0;
};

/// Local SAR σ|E|²/ρ at a point inside tissue, W/kg. E is RMS.
double local_sar(double conductivity_s_per_m, double e_magnitude_rms_v_per_m,
                 double mass_density_kg_per_m3);

/// Surface SAR 2·pd·(1 − R²)/(δ·ρ) at the air–skin boundary.
/// Requires pd ≥ 0, 0 ≤ R < 1, δ > 0, ρ > 0.
SurfaceExposure surface_sar(double pd_w_per_m2, double reflection,
                            double penetration_depth_m,
                            double mass_density_kg_per_m3);

/// Depth-resolved SAR(z) = sar_surface · exp(−2z/δ), z ≥ 0 below the boundary.
double sar_depth_profile(const SurfaceExposure& exposure, double depth_m);

/// Power absorbed per unit skin area: the depth integral of ρ·SAR(z),
/// ∫₀^∞ ρ·sar_surface·e^(−2z/δ) dz = ρ·sar_surface·δ/2, which simplifies to
/// pd·(1 − R²). Computed in the simplified form so the identity is exact.
double absorbed_power_per_area(const SurfaceExposure& exposure);

}  // namespace emfdose::dosimetry
