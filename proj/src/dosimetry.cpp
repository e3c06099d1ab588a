#include "emfdose/dosimetry.hpp"

#include <cmath>

#include "emfdose/errors.hpp"

namespace emfdose::dosimetry {

double local_sar(double conductivity_s_per_m, double e_magnitude_rms_v_per_m,
                 double mass_density_kg_per_m3) {
  if (!std::isfinite(mass_density_kg_per_m3) || mass_density_kg_per_m3 <= 0.0)
    throw InvalidParameter("local_sar: mass density must be finite and > 0");
  if (!std::isfinite(conductivity_s_per_m) || conductivity_s_per_m < 0.0)
    throw InvalidParameter("local_sar: conductivity must be finite and >= 0");
  if (!std::isfinite(e_magnitude_rms_v_per_m) || e_magnitude_rms_v_per_m < 0.0)
    throw InvalidParameter("local_sar: |E| must be finite and >= 0");
  return conductivity_s_per_m * e_magnitude_rms_v_per_m *
         e_magnitude_rms_v_per_m / mass_density_kg_per_m3;
}

SurfaceExposure surface_sar(double pd_w_per_m2, double reflection,
                            double penetration_depth_m,
                            double mass_density_kg_per_m3) {
  if (!std::isfinite(pd_w_per_m2) || pd_w_per_m2 < 0.0)
    throw InvalidParameter("surface_sar: PD must be finite and >= 0");
  if (!std::isfinite(reflection) || reflection < 0.0 || reflection >= 1.0)
    throw InvalidParameter("surface_sar: reflection must lie in [0, 1)");
  if (!std::isfinite(penetration_depth_m) || penetration_depth_m <= 0.0)
    throw InvalidParameter("surface_sar: penetration depth must be > 0");
  if (!std::isfinite(mass_density_kg_per_m3) || mass_density_kg_per_m3 <= 0.0)
    throw InvalidParameter("surface_sar: mass density must be > 0");

  SurfaceExposure out;
  out.pd_incident_ = pd_w_per_m2;
  out.reflection_ = reflection;
  out.penetration_depth_ = penetration_depth_m;
  out.mass_density_ = mass_density_kg_per_m3;
  out.sar_surface_ = 2.0 * pd_w_per_m2 * (1.0 - reflection * reflection) /
                     (penetration_depth_m * mass_density_kg_per_m3);
  return out;
}

double sar_depth_profile(const SurfaceExposure& exposure, double depth_m) {
  if (!std::isfinite(depth_m) || depth_m < 0.0)
    throw InvalidParameter("sar_depth_profile: depth must be finite and >= 0");
  return exposure.sar_surface_w_per_kg() *
         std::exp(-2.0 * depth_m / exposure.penetration_depth_m());
}

double absorbed_power_per_area(const SurfaceExposure& exposure) {
  // ∫₀^∞ ρ·SAR(z) dz = ρ·sar_surface·δ/2; written in the simplified form
  // pd·(1 − R²) so the conservation identity holds bit-for-bit.
  const double r = exposure.reflection();
  return exposure.pd_incident_w_per_m2() * (1.0 - r * r);
}

}  // namespace emfdose::dosimetry
