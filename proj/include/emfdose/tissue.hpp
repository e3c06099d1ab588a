#pragma once

#include <optional>
#include <string>
#include <vector>

namespace emfdose::tissue {

/// One row of a tissue dielectric table.
///
/// The two optional members override the first-principles derivation of
/// penetration depth and reflection coefficient. A profile must carry an
/// override column on all rows or on none.
struct TissueRow {
  double frequency_hz = 0.0;
  double eps_real = 1.0;                  // relative permittivity ε′
  double conductivity_s_per_m = 0.0;      // σ
  double mass_density_kg_per_m3 = 1000.0; // ρ
  std::optional<double> penetration_depth_m;  // δ override
  std::optional<double> reflection;           // R override, amplitude in [0,1)
};

/// Immutable frequency-indexed dielectric table for one tissue.
class TissueProfile {
 public:
  /// Validates the table: at least one row, strictly increasing frequency,
  /// σ ≥ 0, ε′ ≥ 1, ρ > 0, overrides finite/positive (R < 1) and all-or-none
  /// per column. Throws InvalidParameter on violation.
  TissueProfile(std::string name, std::vector<TissueRow> rows);

  const std::string& name() const { return name_; }
  const std::vector<TissueRow>& rows() const { return rows_; }
  double min_frequency_hz() const { return rows_.front().frequency_hz; }
  double max_frequency_hz() const { return rows_.back().frequency_hz; }
  bool has_depth_override() const { return has_depth_override_; }
  bool has_reflection_override() const { return has_reflection_override_; }

 private:
  std::string name_;
  std::vector<TissueRow> rows_;
  bool has_depth_override_ = false;
  bool has_reflection_override_ = false;
};

struct DielectricPoint {
  double eps_real;
  double conductivity_s_per_m;
  double mass_density_kg_per_m3;
};

/// Table lookup at frequency f. ε′ and σ interpolate linearly in log10(f)
/// between bracketing rows; ρ interpolates linearly in f. Queries at a row
/// frequency return that row verbatim. Throws FrequencyOutOfRange outside
/// the table span.
DielectricPoint lookup_tissue(const TissueProfile& profile, double frequency_hz);

/// Normal-incidence Fresnel amplitude reflection |(1 − √ε*)/(1 + √ε*)| with
/// ε* = ε′ − j·σ/(2πf·ε₀). Result lies in [0, 1).
double reflection_coefficient(double eps_real, double conductivity_s_per_m,
                              double frequency_hz);

/// E-field 1/e depth δ = 1/α, α = (2πf/c)·|Im √ε*|. Power decays as
/// exp(−2z/δ). Throws LosslessMedium when σ = 0.
double penetration_depth(double eps_real, double conductivity_s_per_m,
                         double frequency_hz);

/// Everything the air–skin boundary needs at one frequency: interpolated
/// dielectrics plus δ and R, derived unless the profile carries overrides.
struct BoundaryParameters {
  double eps_real;
  double conductivity_s_per_m;
  double mass_density_kg_per_m3;
  double penetration_depth_m;
  double reflection;
};

BoundaryParameters boundary_parameters(const TissueProfile& profile,
                                       double frequency_hz);

}  // namespace emfdose::tissue
