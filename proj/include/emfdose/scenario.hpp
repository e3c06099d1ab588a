#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "emfdose/compliance.hpp"
#include "emfdose/propagation.hpp"
#include "emfdose/tissue.hpp"

namespace emfdose::scenario {

struct PointEvaluation {
  propagation::Point point;
};

struct GridEvaluation {
  double x_min_m = 0.0;
  double x_max_m = 0.0;
  double y_min_m = 0.0;
  double y_max_m = 0.0;
  double step_m = 0.0;
};

using Evaluation = std::variant<PointEvaluation, GridEvaluation>;

/// A complete evaluable deployment. Immutable during evaluation.
struct Scenario {
  std::vector<propagation::RadioSource> sources;
  tissue::TissueProfile tissue;
  compliance::LimitProfile limits;
  compliance::Authority authority = compliance::Authority::icnirp;
  compliance::Population population = compliance::Population::general;
  Evaluation evaluation;
};

/// Structural validation: at least one source, each source valid, grid step
/// positive with ordered bounds. Throws InvalidParameter / EmptyGrid.
void validate(const Scenario& scn);

inline constexpr std::size_t no_source = static_cast<std::size_t>(-1);

struct ExposureSample {
  propagation::Point point;
  double pd_total_w_per_m2 = 0.0;
  double sar_surface_w_per_kg = 0.0;
  std::size_t dominant_source = no_source;  // index of largest PD contributor
  compliance::ComplianceResult compliance{};
  bool collocated = false;  // grid point sat on a source; numeric fields NaN
};

/// Exposure at one point: per-source link-budget PD summed incoherently,
/// surface SAR per source with that source's tissue parameters then summed,
/// compliance from the most restrictive rule among the source frequencies.
/// Throws SourceCollocation if p equals a source position.
ExposureSample evaluate_point(const Scenario& scn, propagation::Point p);

/// Number of grid columns/rows implied by the bounds and step.
std::size_t grid_columns(const GridEvaluation& grid);
std::size_t grid_rows(const GridEvaluation& grid);

/// Row-major exposure map over the scenario's grid (y outer, x inner, both
/// ascending). Grid points collocated with a source are flagged, not errors.
/// Results are identical for any thread count.
std::vector<ExposureSample> exposure_map(const Scenario& scn,
                                         unsigned threads = 1);

/// Uniform power multiplier in (0, 1]; all source powers scaled.
Scenario scale_powers(Scenario scn, double factor);

/// Largest uniform power scale s ∈ (0, 1] making the protected point
/// compliant; 1 if already compliant. The returned s is verified by
/// re-evaluation of the scaled scenario.
double power_control(const Scenario& scn, propagation::Point protected_point);

/// Re-aims the indexed source's steerable beam to the bearing opposite the
/// protected point. Idempotent. Throws NotSteerable for fixed patterns.
Scenario steer_away(Scenario scn, std::size_t source_index,
                    propagation::Point protected_point);

}  // namespace emfdose::scenario
