#include "emfdose/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "emfdose/constants.hpp"
#include "emfdose/dosimetry.hpp"
#include "emfdose/errors.hpp"

namespace emfdose::scenario {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

void check_grid(const GridEvaluation& grid) {
  if (!std::isfinite(grid.step_m) || grid.step_m <= 0.0)
    throw InvalidParameter("grid step must be finite and > 0");
  if (!std::isfinite(grid.x_min_m) || !std::isfinite(grid.x_max_m) ||
      !std::isfinite(grid.y_min_m) || !std::isfinite(grid.y_max_m))
    throw InvalidParameter("grid bounds must be finite");
  if (grid.x_max_m < grid.x_min_m || grid.y_max_m < grid.y_min_m)
    throw EmptyGrid("grid bounds are reversed; no evaluation points");
}

std::size_t axis_points(double lo, double hi, double step) {
  // Tolerant fencepost: a span that is a whole multiple of step up to
  // rounding still yields the last point.
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace

void validate(const Scenario& scn) {
  if (scn.sources.empty())
    throw InvalidParameter("scenario has no sources");
  for (const auto& source : scn.sources) propagation::validate(source);
  if (const auto* grid = std::get_if<GridEvaluation>(&scn.evaluation))
    check_grid(*grid);
  if (const auto* point = std::get_if<PointEvaluation>(&scn.evaluation)) {
    if (!std::isfinite(point->point.x_m) || !std::isfinite(point->point.y_m))
      throw InvalidParameter("evaluation point must be finite");
  }
}

ExposureSample evaluate_point(const Scenario& scn, propagation::Point p) {
  if (scn.sources.empty())
    throw InvalidParameter("scenario has no sources");

  ExposureSample sample{};
  sample.point = p;
  double best_pd = -1.0;
  for (std::size_t i = 0; i < scn.sources.size(); ++i) {
    const auto& source = scn.sources[i];
    const double dx = p.x_m - source.position.x_m;
    const double dy = p.y_m - source.position.y_m;
    if (dx == 0.0 && dy == 0.0)
      throw SourceCollocation("evaluation point coincides with source " +
                              std::to_string(i));
    const double distance = std::sqrt(dx * dx + dy * dy);
    const double bearing = std::atan2(dy, dx);
    const double pd = propagation::pd_link_budget(source, distance, bearing);

    const tissue::BoundaryParameters bp =
        tissue::boundary_parameters(scn.tissue, source.frequency_hz);
    const auto exposure = dosimetry::surface_sar(
        pd, bp.reflection, bp.penetration_depth_m, bp.mass_density_kg_per_m3);

    sample.pd_total_w_per_m2 += pd;
    sample.sar_surface_w_per_kg += exposure.sar_surface_w_per_kg();
    if (pd > best_pd) {
      best_pd = pd;
      sample.dominant_source = i;
    }
  }

  // Most restrictive rule among the frequencies present; totals are compared
  // against each rule, which over-counts cross-band contributions on purpose.
  const compliance::Measured totals{sample.sar_surface_w_per_kg,
                                    sample.pd_total_w_per_m2};
  bool first = true;
  for (std::size_t i = 0; i < scn.sources.size(); ++i) {
    const double f = scn.sources[i].frequency_hz;
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      seen |= scn.sources[j].frequency_hz == f;
    if (seen) continue;
    const auto result = compliance::check(totals, scn.limits, f, scn.population);
    if (first || result.margin_db < sample.compliance.margin_db) {
      sample.compliance = result;
      first = false;
    }
  }
  return sample;
}

std::size_t grid_columns(const GridEvaluation& grid) {
  check_grid(grid);
  return axis_points(grid.x_min_m, grid.x_max_m, grid.step_m);
}

std::size_t grid_rows(const GridEvaluation& grid) {
  check_grid(grid);
  return axis_points(grid.y_min_m, grid.y_max_m, grid.step_m);
}

std::vector<ExposureSample> exposure_map(const Scenario& scn, unsigned threads) {
  const auto* grid = std::get_if<GridEvaluation>(&scn.evaluation);
  if (grid == nullptr)
    throw InvalidParameter("exposure_map requires a grid evaluation");
  check_grid(*grid);
  if (scn.sources.empty())
    throw InvalidParameter("scenario has no sources");

  const std::size_t nx = grid_columns(*grid);
  const std::size_t ny = grid_rows(*grid);
  const std::size_t total = nx * ny;
  std::vector<ExposureSample> samples(total);

  auto evaluate_index = [&](std::size_t index) {
    const std::size_t iy = index / nx;
    const std::size_t ix = index % nx;
    const propagation::Point p{
        grid->x_min_m + static_cast<double>(ix) * grid->step_m,
        grid->y_min_m + static_cast<double>(iy) * grid->step_m};
    const bool collocated =
        std::any_of(scn.sources.begin(), scn.sources.end(), [&](const auto& s) {
          return s.position.x_m == p.x_m && s.position.y_m == p.y_m;
        });
    if (collocated) {
      ExposureSample sample{};
      sample.point = p;
      sample.pd_total_w_per_m2 = nan_value;
      sample.sar_surface_w_per_kg = nan_value;
      sample.compliance.margin_db = nan_value;
      sample.collocated = true;
      samples[index] = sample;
    } else {
      samples[index] = evaluate_point(scn, p);
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate_index(i);
  } else {
    // Static partition into disjoint slots; per-sample work is order-free, so
    // the result is identical to the sequential pass.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < total; i += workers) evaluate_index(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return samples;
}

Scenario scale_powers(Scenario scn, double factor) {
  if (!std::isfinite(factor) || factor <= 0.0)
    throw InvalidParameter("power scale factor must be finite and > 0");
  for (auto& source : scn.sources) source.power_w *= factor;
  return scn;
}

double power_control(const Scenario& scn, propagation::Point protected_point) {
  const ExposureSample sample = evaluate_point(scn, protected_point);
  if (sample.compliance.compliant) return 1.0;

  double scale = sample.compliance.limit / sample.compliance.measured;
  // The closed form can overshoot by an ulp or two once the scaled powers are
  // rounded; walk down until the re-evaluated point actually complies.
  for (int attempt = 0; attempt < 8; ++attempt) {
    const ExposureSample scaled =
        evaluate_point(scale_powers(scn, scale), protected_point);
    if (scaled.compliance.compliant) return scale;
    scale = std::nextafter(scale, 0.0);
  }
  throw Error("power_control failed to converge");  // unreachable for linear metrics
}

Scenario steer_away(Scenario scn, std::size_t source_index,
                    propagation::Point protected_point) {
  if (source_index >= scn.sources.size())
    throw InvalidParameter("steer_away: source index " +
                           std::to_string(source_index) + " out of range");
  auto& source = scn.sources[source_index];
  if (!propagation::is_steerable(source.pattern))
    throw NotSteerable("steer_away: source " + std::to_string(source_index) +
                       " has a fixed pattern");
  const double to_point = std::atan2(protected_point.y_m - source.position.y_m,
                                     protected_point.x_m - source.position.x_m);
  auto& beam = std::get<propagation::SteeredBeam>(source.pattern);
  beam.steer_rad = propagation::wrap_angle(to_point + constants::pi);
  return scn;
}

}  // namespace emfdose::scenario
