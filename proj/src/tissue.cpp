#include "emfdose/tissue.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "emfdose/constants.hpp"
#include "emfdose/errors.hpp"

namespace emfdose::tissue {

namespace {

bool finite(double x) { return std::isfinite(x); }

void check_row(const TissueRow& row, std::size_t index) {
  std::ostringstream msg;
  msg << "tissue row " << index << ": ";
  if (!finite(row.frequency_hz) || row.frequency_hz <= 0.0) {
    msg << "frequency_hz must be finite and > 0";
    throw InvalidParameter(msg.str());
  }
  if (!finite(row.eps_real) || row.eps_real < 1.0) {
    msg << "eps_real must be finite and >= 1";
    throw InvalidParameter(msg.str());
  }
  if (!finite(row.conductivity_s_per_m) || row.conductivity_s_per_m < 0.0) {
    msg << "conductivity must be finite and >= 0";
    throw InvalidParameter(msg.str());
  }
  if (!finite(row.mass_density_kg_per_m3) || row.mass_density_kg_per_m3 <= 0.0) {
    msg << "mass density must be finite and > 0";
    throw InvalidParameter(msg.str());
  }
  if (row.penetration_depth_m &&
      (!finite(*row.penetration_depth_m) || *row.penetration_depth_m <= 0.0)) {
    msg << "penetration depth override must be finite and > 0";
    throw InvalidParameter(msg.str());
  }
  if (row.reflection &&
      (!finite(*row.reflection) || *row.reflection < 0.0 || *row.reflection >= 1.0)) {
    msg << "reflection override must lie in [0, 1)";
    throw InvalidParameter(msg.str());
  }
}

std::complex<double> complex_permittivity(double eps_real, double conductivity,
                                          double frequency_hz) {
  const double omega_eps0 = 2.0 * constants::pi * frequency_hz *
                            constants::vacuum_permittivity_f_per_m;
  return {eps_real, -conductivity / omega_eps0};
}

void check_medium_inputs(const char* op, double eps_real, double conductivity,
                         double frequency_hz) {
  if (!finite(frequency_hz) || frequency_hz <= 0.0)
    throw InvalidParameter(std::string(op) + ": frequency must be finite and > 0");
  if (!finite(eps_real) || eps_real < 1.0)
    throw InvalidParameter(std::string(op) + ": eps_real must be finite and >= 1");
  if (!finite(conductivity) || conductivity < 0.0)
    throw InvalidParameter(std::string(op) + ": conductivity must be finite and >= 0");
}

// Interpolation weight for f between bracketing rows, linear in log10(f).
double log_weight(double f, double f_lo, double f_hi) {
  return (std::log10(f) - std::log10(f_lo)) /
         (std::log10(f_hi) - std::log10(f_lo));
}

}  // namespace

TissueProfile::TissueProfile(std::string name, std::vector<TissueRow> rows)
    : name_(std::move(name)), rows_(std::move(rows)) {
  if (name_.empty()) throw InvalidParameter("tissue profile name is empty");
  if (rows_.empty())
    throw InvalidParameter("tissue profile '" + name_ + "' has no rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    check_row(rows_[i], i);
    if (i > 0 && rows_[i].frequency_hz <= rows_[i - 1].frequency_hz)
      throw InvalidParameter("tissue profile '" + name_ +
                             "': row frequencies must be strictly increasing");
  }
  // Override columns are all-or-none so interpolation never has to mix
  // derived values with overrides.
  std::size_t with_depth = 0;
  std::size_t with_reflection = 0;
  for (const auto& row : rows_) {
    with_depth += row.penetration_depth_m.has_value();
    with_reflection += row.reflection.has_value();
  }
  if (with_depth != 0 && with_depth != rows_.size())
    throw InvalidParameter("tissue profile '" + name_ +
                           "': delta_m override must appear on every row or none");
  if (with_reflection != 0 && with_reflection != rows_.size())
    throw InvalidParameter("tissue profile '" + name_ +
                           "': reflection override must appear on every row or none");
  has_depth_override_ = with_depth == rows_.size();
  has_reflection_override_ = with_reflection == rows_.size();
}

namespace {

struct Bracket {
  const TissueRow* exact = nullptr;  // set when f sits on a row
  const TissueRow* lo = nullptr;
  const TissueRow* hi = nullptr;
  double weight = 0.0;  // log10-f weight between lo and hi
};

Bracket bracket_rows(const TissueProfile& profile, double frequency_hz) {
  if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0)
    throw InvalidParameter("tissue lookup: frequency must be finite and > 0");
  const auto& rows = profile.rows();
  if (frequency_hz < profile.min_frequency_hz() ||
      frequency_hz > profile.max_frequency_hz()) {
    std::ostringstream msg;
    msg << "tissue profile '" << profile.name() << "': frequency "
        << frequency_hz << " Hz outside table span [" << profile.min_frequency_hz()
        << ", " << profile.max_frequency_hz() << "] Hz";
    throw FrequencyOutOfRange(msg.str());
  }
  Bracket b;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].frequency_hz == frequency_hz) {
      b.exact = &rows[i];
      return b;
    }
    if (rows[i].frequency_hz > frequency_hz) {
      b.lo = &rows[i - 1];
      b.hi = &rows[i];
      b.weight = log_weight(frequency_hz, b.lo->frequency_hz, b.hi->frequency_hz);
      return b;
    }
  }
  b.exact = &rows.back();
  return b;
}

double lerp(double a, double b, double w) { return a + w * (b - a); }

}  // namespace

DielectricPoint lookup_tissue(const TissueProfile& profile, double frequency_hz) {
  const Bracket b = bracket_rows(profile, frequency_hz);
  if (b.exact)
    return {b.exact->eps_real, b.exact->conductivity_s_per_m,
            b.exact->mass_density_kg_per_m3};
  // Density varies so little that a plain linear-in-f blend is enough.
  const double density_w = (frequency_hz - b.lo->frequency_hz) /
                           (b.hi->frequency_hz - b.lo->frequency_hz);
  return {lerp(b.lo->eps_real, b.hi->eps_real, b.weight),
          lerp(b.lo->conductivity_s_per_m, b.hi->conductivity_s_per_m, b.weight),
          lerp(b.lo->mass_density_kg_per_m3, b.hi->mass_density_kg_per_m3,
               density_w)};
}

double reflection_coefficient(double eps_real, double conductivity,
                              double frequency_hz) {
  check_medium_inputs("reflection_coefficient", eps_real, conductivity,
                      frequency_hz);
  const std::complex<double> n =
      std::sqrt(complex_permittivity(eps_real, conductivity, frequency_hz));
  return std::abs((1.0 - n) / (1.0 + n));
}

double penetration_depth(double eps_real, double conductivity,
                         double frequency_hz) {
  check_medium_inputs("penetration_depth", eps_real, conductivity, frequency_hz);
  if (conductivity == 0.0)
    throw LosslessMedium(
        "penetration_depth: medium with zero conductivity has no finite depth");
  const std::complex<double> n =
      std::sqrt(complex_permittivity(eps_real, conductivity, frequency_hz));
  const double attenuation = 2.0 * constants::pi * frequency_hz /
                             constants::speed_of_light_m_per_s *
                             std::abs(n.imag());
  return 1.0 / attenuation;
}

BoundaryParameters boundary_parameters(const TissueProfile& profile,
                                       double frequency_hz) {
  const Bracket b = bracket_rows(profile, frequency_hz);
  const DielectricPoint d = lookup_tissue(profile, frequency_hz);
  BoundaryParameters out{d.eps_real, d.conductivity_s_per_m,
                         d.mass_density_kg_per_m3, 0.0, 0.0};

  if (profile.has_depth_override()) {
    out.penetration_depth_m =
        b.exact ? *b.exact->penetration_depth_m
                : lerp(*b.lo->penetration_depth_m, *b.hi->penetration_depth_m,
                       b.weight);
  } else {
    out.penetration_depth_m =
        penetration_depth(d.eps_real, d.conductivity_s_per_m, frequency_hz);
  }
  if (profile.has_reflection_override()) {
    out.reflection = b.exact ? *b.exact->reflection
                             : lerp(*b.lo->reflection, *b.hi->reflection, b.weight);
  } else {
    out.reflection =
        reflection_coefficient(d.eps_real, d.conductivity_s_per_m, frequency_hz);
  }
  return out;
}

}  // namespace emfdose::tissue
