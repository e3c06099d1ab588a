#include "emfdose/propagation.hpp"

#include <algorithm>
#include <cmath>

#include "emfdose/constants.hpp"
#include "emfdose/errors.hpp"

namespace emfdose::propagation {

namespace {

void require_finite(const Vec3c& v, const char* what) {
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidParameter(std::string(what) + " has a non-finite component");
  }
}

constexpr double ln2 = 0.69314718055994530942;

}  // namespace

Vec3c poynting(const FieldSample& sample) {
  require_finite(sample.e_field_v_per_m, "e_field");
  require_finite(sample.h_field_a_per_m, "h_field");
  const Vec3c& e = sample.e_field_v_per_m;
  Vec3c h{std::conj(sample.h_field_a_per_m[0]),
          std::conj(sample.h_field_a_per_m[1]),
          std::conj(sample.h_field_a_per_m[2])};
  return {e[1] * h[2] - e[2] * h[1],
          e[2] * h[0] - e[0] * h[2],
          e[0] * h[1] - e[1] * h[0]};
}

double time_average_power_density(const FieldSample& sample) {
  const Vec3c s = poynting(sample);
  // RMS phasors: the time-average flux is Re(S) with no extra 1/2.
  const double x = s[0].real();
  const double y = s[1].real();
  const double z = s[2].real();
  return std::sqrt(x * x + y * y + z * z);
}

double pd_from_field(double e_magnitude_rms_v_per_m) {
  if (!std::isfinite(e_magnitude_rms_v_per_m) || e_magnitude_rms_v_per_m < 0.0)
    throw InvalidParameter("pd_from_field: |E| must be finite and >= 0");
  return e_magnitude_rms_v_per_m * e_magnitude_rms_v_per_m /
         constants::free_space_impedance_ohm;
}

double field_from_pd(double pd_w_per_m2) {
  if (!std::isfinite(pd_w_per_m2) || pd_w_per_m2 < 0.0)
    throw InvalidParameter("field_from_pd: PD must be finite and >= 0");
  return std::sqrt(pd_w_per_m2 * constants::free_space_impedance_ohm);
}

double wrap_angle(double rad) {
  double a = std::remainder(rad, 2.0 * constants::pi);
  if (a <= -constants::pi) a = constants::pi;  // remainder returns [-pi, pi]
  return a;
}

void validate(const GainPattern& pattern) {
  if (const auto* s = std::get_if<Sector>(&pattern)) {
    if (!std::isfinite(s->boresight_rad))
      throw InvalidParameter("sector pattern: boresight must be finite");
    if (!std::isfinite(s->half_power_beamwidth_rad) ||
        s->half_power_beamwidth_rad <= 0.0)
      throw InvalidParameter("sector pattern: beamwidth must be > 0");
    if (!std::isfinite(s->peak_gain) || s->peak_gain <= 0.0)
      throw InvalidParameter("sector pattern: peak gain must be > 0");
  } else if (const auto* b = std::get_if<SteeredBeam>(&pattern)) {
    if (!std::isfinite(b->steer_rad))
      throw InvalidParameter("steered pattern: steer angle must be finite");
    if (!std::isfinite(b->exponent) || b->exponent <= 0.0)
      throw InvalidParameter("steered pattern: exponent must be > 0");
    if (!std::isfinite(b->peak_gain) || b->peak_gain <= 0.0)
      throw InvalidParameter("steered pattern: peak gain must be > 0");
  }
}

double gain(const GainPattern& pattern, double phi_rad) {
  validate(pattern);
  if (!std::isfinite(phi_rad))
    throw InvalidParameter("gain: bearing must be finite");
  if (std::holds_alternative<Isotropic>(pattern)) return 1.0;
  if (const auto* s = std::get_if<Sector>(&pattern)) {
    const double off = wrap_angle(phi_rad - s->boresight_rad);
    const double u = 2.0 * off / s->half_power_beamwidth_rad;
    return s->peak_gain * std::exp(-ln2 * u * u);
  }
  const auto& b = std::get<SteeredBeam>(pattern);
  const double off = wrap_angle(phi_rad - b.steer_rad);
  const double c = std::max(std::cos(off), 0.0);
  return b.peak_gain * std::pow(c, b.exponent) + steered_beam_floor_gain;
}

double peak_gain(const GainPattern& pattern) {
  validate(pattern);
  if (std::holds_alternative<Isotropic>(pattern)) return 1.0;
  if (const auto* s = std::get_if<Sector>(&pattern)) return s->peak_gain;
  const auto& b = std::get<SteeredBeam>(pattern);
  return b.peak_gain + steered_beam_floor_gain;
}

bool is_steerable(const GainPattern& pattern) {
  return std::holds_alternative<SteeredBeam>(pattern);
}

void validate(const RadioSource& source) {
  if (!std::isfinite(source.position.x_m) || !std::isfinite(source.position.y_m))
    throw InvalidParameter("source position must be finite");
  if (!std::isfinite(source.power_w) || source.power_w <= 0.0)
    throw InvalidParameter("source power must be finite and > 0");
  if (!std::isfinite(source.frequency_hz) || source.frequency_hz <= 0.0)
    throw InvalidParameter("source frequency must be finite and > 0");
  if (!std::isfinite(source.duty_factor) || source.duty_factor <= 0.0 ||
      source.duty_factor > 1.0)
    throw InvalidParameter("duty factor must lie in (0, 1]");
  validate(source.pattern);
}

double pd_link_budget(const RadioSource& source, double distance_m,
                      double phi_rad) {
  validate(source);
  if (!std::isfinite(distance_m) || distance_m <= 0.0)
    throw ZeroDistance(
        "pd_link_budget: distance must be > 0; the far-field form has no "
        "meaning at the source (use the Poynting route for near field)");
  const double g = gain(source.pattern, phi_rad);
  return source.duty_factor * source.power_w * g /
         (constants::four_pi * (distance_m * distance_m));
}

double wavelength_m(double frequency_hz) {
  if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0)
    throw InvalidParameter("wavelength: frequency must be finite and > 0");
  return constants::speed_of_light_m_per_s / frequency_hz;
}

}  // namespace emfdose::propagation
