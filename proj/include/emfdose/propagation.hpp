#pragma once

#include <array>
#include <complex>
#include <variant>

namespace emfdose::propagation {

using Vec3c = std::array<std::complex<double>, 3>;

/// RMS field phasors at one point. With the RMS convention the time-average
/// power density of a plane wave is |Re(E × H*)| with no extra factor.
struct FieldSample {
  Vec3c e_field_v_per_m{};
  Vec3c h_field_a_per_m{};
};

/// Complex Poynting vector S = E × H*.
Vec3c poynting(const FieldSample& sample);

/// Scalar time-average power density |Re(S)|, W/m².
double time_average_power_density(const FieldSample& sample);

/// Plane-wave power density |E|²/η₀ from an RMS field magnitude.
double pd_from_field(double e_magnitude_rms_v_per_m);

/// Inverse of pd_from_field: √(pd·η₀).
double field_from_pd(double pd_w_per_m2);

// --- antenna gain patterns ---------------------------------------------

struct Isotropic {};

/// Fixed-azimuth sector antenna with a Gaussian main lobe:
/// G(φ) = peak_gain · exp(−ln2 · (2Δφ/hpbw)²), −3 dB at Δφ = ±hpbw/2.
struct Sector {
  double boresight_rad = 0.0;
  double half_power_beamwidth_rad = 0.0;
  double peak_gain = 1.0;
};

/// Steerable beam G(φ) = peak_gain · max(cos(φ − steer), 0)ⁿ + floor.
/// The floor keeps the gain positive in every direction.
struct SteeredBeam {
  double steer_rad = 0.0;
  double exponent = 1.0;
  double peak_gain = 1.0;
};

inline constexpr double steered_beam_floor_gain = 1e-3;

using GainPattern = std::variant<Isotropic, Sector, SteeredBeam>;

/// Throws InvalidParameter if the pattern's parameters are out of domain.
void validate(const GainPattern& pattern);

/// Linear gain toward absolute bearing phi. Always > 0.
double gain(const GainPattern& pattern, double phi_rad);

/// Gain at the pattern's boresight/steer direction.
double peak_gain(const GainPattern& pattern);

bool is_steerable(const GainPattern& pattern);

// --- transmitters -------------------------------------------------------

struct Point {
  double x_m = 0.0;
  double y_m = 0.0;
};

struct RadioSource {
  Point position{};
  double power_w = 0.0;       // P_T
  GainPattern pattern = Isotropic{};
  double frequency_hz = 0.0;
  double duty_factor = 1.0;   // time-average on-air fraction, (0, 1]
};

/// Throws InvalidParameter when a field violates its invariant.
void validate(const RadioSource& source);

/// Far-field link budget PD(d, φ) = duty · P_T · G(φ) / (4πd²).
/// Throws ZeroDistance for d ≤ 0; use the Poynting route near a source.
double pd_link_budget(const RadioSource& source, double distance_m,
                      double phi_rad);

double wavelength_m(double frequency_hz);

/// Wrap an angle to (−π, π].
double wrap_angle(double rad);

}  // namespace emfdose::propagation
