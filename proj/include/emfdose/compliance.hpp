#pragma once

#include <string>
#include <vector>

namespace emfdose::compliance {

enum class Metric { sar, pd };
enum class Population { general, occupational };
enum class Authority { icnirp, fcc };

enum class Band { low, mid, high };
enum class FrequencyRange { fr1, fr2, none };

struct BandClass {
  Band band;
  FrequencyRange fr;
};

/// Spectrum-band partition: Low < 1 GHz, Mid 1–6 GHz (both ends inclusive),
/// High > 6 GHz. FR1 spans 450 MHz–6 GHz, FR2 24.25–52.6 GHz, none otherwise.
BandClass classify_band(double frequency_hz);

/// Metric-selection rule per authority: FCC uses SAR at or below 6 GHz and
/// power density above; ICNIRP switches at 10 GHz.
Metric select_metric(double frequency_hz, Authority authority);

inline constexpr double fcc_metric_switch_hz = 6e9;
inline constexpr double icnirp_metric_switch_hz = 10e9;

struct LimitRule {
  std::string name;          // used in diagnostics; synthesized if empty
  double f_min_hz = 0.0;     // inclusive
  double f_max_hz = 0.0;     // exclusive
  Metric metric = Metric::sar;
  double limit_value = 0.0;  // W/kg for SAR rules, W/m² for PD rules
  Population population = Population::general;
  std::string averaging;     // e.g. "10g"; empty means unaveraged point SAR
};

/// A named regulatory rule set. Rules for the same population must not
/// overlap in frequency, so at most one rule covers any (f, population).
class LimitProfile {
 public:
  LimitProfile(std::string name, std::vector<LimitRule> rules);

  const std::string& name() const { return name_; }
  const std::vector<LimitRule>& rules() const { return rules_; }

  /// Rule whose [f_min, f_max) contains f, or nullptr.
  const LimitRule* find_rule(double frequency_hz, Population population) const;

 private:
  std::string name_;
  std::vector<LimitRule> rules_;
};

/// Exposure metrics of one evaluation point, both routes.
struct Measured {
  double sar_w_per_kg = 0.0;
  double pd_w_per_m2 = 0.0;
};

/// Margin reported for measured = 0 (would be +infinity).
inline constexpr double margin_cap_db = 300.0;

struct ComplianceResult {
  Metric metric_used;
  double measured;
  double limit;
  double margin_db;  // 10·log10(limit/measured), capped at margin_cap_db
  bool compliant;    // measured ≤ limit
  std::string rule_name;
  std::string averaging;  // non-empty when the rule assumes mass averaging
};

/// Compare the rule's metric against its limit. Throws NoRuleForFrequency
/// when the profile has no rule covering f for the population.
ComplianceResult check(const Measured& measured, const LimitProfile& profile,
                       double frequency_hz,
                       Population population = Population::general);

}  // namespace emfdose::compliance
