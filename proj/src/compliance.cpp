#include "emfdose/compliance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "emfdose/errors.hpp"

namespace emfdose::compliance {

BandClass classify_band(double frequency_hz) {
  if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0)
    throw InvalidParameter("classify_band: frequency must be finite and > 0");
  BandClass out{};
  if (frequency_hz < 1e9)
    out.band = Band::low;
  else if (frequency_hz <= 6e9)
    out.band = Band::mid;
  else
    out.band = Band::high;
  if (frequency_hz >= 450e6 && frequency_hz <= 6e9)
    out.fr = FrequencyRange::fr1;
  else if (frequency_hz >= 24.25e9 && frequency_hz <= 52.6e9)
    out.fr = FrequencyRange::fr2;
  else
    out.fr = FrequencyRange::none;
  return out;
}

Metric select_metric(double frequency_hz, Authority authority) {
  if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0)
    throw InvalidParameter("select_metric: frequency must be finite and > 0");
  const double threshold = authority == Authority::fcc ? fcc_metric_switch_hz
                                                       : icnirp_metric_switch_hz;
  return frequency_hz <= threshold ? Metric::sar : Metric::pd;
}

namespace {

bool overlaps(const LimitRule& a, const LimitRule& b) {
  return a.population == b.population && a.f_min_hz < b.f_max_hz &&
         b.f_min_hz < a.f_max_hz;
}

}  // namespace

LimitProfile::LimitProfile(std::string name, std::vector<LimitRule> rules)
    : name_(std::move(name)), rules_(std::move(rules)) {
  if (name_.empty()) throw InvalidParameter("limit profile name is empty");
  if (rules_.empty())
    throw InvalidParameter("limit profile '" + name_ + "' has no rules");
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    auto& rule = rules_[i];
    if (rule.name.empty()) rule.name = "rule " + std::to_string(i + 1);
    if (!std::isfinite(rule.f_min_hz) || !std::isfinite(rule.f_max_hz) ||
        rule.f_min_hz <= 0.0 || rule.f_min_hz >= rule.f_max_hz)
      throw InvalidParameter("limit profile '" + name_ + "', " + rule.name +
                             ": needs 0 < f_min < f_max");
    if (!std::isfinite(rule.limit_value) || rule.limit_value <= 0.0)
      throw InvalidParameter("limit profile '" + name_ + "', " + rule.name +
                             ": limit must be > 0");
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (std::size_t j = i + 1; j < rules_.size(); ++j) {
      if (overlaps(rules_[i], rules_[j])) {
        std::ostringstream msg;
        msg << "limit profile '" << name_ << "': " << rules_[i].name << " ["
            << rules_[i].f_min_hz << ", " << rules_[i].f_max_hz << ") and "
            << rules_[j].name << " [" << rules_[j].f_min_hz << ", "
            << rules_[j].f_max_hz << ") overlap for the same population";
        throw InvalidParameter(msg.str());
      }
    }
  }
}

const LimitRule* LimitProfile::find_rule(double frequency_hz,
                                         Population population) const {
  for (const auto& rule : rules_) {
    if (rule.population == population && frequency_hz >= rule.f_min_hz &&
        frequency_hz < rule.f_max_hz)
      return &rule;
  }
  return nullptr;
}

ComplianceResult check(const Measured& measured, const LimitProfile& profile,
                       double frequency_hz, Population population) {
  if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0)
    throw InvalidParameter("check: frequency must be finite and > 0");
  const LimitRule* rule = profile.find_rule(frequency_hz, population);
  if (rule == nullptr) {
    std::ostringstream msg;
    msg << "limit profile '" << profile.name() << "' has no rule covering "
        << frequency_hz << " Hz";
    throw NoRuleForFrequency(msg.str());
  }
  const double value = rule->metric == Metric::sar ? measured.sar_w_per_kg
                                                   : measured.pd_w_per_m2;
  if (!std::isfinite(value) || value < 0.0)
    throw InvalidParameter("check: measured value must be finite and >= 0");

  ComplianceResult out{};
  out.metric_used = rule->metric;
  out.measured = value;
  out.limit = rule->limit_value;
  out.margin_db = value == 0.0
                      ? margin_cap_db
                      : std::min(10.0 * std::log10(rule->limit_value / value),
                                 margin_cap_db);
  out.compliant = value <= rule->limit_value;
  out.rule_name = rule->name;
  out.averaging = rule->averaging;
  return out;
}

}  // namespace emfdose::compliance
