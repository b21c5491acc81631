#include "hotelauction/rules/evaluation.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "hotelauction/core/errors.hpp"
#include "hotelauction/reverse/pricing.hpp"
#include "hotelauction/rules/estimator.hpp"

namespace hotelauction::rules {
namespace {

HotelProfile profile_of(const OfferRecord& r) {
  HotelProfile profile;
  profile.hotel_rating = r.hotel_rating;
  profile.distance_to_sea = r.distance_to_sea;
  profile.sites_within_10km = r.sites_within_10km;
  profile.breakfast_costs = {{kNoBreakfast, Money{}}, {kContinental, Money{}}, {kAmerican, Money{}}};
  return profile;
}

}  // namespace

EvaluationReport evaluate_estimator(const std::vector<OfferRecord>& train, const std::vector<OfferRecord>& test,
                                    const MinerConfig& config, Money cost) {
  if (test.empty()) throw DomainError("evaluation needs at least one test record");
  const Ruleset rules = mine_rules(train, config);
  std::vector<Money> prices;
  for (const auto& r : train) prices.push_back(r.accepted_price);
  const auto distribution = reverse::empirical_distribution(prices);
  const Money baseline = reverse::optimize_price(distribution, cost).price;

  EvaluationReport report;
  std::int64_t error_cents = 0, baseline_error_cents = 0;
  double share = 0, baseline_share = 0;
  for (const auto& record : test) {
    EvaluationRow row{record, {}, baseline};
    const Ruleset feasible = filter_feasible(rules, profile_of(record));
    try {
      const auto estimate = estimate_price(feasible, assignment_of(record), distribution, cost);
      row.estimate = estimate.price;
      row.applicable_rules = estimate.applicable.size();
      row.used_fallback = estimate.fallback.has_value();
    } catch (const RuleConflict& conflict) {
      row.estimate = Money::from_cents((conflict.lower().cents() + conflict.upper().cents()) / 2);
      row.conflict = true;
    }
    const double truth = static_cast<double>(record.accepted_price.cents());
    const std::int64_t error = std::llabs((row.estimate - record.accepted_price).cents());
    const std::int64_t baseline_error = std::llabs((baseline - record.accepted_price).cents());
    error_cents += error;
    baseline_error_cents += baseline_error;
    share += static_cast<double>(error) / truth;
    baseline_share += static_cast<double>(baseline_error) / truth;
    report.rows.push_back(row);
  }
  const auto n = static_cast<double>(test.size());
  report.mae = Money::from_cents(std::llround(static_cast<double>(error_cents) / n));
  report.baseline_mae = Money::from_cents(std::llround(static_cast<double>(baseline_error_cents) / n));
  report.mape = share / n;
  report.baseline_mape = baseline_share / n;
  return report;
}

std::string format_evaluation(const EvaluationReport& report) {
  std::ostringstream out;
  for (Attribute a : kAttributes) out << attribute_name(a) << '\t';
  out << "estimate(truth)\tbaseline\tsource\n";
  for (const auto& row : report.rows) {
    for (Attribute a : kAttributes) out << row.record.value(a) << '\t';
    out << row.estimate.to_string() << '(' << row.record.accepted_price.to_string() << ")\t"
        << row.baseline.to_string() << '\t'
        << (row.conflict ? "conflict" : row.used_fallback ? "fallback" : "rules") << '\n';
  }
  out << "MAE\t" << report.mae.to_string() << "\tMAPE\t" << report.mape << '\n';
  out << "baseline MAE\t" << report.baseline_mae.to_string() << "\tbaseline MAPE\t" << report.baseline_mape << '\n';
  return out.str();
}

}  // namespace hotelauction::rules
