#include "hotelauction/rules/estimator.hpp"

#include <algorithm>
#include <limits>

namespace hotelauction::rules {
namespace {

std::vector<std::string> rule_lines(const Ruleset& rules) {
  std::vector<std::string> lines;
  for (const auto& r : rules) lines.push_back(r.to_string());
  return lines;
}

std::vector<std::string> conflict_details(const Ruleset& lower, const Ruleset& upper) {
  auto details = rule_lines(lower);
  auto more = rule_lines(upper);
  details.insert(details.end(), more.begin(), more.end());
  return details;
}

std::optional<Money> amenity_cost(const PriceRule& rule, const HotelProfile& profile) {
  Money cost;
  for (const auto& c : rule.antecedents) {
    if (c.attribute != Attribute::BreakfastType) continue;
    const auto it = profile.breakfast_costs.find(static_cast<int>(c.low));
    if (it == profile.breakfast_costs.end()) return std::nullopt;
    cost += it->second;
  }
  return cost;
}

}  // namespace

std::vector<std::string> profile_issues(const HotelProfile& profile) {
  std::vector<std::string> issues;
  if (profile.base_cost < Money{}) issues.push_back("base_cost is negative");
  for (const auto& [type, cost] : profile.breakfast_costs) {
    if (type < kNoBreakfast || type > kAmerican) issues.push_back("unknown breakfast type " + std::to_string(type));
    if (cost < Money{}) issues.push_back("breakfast " + std::to_string(type) + " cost is negative");
  }
  const auto rating = attribute_domain(Attribute::HotelRating);
  if (profile.hotel_rating < rating.low || profile.hotel_rating > rating.high) issues.push_back("hotel_rating outside [1,5]");
  const auto distance = attribute_domain(Attribute::DistanceToSea);
  if (profile.distance_to_sea < distance.low || profile.distance_to_sea > distance.high)
    issues.push_back("distance_to_sea outside [0,10000]");
  if (profile.sites_within_10km && (*profile.sites_within_10km < 0 || *profile.sites_within_10km > 10))
    issues.push_back("sites_within_10km outside [0,10]");
  return issues;
}

Ruleset filter_feasible(const Ruleset& rules, const HotelProfile& profile) {
  Ruleset kept;
  for (const auto& rule : rules) {
    const bool feasible = std::all_of(rule.antecedents.begin(), rule.antecedents.end(), [&](const Condition& c) {
      switch (c.attribute) {
        case Attribute::HotelRating: return c.holds(profile.hotel_rating);
        case Attribute::DistanceToSea: return c.holds(profile.distance_to_sea);
        case Attribute::SitesWithin10km:
          return !profile.sites_within_10km || c.holds(*profile.sites_within_10km);
        case Attribute::BreakfastType: return profile.breakfast_costs.contains(static_cast<int>(c.low));
        default: return true;
      }
    });
    if (feasible) kept.push_back(rule);
  }
  return kept;
}

bool applies(const PriceRule& rule, const AttributeAssignment& request) {
  return std::all_of(rule.antecedents.begin(), rule.antecedents.end(), [&](const Condition& c) {
    const auto& value = request[static_cast<std::size_t>(c.attribute)];
    return !value || c.holds(*value);
  });
}

RuleConflict::RuleConflict(Money lower, Money upper, Ruleset lower_rules, Ruleset upper_rules)
    : DomainError("rule bounds conflict: p >= " + lower.to_string() + " but p <= " + upper.to_string(),
                  conflict_details(lower_rules, upper_rules)),
      lower_(lower),
      upper_(upper),
      lower_rules_(std::move(lower_rules)),
      upper_rules_(std::move(upper_rules)) {}

PriceEstimate estimate_price(const Ruleset& rules, const AttributeAssignment& request,
                             const reverse::AcceptedPriceDistribution& fallback, Money cost) {
  PriceEstimate estimate;
  std::optional<Money> lower, upper;
  for (const auto& rule : rules) {
    if (!applies(rule, request)) continue;
    estimate.applicable.push_back(rule);
    if (rule.direction == Direction::AtLeast)
      lower = lower ? std::max(*lower, rule.bound) : rule.bound;
    else
      upper = upper ? std::min(*upper, rule.bound) : rule.bound;
  }
  if (lower && upper && *lower > *upper) {
    Ruleset too_high, too_low;
    for (const auto& rule : estimate.applicable) {
      if (rule.direction == Direction::AtLeast && rule.bound > *upper) too_high.push_back(rule);
      if (rule.direction == Direction::AtMost && rule.bound < *lower) too_low.push_back(rule);
    }
    throw RuleConflict(*lower, *upper, std::move(too_high), std::move(too_low));
  }
  if (lower) {
    estimate.price = *lower;
  } else {
    estimate.fallback = reverse::optimize_price(fallback, cost);
    estimate.price = upper ? std::min(*upper, estimate.fallback->price) : estimate.fallback->price;
  }
  return estimate;
}

Offer select_offer(const Ruleset& applicable, Money price, const HotelProfile& profile) {
  Offer offer;
  offer.price = price;
  const PriceRule* best = nullptr;
  Money best_cost;
  for (const auto& rule : applicable) {
    if (!rule.admits(price)) continue;
    const auto cost = amenity_cost(rule, profile);
    if (!cost) continue;
    const bool better = !best || *cost < best_cost ||
                        (*cost == best_cost && (rule.antecedents.size() < best->antecedents.size() ||
                                                (rule.antecedents.size() == best->antecedents.size() && rule_less(rule, *best))));
    if (better) {
      best = &rule;
      best_cost = *cost;
    }
  }
  if (!best) {
    offer.defaults = true;
    return offer;
  }
  offer.rule = *best;
  offer.amenity_cost = best_cost;
  for (const auto& c : best->antecedents)
    if (c.attribute == Attribute::BreakfastType) offer.breakfast_type = static_cast<int>(c.low);
  return offer;
}

}  // namespace hotelauction::rules
