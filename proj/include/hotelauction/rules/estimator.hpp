#pragma once

#include <map>
#include <optional>
#include <string>

#include "hotelauction/core/errors.hpp"
#include "hotelauction/core/money.hpp"
#include "hotelauction/reverse/pricing.hpp"
#include "hotelauction/rules/miner.hpp"

namespace hotelauction::rules {

struct HotelProfile {
  std::string id;
  double hotel_rating = 3;
  double distance_to_sea = 0;
  std::optional<int> sites_within_10km;  // unset: not constrained by the hotel
  std::map<int, Money> breakfast_costs{{kNoBreakfast, Money{}}};  // offered types, incremental cost per night
  Money base_cost;  // per room-night

  friend bool operator==(const HotelProfile&, const HotelProfile&) = default;
};

// One message per negative cost or unknown breakfast type.
std::vector<std::string> profile_issues(const HotelProfile& profile);

// Keeps the rules whose antecedents the hotel can meet: rating, distance and
// (when known) nearby sites must fall inside the rule's intervals, and a
// required breakfast type must be offered. Period and beds are up to the
// customer and never filter.
Ruleset filter_feasible(const Ruleset& rules, const HotelProfile& profile);

// A rule applies when every antecedent on an assigned attribute holds;
// antecedents on unassigned attributes are left to the hotelier.
bool applies(const PriceRule& rule, const AttributeAssignment& request);

class RuleConflict : public DomainError {
 public:
  RuleConflict(Money lower, Money upper, Ruleset lower_rules, Ruleset upper_rules);

  Money lower() const { return lower_; }
  Money upper() const { return upper_; }
  // Lower-bound rules above `upper` and upper-bound rules below `lower`.
  const Ruleset& lower_rules() const { return lower_rules_; }
  const Ruleset& upper_rules() const { return upper_rules_; }

 private:
  Money lower_;
  Money upper_;
  Ruleset lower_rules_;
  Ruleset upper_rules_;
};

struct PriceEstimate {
  Money price;
  Ruleset applicable;
  // Set when no lower-bound rule applied and the distribution optimum was used.
  std::optional<reverse::PricingDecision> fallback;
};

// p* = the largest applicable lower bound, provided it does not exceed the
// smallest applicable upper bound (RuleConflict otherwise). With no applicable
// lower bound the distribution optimum for `cost` is used, capped by the
// smallest upper bound if there is one.
PriceEstimate estimate_price(const Ruleset& rules, const AttributeAssignment& request,
                             const reverse::AcceptedPriceDistribution& fallback, Money cost);

struct Offer {
  Money price;
  std::optional<PriceRule> rule;     // the admitting rule chosen
  std::optional<int> breakfast_type;  // amenity configuration offered
  Money amenity_cost;                 // per night
  bool defaults = false;              // no admitting rule: plain room, no upgrades
};

// Among applicable rules that admit `price`, the one whose amenity
// requirements cost the hotel least; ties go to fewer antecedents, then to
// the canonical rule order.
Offer select_offer(const Ruleset& applicable, Money price, const HotelProfile& profile);

}  // namespace hotelauction::rules
