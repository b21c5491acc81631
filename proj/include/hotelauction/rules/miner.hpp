#pragma once

#include <string>
#include <vector>

#include "hotelauction/core/fraction.hpp"
#include "hotelauction/core/money.hpp"
#include "hotelauction/rules/records.hpp"

namespace hotelauction::rules {

// Antecedent I ∈ [low, high]. Categorical attributes use low == high.
struct Condition {
  Attribute attribute;
  double low;
  double high;

  bool holds(double value) const { return low <= value && value <= high; }
  friend bool operator==(const Condition&, const Condition&) = default;
};

enum class Direction { AtLeast, AtMost };

struct PriceRule {
  std::vector<Condition> antecedents;  // distinct attributes, ascending
  Direction direction = Direction::AtLeast;
  Money bound;
  Fraction support;
  Fraction confidence;

  bool admits(Money price) const { return direction == Direction::AtLeast ? price >= bound : price <= bound; }
  // "distance_to_sea ∈ [5,25] ∧ breakfast_type = 1 → p ≥ 75 (sup=0.15, conf=0.9)"
  std::string to_string() const;

  friend bool operator==(const PriceRule&, const PriceRule&) = default;
};

using Ruleset = std::vector<PriceRule>;

// Canonical order used for every returned ruleset: by attribute list, then
// condition bounds, then direction, then bound.
bool rule_less(const PriceRule& a, const PriceRule& b);

// Inclusive value range [low, high] spanned by one bin.
struct Bin {
  double low;
  double high;
  friend bool operator==(const Bin&, const Bin&) = default;
};

// At most `bins` equal-frequency bins over the observed values. A value never
// straddles two bins, so heavily repeated values can leave fewer bins.
std::vector<Bin> equal_frequency_bins(std::vector<double> values, int bins);

struct MinerConfig {
  double support = 0.15;
  double confidence = 0.9;
  int max_antecedents = 3;
  int bins = 8;  // 1..15
};

// Candidate antecedents for one attribute: every observed category, or every
// run of consecutive bins.
std::vector<Condition> candidate_conditions(const std::vector<OfferRecord>& dataset, Attribute attribute, int bins);

// Rules X → p ≥ v and X → p ≤ v with 1..max_antecedents conditions, taken from
// the candidate lattice, meeting both thresholds. Each antecedent keeps only
// its tightest bound v (drawn from covered prices). A rule is dropped when a
// rule at least as general (a subset of its attributes, each with an enclosing
// interval) has a bound at least as strong in the same direction.
// Throws DomainError on an empty dataset or out-of-range configuration.
Ruleset mine_rules(const std::vector<OfferRecord>& dataset, const MinerConfig& config);

// Direct recount of a rule's support and confidence over `dataset`.
std::pair<Fraction, Fraction> recount(const PriceRule& rule, const std::vector<OfferRecord>& dataset);

// One rule per line in to_string() form.
std::string format_ruleset(const Ruleset& rules);

}  // namespace hotelauction::rules
