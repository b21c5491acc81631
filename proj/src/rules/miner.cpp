#include "hotelauction/rules/miner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "hotelauction/core/errors.hpp"

namespace hotelauction::rules {
namespace {

constexpr int kMaxBins = 15;
constexpr double kEps = 1e-9;

std::string number(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

std::string ratio(const Fraction& f) {
  std::ostringstream out;
  out << std::setprecision(4) << f.to_double();
  return out.str();
}

// Smallest count k with k / total >= share.
std::int64_t threshold_count(double share, std::int64_t total) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(share * static_cast<double>(total) - kEps)));
}

using Bits = std::vector<std::uint64_t>;

Bits operator&(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

std::int64_t count(const Bits& bits) {
  std::int64_t n = 0;
  for (auto w : bits) n += std::popcount(w);
  return n;
}

bool test(const Bits& bits, std::size_t i) { return (bits[i / 64] >> (i % 64)) & 1U; }

// Candidate antecedents of one attribute. For interval attributes slot
// a * bins + b holds bins a..b (a <= b); other slots stay empty.
struct AttributeLattice {
  Attribute attribute;
  bool interval = false;
  int bins = 0;
  std::vector<std::optional<Condition>> slots;
  std::vector<Bits> coverage;
};

AttributeLattice build_lattice(const std::vector<OfferRecord>& dataset, Attribute attribute, int bins) {
  AttributeLattice lattice;
  lattice.attribute = attribute;
  std::vector<double> values;
  for (const auto& r : dataset) values.push_back(r.value(attribute));
  if (is_categorical(attribute)) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (double v : values) lattice.slots.push_back(Condition{attribute, v, v});
  } else {
    const auto ranges = equal_frequency_bins(values, bins);
    lattice.interval = true;
    lattice.bins = static_cast<int>(ranges.size());
    lattice.slots.resize(ranges.size() * ranges.size());
    for (std::size_t a = 0; a < ranges.size(); ++a)
      for (std::size_t b = a; b < ranges.size(); ++b)
        lattice.slots[a * ranges.size() + b] = Condition{attribute, ranges[a].low, ranges[b].high};
  }
  const std::size_t words = (dataset.size() + 63) / 64;
  lattice.coverage.assign(lattice.slots.size(), Bits(words, 0));
  for (std::size_t s = 0; s < lattice.slots.size(); ++s) {
    if (!lattice.slots[s]) continue;
    for (std::size_t i = 0; i < dataset.size(); ++i)
      if (lattice.slots[s]->holds(dataset[i].value(attribute))) lattice.coverage[s][i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return lattice;
}

// An antecedent is packed one byte per attribute: 0 when absent, else slot + 1.
using Key = std::uint64_t;

int slot_of(Key key, std::size_t attribute) { return static_cast<int>((key >> (8 * attribute)) & 0xFF) - 1; }
Key with_slot(Key key, std::size_t attribute, int slot) {
  const Key cleared = key & ~(Key{0xFF} << (8 * attribute));
  return slot < 0 ? cleared : cleared | (static_cast<Key>(slot + 1) << (8 * attribute));
}

struct Bound {
  Money value;
  std::int64_t hits = 0;  // covered records meeting the bound
};

struct Node {
  std::int64_t covered = 0;
  Bound at_least;
  Bound at_most;
  // Strongest bound over this antecedent and everything more general.
  std::optional<Money> best_at_least;
  std::optional<Money> best_at_most;
};

class Miner {
 public:
  Miner(const std::vector<OfferRecord>& dataset, const MinerConfig& config) : dataset_(dataset), config_(config) {
    for (Attribute a : kAttributes) lattices_.push_back(build_lattice(dataset, a, config.bins));
    by_price_.resize(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) by_price_[i] = i;
    std::stable_sort(by_price_.begin(), by_price_.end(), [&](std::size_t a, std::size_t b) {
      return dataset[a].accepted_price < dataset[b].accepted_price;
    });
    min_support_ = threshold_count(config.support, static_cast<std::int64_t>(dataset.size()));
  }

  Ruleset run() {
    Bits all((dataset_.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < dataset_.size(); ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
    enumerate(0, 0, all, 0);

    Ruleset rules;
    for (auto& [key, node] : nodes_) {
      auto [general_at_least, general_at_most] = generalization_bests(key);
      if (!general_at_least || node.at_least.value > *general_at_least)
        rules.push_back(make_rule(key, node, Direction::AtLeast));
      if (!general_at_most || node.at_most.value < *general_at_most)
        rules.push_back(make_rule(key, node, Direction::AtMost));
    }
    std::sort(rules.begin(), rules.end(), rule_less);
    return rules;
  }

 private:
  void enumerate(std::size_t attribute, Key key, const Bits& covered, int used) {
    if (attribute == kAttributeCount) {
      if (used > 0) nodes_.emplace(key, evaluate(covered));
      return;
    }
    enumerate(attribute + 1, key, covered, used);
    if (used == config_.max_antecedents) return;
    const auto& lattice = lattices_[attribute];
    for (std::size_t s = 0; s < lattice.slots.size(); ++s) {
      if (!lattice.slots[s]) continue;
      Bits next = covered & lattice.coverage[s];
      if (count(next) < min_support_) continue;
      enumerate(attribute + 1, with_slot(key, attribute, static_cast<int>(s)), next, used + 1);
    }
  }

  Node evaluate(const Bits& covered) const {
    Node node;
    node.covered = count(covered);
    const std::int64_t needed =
        std::max(min_support_, threshold_count(config_.confidence, node.covered));
    node.at_least = tightest(covered, needed, by_price_.rbegin(), by_price_.rend());
    node.at_most = tightest(covered, needed, by_price_.begin(), by_price_.end());
    return node;
  }

  // Walks covered records from the strongest price towards the weakest and
  // stops at the `needed`-th one; records tied with it also meet the bound.
  template <typename It>
  Bound tightest(const Bits& covered, std::int64_t needed, It first, It last) const {
    Bound bound;
    for (It it = first; it != last; ++it) {
      if (!test(covered, *it)) continue;
      const Money price = dataset_[*it].accepted_price;
      if (bound.hits >= needed && price != bound.value) break;
      bound.value = price;
      ++bound.hits;
    }
    return bound;
  }

  std::vector<Key> generalizations(Key key) const {
    std::vector<Key> out;
    for (std::size_t a = 0; a < kAttributeCount; ++a) {
      const int slot = slot_of(key, a);
      if (slot < 0) continue;
      if (const Key dropped = with_slot(key, a, -1); dropped != 0) out.push_back(dropped);
      const auto& lattice = lattices_[a];
      if (!lattice.interval) continue;
      const int lo = slot / lattice.bins;
      const int hi = slot % lattice.bins;
      if (lo > 0) out.push_back(with_slot(key, a, (lo - 1) * lattice.bins + hi));
      if (hi + 1 < lattice.bins) out.push_back(with_slot(key, a, lo * lattice.bins + hi + 1));
    }
    return out;
  }

  std::pair<std::optional<Money>, std::optional<Money>> generalization_bests(Key key) {
    std::optional<Money> at_least, at_most;
    for (Key general : generalizations(key)) {
      Node& node = resolve(general);
      if (!at_least || *node.best_at_least > *at_least) at_least = node.best_at_least;
      if (!at_most || *node.best_at_most < *at_most) at_most = node.best_at_most;
    }
    return {at_least, at_most};
  }

  Node& resolve(Key key) {
    Node& node = nodes_.at(key);
    if (node.best_at_least) return node;
    auto [at_least, at_most] = generalization_bests(key);
    node.best_at_least = at_least ? std::max(*at_least, node.at_least.value) : node.at_least.value;
    node.best_at_most = at_most ? std::min(*at_most, node.at_most.value) : node.at_most.value;
    return node;
  }

  PriceRule make_rule(Key key, const Node& node, Direction direction) const {
    PriceRule rule;
    for (std::size_t a = 0; a < kAttributeCount; ++a)
      if (const int slot = slot_of(key, a); slot >= 0) rule.antecedents.push_back(*lattices_[a].slots[slot]);
    const Bound& bound = direction == Direction::AtLeast ? node.at_least : node.at_most;
    rule.direction = direction;
    rule.bound = bound.value;
    rule.support = Fraction(bound.hits, static_cast<std::int64_t>(dataset_.size()));
    rule.confidence = Fraction(bound.hits, node.covered);
    return rule;
  }

  const std::vector<OfferRecord>& dataset_;
  MinerConfig config_;
  std::vector<AttributeLattice> lattices_;
  std::vector<std::size_t> by_price_;
  std::int64_t min_support_ = 1;
  std::unordered_map<Key, Node> nodes_;
};

auto condition_tuple(const Condition& c) { return std::make_tuple(static_cast<int>(c.attribute), c.low, c.high); }

}  // namespace

std::string PriceRule::to_string() const {
  std::string out;
  for (const auto& c : antecedents) {
    if (!out.empty()) out += " ∧ ";
    out += attribute_name(c.attribute);
    if (is_categorical(c.attribute))
      out += " = " + number(c.low);
    else
      out += " ∈ [" + number(c.low) + "," + number(c.high) + "]";
  }
  out += direction == Direction::AtLeast ? " → p ≥ " : " → p ≤ ";
  out += bound.to_string();
  out += " (sup=" + ratio(support) + ", conf=" + ratio(confidence) + ")";
  return out;
}

bool rule_less(const PriceRule& a, const PriceRule& b) {
  const bool before = std::lexicographical_compare(
      a.antecedents.begin(), a.antecedents.end(), b.antecedents.begin(), b.antecedents.end(),
      [](const Condition& x, const Condition& y) { return condition_tuple(x) < condition_tuple(y); });
  if (before) return true;
  if (a.antecedents != b.antecedents) return false;
  return std::make_tuple(a.direction, a.bound) < std::make_tuple(b.direction, b.bound);
}

std::vector<Bin> equal_frequency_bins(std::vector<double> values, int bins) {
  std::vector<Bin> out;
  if (values.empty() || bins < 1) return out;
  std::sort(values.begin(), values.end());
  const auto n = static_cast<std::int64_t>(values.size());
  // Close a bin once it holds its share: bin k ends at the first distinct
  // value whose cumulative count reaches (k + 1) * n / bins.
  std::int64_t seen = 0;
  std::size_t i = 0;
  bool open = false;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    if (!open) {
      out.push_back(Bin{values[i], values[i]});
      open = true;
    }
    out.back().high = values[i];
    seen += static_cast<std::int64_t>(j - i);
    if (seen * bins >= static_cast<std::int64_t>(out.size()) * n) open = false;
    i = j;
  }
  return out;
}

std::vector<Condition> candidate_conditions(const std::vector<OfferRecord>& dataset, Attribute attribute, int bins) {
  std::vector<Condition> out;
  for (const auto& slot : build_lattice(dataset, attribute, bins).slots)
    if (slot) out.push_back(*slot);
  return out;
}

Ruleset mine_rules(const std::vector<OfferRecord>& dataset, const MinerConfig& config) {
  if (dataset.empty()) throw DomainError("cannot mine rules from an empty dataset");
  if (!(config.support > 0 && config.support <= 1)) throw DomainError("support must lie in (0,1]");
  if (!(config.confidence > 0 && config.confidence <= 1)) throw DomainError("confidence must lie in (0,1]");
  if (config.max_antecedents < 1) throw DomainError("max_antecedents must be at least 1");
  if (config.bins < 1 || config.bins > kMaxBins) throw DomainError("bins must lie in [1,15]");
  return Miner(dataset, config).run();
}

std::pair<Fraction, Fraction> recount(const PriceRule& rule, const std::vector<OfferRecord>& dataset) {
  std::int64_t covered = 0, hits = 0;
  for (const auto& r : dataset) {
    const bool match = std::all_of(rule.antecedents.begin(), rule.antecedents.end(),
                                   [&](const Condition& c) { return c.holds(r.value(c.attribute)); });
    if (!match) continue;
    ++covered;
    if (rule.admits(r.accepted_price)) ++hits;
  }
  const auto n = static_cast<std::int64_t>(dataset.size());
  return {Fraction(hits, std::max<std::int64_t>(n, 1)), Fraction(hits, std::max<std::int64_t>(covered, 1))};
}

std::string format_ruleset(const Ruleset& rules) {
  std::string out;
  for (const auto& rule : rules) out += rule.to_string() + "\n";
  return out;
}

}  // namespace hotelauction::rules
