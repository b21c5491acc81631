#include "hotelauction/forward/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "hotelauction/core/errors.hpp"
#include "occupancy.hpp"

namespace hotelauction::forward {
namespace {

using Clock = std::chrono::steady_clock;

ClearingSolution make_solution(const ForwardModel& model, const std::vector<int>& arrival_by_bid) {
  ClearingSolution solution;
  solution.objective_mode = model.objective_mode();
  const auto bids = model.bids();
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const int arrival = arrival_by_bid[i];
    if (arrival == 0) continue;
    solution.accepted.emplace(bids[i].customer, Stay{arrival, arrival + bids[i].nights - 1});
    solution.objective += bids[i].coefficient;
  }
  return solution;
}

bool admissible(const ForwardModel& model, const CompiledBid& bid) {
  return model.objective_mode() == ObjectiveMode::Income || bid.coefficient >= Money{};
}

// Earliest-first placement of the bids in `order` (indices into model.bids()).
SolveResult place_in_order(const ForwardModel& model, const std::vector<std::size_t>& order) {
  const auto start = Clock::now();
  detail::Occupancy occupancy(model);
  const auto bids = model.bids();
  std::vector<int> arrival_by_bid(bids.size(), 0);
  std::uint64_t examined = 0;
  for (std::size_t i : order) {
    const CompiledBid& bid = bids[i];
    ++examined;
    if (!admissible(model, bid)) continue;
    for (int arrival : bid.arrivals) {
      if (occupancy.fits(bid, arrival)) {
        occupancy.place(bid, arrival);
        arrival_by_bid[i] = arrival;
        break;
      }
    }
  }
  SolveResult result;
  result.solution = make_solution(model, arrival_by_bid);
  // A heuristic proves nothing: the admissible additive bound is the best we can state.
  Money bound;
  for (const auto& bid : bids) {
    if (bid.coefficient > Money{}) bound += bid.coefficient;
  }
  result.best_bound = std::max(bound, result.solution.objective);
  result.status = result.best_bound == result.solution.objective ? SolveStatus::Optimal
                                                                 : SolveStatus::FeasibleWithGap;
  result.nodes_explored = examined;
  result.wall_time = Clock::now() - start;
  return result;
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) { return (num + den - 1) / den; }

class BranchAndBound {
 public:
  BranchAndBound(const ForwardModel& model, const SolveLimits& limits)
      : model_(model), limits_(limits), occupancy_(model), start_(Clock::now()) {
    const auto bids = model.bids();
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (admissible(model, bids[i])) order_.push_back(i);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      if (bids[a].arrivals.size() != bids[b].arrivals.size()) return bids[a].arrivals.size() < bids[b].arrivals.size();
      if (bids[a].coefficient != bids[b].coefficient) return bids[a].coefficient > bids[b].coefficient;
      return bids[a].customer < bids[b].customer;
    });

    const std::size_t n = order_.size();
    suffix_value_.assign(n + 1, Money{});
    for (std::size_t k = n; k-- > 0;) suffix_value_[k] = suffix_value_[k + 1] + bids[order_[k]].coefficient;

    const std::size_t groups = model.groups().size();
    members_.resize(groups);
    for (std::size_t t = 0; t < model.room_types().size(); ++t) {
      members_[model.group_of_type(static_cast<int>(t))].push_back(static_cast<int>(t));
    }
    items_.resize(groups);
    span_lo_.assign(groups, std::vector<int>(n + 1, std::numeric_limits<int>::max()));
    span_hi_.assign(groups, std::vector<int>(n + 1, 0));
    for (std::size_t k = 0; k < n; ++k) {
      const CompiledBid& bid = bids[order_[k]];
      for (const auto& line : bid.lines) {
        if (line.value <= Money{}) continue;
        items_[line.group].push_back({k, static_cast<std::int64_t>(line.rooms) * bid.nights, line.value.cents()});
      }
    }
    for (std::size_t g = 0; g < groups; ++g) {
      std::stable_sort(items_[g].begin(), items_[g].end(), [](const Item& a, const Item& b) {
        // value / weight descending, exact
        return static_cast<__int128>(a.value) * b.weight > static_cast<__int128>(b.value) * a.weight;
      });
      for (std::size_t k = n; k-- > 0;) {
        span_lo_[g][k] = span_lo_[g][k + 1];
        span_hi_[g][k] = span_hi_[g][k + 1];
        const CompiledBid& bid = bids[order_[k]];
        for (const auto& line : bid.lines) {
          if (line.group != static_cast<int>(g) || line.value <= Money{}) continue;
          span_lo_[g][k] = std::min(span_lo_[g][k], bid.window_lo);
          span_hi_[g][k] = std::max(span_hi_[g][k], bid.window_hi);
        }
      }
    }
    chosen_.assign(n, 0);
    best_chosen_ = chosen_;
    build_rows();
  }

  SolveResult run() {
    if (!order_.empty()) {
      std::vector<int> none(order_.size(), 0);
      complete_heuristically(0, Money{}, none);
    }
    search();
    SolveResult result;
    std::vector<int> arrival_by_bid(model_.bids().size(), 0);
    for (std::size_t k = 0; k < order_.size(); ++k) arrival_by_bid[order_[k]] = best_chosen_[k];
    result.solution = make_solution(model_, arrival_by_bid);
    result.nodes_explored = nodes_;
    result.best_bound = std::max({best_, open_bound_});
    const bool within_gap = (result.best_bound - best_).cents() <= tolerance(best_);
    result.status = (!aborted_ || within_gap) ? SolveStatus::Optimal : SolveStatus::FeasibleWithGap;
    result.wall_time = Clock::now() - start_;
    return result;
  }

 private:
  struct Item {
    std::size_t position;
    std::int64_t weight;  // room-nights
    std::int64_t value;   // cents
  };

  // Rows priced out by the Lagrangian bound. Base rows: one per room type
  // (capped by its group when the group has a single member) and one per
  // group with several members. A row with threshold t > 1 is the implied
  // constraint that at most floor(residual / t) requests of t or more rooms
  // share a night, which removes part of the rounding slack.
  struct Row {
    int type = -1;   // >= 0 for a room-type row
    int group = -1;  // >= 0 for a multi-member group row
    int threshold = 1;
  };

  static constexpr int kRootPriceIterations = 5000;
  static constexpr int kPoppedPriceIterations = 40;
  static constexpr int kCutRounds = 20;
  static constexpr int kWarmupIterations = 50;
  static constexpr double kCutViolation = 0.01;
  static constexpr int kNodePriceIterations = 12;

  std::int64_t tolerance(Money incumbent) const {
    if (limits_.gap_tolerance <= 0.0) return 0;
    const double scale = std::max<double>(1.0, std::abs(static_cast<double>(incumbent.cents())));
    return static_cast<std::int64_t>(limits_.gap_tolerance * scale);
  }

  bool prunable(Money upper) const { return (upper - best_).cents() <= tolerance(best_); }

  bool out_of_budget() {
    if (limits_.node_budget && nodes_ > *limits_.node_budget) return true;
    if ((nodes_ & 0x3f) == 0 && Clock::now() - start_ > limits_.time_budget) return true;
    return false;
  }

  // Upper bound on the value obtainable from positions k.. given the current
  // occupancy, without the Lagrangian term: the smaller of the plain
  // coefficient sum and a per-group fractional knapsack over room-nights.
  Money combinatorial_bound(std::size_t k) const {
    const Money additive = suffix_value_[k];
    std::int64_t knapsack = 0;
    for (std::size_t g = 0; g < items_.size(); ++g) {
      if (span_hi_[g][k] == 0) continue;
      std::int64_t capacity = 0;
      for (int d = span_lo_[g][k]; d <= span_hi_[g][k]; ++d) {
        capacity += std::max(0, occupancy_.group_residual(static_cast<int>(g), d, members_[g]));
      }
      for (const Item& item : items_[g]) {
        if (item.position < k) continue;
        if (capacity <= 0) break;
        if (item.weight <= capacity) {
          knapsack += item.value;
          capacity -= item.weight;
        } else {
          knapsack += ceil_div(item.value * capacity, item.weight);
          capacity = 0;
        }
      }
      if (knapsack >= additive.cents()) break;
    }
    return Money::from_cents(std::min(knapsack, additive.cents()));
  }

  // Bids are whole cents, so flooring a bound that is at least the optimum
  // keeps it valid; the slack absorbs floating point error.
  static std::int64_t floor_bound(double bound) { return static_cast<std::int64_t>(std::floor(bound + 1e-3)); }

  void build_rows() {
    const int types = static_cast<int>(model_.room_types().size());
    const auto bids = model_.bids();
    // base row -> request sizes seen on it
    std::vector<std::pair<Row, std::set<int>>> base;
    std::vector<int> base_of_type(types, -1);
    std::vector<int> base_of_group(model_.groups().size(), -1);
    for (int t = 0; t < types; ++t) {
      base_of_type[t] = static_cast<int>(base.size());
      base.push_back({Row{t, -1, 1}, {}});
    }
    for (std::size_t g = 0; g < members_.size(); ++g) {
      if (members_[g].size() < 2) continue;
      base_of_group[g] = static_cast<int>(base.size());
      base.push_back({Row{-1, static_cast<int>(g), 1}, {}});
    }
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      const CompiledBid& bid = bids[order_[pos]];
      for (const auto& line : bid.lines) base[base_of_type[line.type]].second.insert(line.rooms);
      for (const auto& [group, rooms] : bid.group_rooms) {
        if (base_of_group[group] >= 0) base[base_of_group[group]].second.insert(rooms);
      }
    }
    // row indices per base row, threshold ascending
    std::vector<std::vector<int>> expanded(base.size());
    std::vector<int> base_capacity(base.size());
    for (std::size_t b = 0; b < base.size(); ++b) {
      const Row& row = base[b].first;
      int capacity = row.type >= 0 ? model_.type_capacity(row.type) : model_.group_capacity(row.group);
      if (row.type >= 0 && members_[model_.group_of_type(row.type)].size() == 1) {
        capacity = std::min(capacity, model_.group_capacity(model_.group_of_type(row.type)));
      }
      base_capacity[b] = capacity;
      expanded[b].push_back(static_cast<int>(rows_.size()));
      rows_.push_back(row);
      for (int size : base[b].second) {
        if (size < 2 || size > capacity || capacity % size == 0) continue;
        expanded[b].push_back(static_cast<int>(rows_.size()));
        rows_.push_back(Row{row.type, row.group, size});
      }
    }
    auto add_terms = [&](std::vector<std::pair<int, int>>& terms, int b, int size) {
      for (int r : expanded[b]) {
        const int threshold = rows_[r].threshold;
        if (threshold == 1) {
          terms.emplace_back(r, size);
        } else if (size >= threshold) {
          terms.emplace_back(r, 1);
        }
      }
    };
    terms_.resize(order_.size());
    std::vector<std::vector<std::pair<int, std::size_t>>> base_usage(base.size());  // (usage, position)
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      const CompiledBid& bid = bids[order_[pos]];
      for (const auto& line : bid.lines) {
        add_terms(terms_[pos], base_of_type[line.type], line.rooms);
        base_usage[base_of_type[line.type]].emplace_back(line.rooms, pos);
      }
      for (const auto& [group, rooms] : bid.group_rooms) {
        if (base_of_group[group] < 0) continue;
        add_terms(terms_[pos], base_of_group[group], rooms);
        base_usage[base_of_group[group]].emplace_back(rooms, pos);
      }
    }
    const int days = model_.days();
    prices_.assign(rows_.size() * days, 0.0);
    prefix_.assign(rows_.size() * (days + 1), 0.0);
    build_cliques(base_usage, base_capacity);
  }

  bool covers(const CompiledBid& bid, int arrival, int day) const {
    return arrival != 0 && arrival <= day && day < arrival + bid.nights;
  }

  // Per base row and night: requests that may cover the night, largest first.
  // The longest prefix in which every two requests exceed the capacity is a
  // clique; at most one of its members can hold that night.
  void build_cliques(std::vector<std::vector<std::pair<int, std::size_t>>>& base_usage,
                     const std::vector<int>& base_capacity) {
    const auto bids = model_.bids();
    const int days = model_.days();
    cut_terms_.assign(order_.size(), {});
    base_capacity_ = base_capacity;
    night_candidates_.assign(base_usage.size(), std::vector<std::vector<std::pair<int, std::size_t>>>(days + 1));
    for (std::size_t b = 0; b < base_usage.size(); ++b) {
      auto& usage = base_usage[b];
      std::stable_sort(usage.begin(), usage.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
      for (int d = 1; d <= days; ++d) {
        auto& candidates = night_candidates_[b][d];
        for (const auto& [rooms, pos] : usage) {
          const CompiledBid& bid = bids[order_[pos]];
          const bool may_cover = std::any_of(bid.arrivals.begin(), bid.arrivals.end(),
                                             [&](int arrival) { return covers(bid, arrival, d); });
          if (may_cover) candidates.emplace_back(rooms, pos);
        }
        std::size_t length = 0;
        for (std::size_t i = 1; i < candidates.size(); ++i) {
          if (candidates[i].first + candidates[i - 1].first <= base_capacity[b]) break;
          length = i + 1;
        }
        if (length < 2) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < length; ++i) members.push_back(candidates[i].second);
        add_cut(d, std::move(members), 1);
      }
    }
    cut_prefix_.assign(order_.size() * (days + 1), 0.0);
  }

  // Adds "at most `rhs` of `members` hold night `day`" unless already known.
  bool add_cut(int day, std::vector<std::size_t> members, int rhs) {
    std::sort(members.begin(), members.end());
    if (!known_cuts_.insert({day, rhs, members}).second) return false;
    for (std::size_t pos : members) cut_terms_[pos].emplace_back(day, static_cast<int>(cuts_.size()));
    cuts_.push_back(Cut{day, rhs, std::move(members)});
    cut_prices_.push_back(0.0);
    return true;
  }

  // Cover inequalities violated by the fractional occupancy `share`
  // (position x night): for each base row and night, a minimal set of
  // requests whose rooms exceed the capacity cannot all hold the night.
  // Candidate covers are grown greedily under two orderings.
  int separate_covers(const std::vector<std::vector<double>>& share) {
    int added = 0;
    for (std::size_t b = 0; b < night_candidates_.size(); ++b) {
      for (int d = 1; d < static_cast<int>(night_candidates_[b].size()); ++d) {
        std::int64_t total = 0;
        for (const auto& [rooms, pos] : night_candidates_[b][d]) total += rooms;
        if (total <= base_capacity_[b]) continue;
        for (bool by_share : {false, true}) {
          if (separate_cover(night_candidates_[b][d], base_capacity_[b], d, share, by_share)) ++added;
        }
      }
    }
    return added;
  }

  // The cover is extended with every request at least as large as its
  // largest member.
  bool separate_cover(const std::vector<std::pair<int, std::size_t>>& candidates, int capacity, int day,
                      const std::vector<std::vector<double>>& share, bool by_share) {
    auto share_of = [&](std::size_t i) { return share[candidates[i].second][day]; };
    std::vector<std::size_t> ranked(candidates.size());
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t x, std::size_t y) {
      if (by_share) return share_of(x) > share_of(y);
      return (1.0 - share_of(x)) / candidates[x].first < (1.0 - share_of(y)) / candidates[y].first;
    });
    std::vector<std::size_t> cover;
    std::int64_t weight = 0;
    for (std::size_t i : ranked) {
      if (weight > capacity) break;
      cover.push_back(i);
      weight += candidates[i].first;
    }
    // minimal: drop members with the smallest share while still a cover
    std::stable_sort(cover.begin(), cover.end(), [&](std::size_t x, std::size_t y) { return share_of(x) < share_of(y); });
    for (std::size_t i = 0; i < cover.size();) {
      if (weight - candidates[cover[i]].first > capacity) {
        weight -= candidates[cover[i]].first;
        cover.erase(cover.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
    if (cover.size() < 2) return false;
    double lhs = 0.0;
    int largest = 0;
    for (std::size_t i : cover) {
      lhs += share_of(i);
      largest = std::max(largest, candidates[i].first);
    }
    const int rhs = static_cast<int>(cover.size()) - 1;
    if (lhs <= rhs + kCutViolation) return false;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const bool in_cover = std::find(cover.begin(), cover.end(), i) != cover.end();
      if (in_cover || candidates[i].first >= largest) members.push_back(candidates[i].second);
    }
    return add_cut(day, std::move(members), rhs);
  }

  // Right-hand side of each cut given the decisions at positions < k: the
  // members already holding the night use up part of it.
  std::vector<int> cut_rhs(std::size_t k) const {
    const auto bids = model_.bids();
    std::vector<int> rhs(cuts_.size());
    for (std::size_t j = 0; j < cuts_.size(); ++j) {
      int held = 0;
      for (std::size_t pos : cuts_[j].members) {
        if (pos < k && covers(bids[order_[pos]], chosen_[pos], cuts_[j].day)) ++held;
      }
      rhs[j] = std::max(0, cuts_[j].rhs - held);
    }
    return rhs;
  }

  int row_residual(const Row& row, int day) const {
    int residual = 0;
    if (row.type >= 0) {
      residual = model_.type_capacity(row.type) - occupancy_.type_used(row.type, day);
      const int g = model_.group_of_type(row.type);
      if (members_[g].size() == 1) {
        residual = std::min(residual, model_.group_capacity(g) - occupancy_.group_used(g, day));
      }
    } else {
      residual = model_.group_capacity(row.group) - occupancy_.group_used(row.group, day);
    }
    return std::max(0, residual) / row.threshold;
  }

  void refresh_prefix() {
    const int days = model_.days();
    std::fill(cut_prefix_.begin(), cut_prefix_.end(), 0.0);
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      double* prefix = &cut_prefix_[pos * (days + 1)];
      for (const auto& [day, j] : cut_terms_[pos]) prefix[day] += cut_prices_[j];
      for (int d = 1; d <= days; ++d) prefix[d] += prefix[d - 1];
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      double acc = 0.0;
      prefix_[r * (days + 1)] = 0.0;
      for (int d = 1; d <= days; ++d) {
        acc += prices_[r * days + d - 1];
        prefix_[r * (days + 1) + d] = acc;
      }
    }
  }

  double stay_price(int row, int arrival, int nights) const {
    const int stride = model_.days() + 1;
    return prefix_[row * stride + arrival + nights - 1] - prefix_[row * stride + arrival - 1];
  }

  // Coefficient minus the priced row usage of accepting the bid at position
  // `pos` at `arrival`.
  double reduced_value(std::size_t pos, int arrival) const {
    const CompiledBid& bid = model_.bids()[order_[pos]];
    double cost = 0.0;
    for (const auto& [row, usage] : terms_[pos]) cost += usage * stay_price(row, arrival, bid.nights);
    const double* prefix = &cut_prefix_[pos * (model_.days() + 1)];
    cost += prefix[arrival + bid.nights - 1] - prefix[arrival - 1];
    return static_cast<double>(bid.coefficient.cents()) - cost;
  }

  // L(prices) = sum over rows and days of price * residual, plus for every
  // undecided bid the best non-negative reduced value over arrivals that still
  // fit. An upper bound for any non-negative prices. `chosen`, when given,
  // receives the maximizing arrival per position (0 = none).
  double evaluate_lagrangian(std::size_t k, const std::vector<int>& rhs, std::vector<int>* chosen) const {
    const int days = model_.days();
    double total = 0.0;
    for (std::size_t j = 0; j < cuts_.size(); ++j) total += cut_prices_[j] * rhs[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (int d = 1; d <= days; ++d) {
        const double price = prices_[r * days + d - 1];
        if (price > 0.0) total += price * row_residual(rows_[r], d);
      }
    }
    const auto bids = model_.bids();
    for (std::size_t pos = k; pos < order_.size(); ++pos) {
      const CompiledBid& bid = bids[order_[pos]];
      double best = 0.0;
      int best_arrival = 0;
      for (int arrival : bid.arrivals) {
        const double reduced = reduced_value(pos, arrival);
        if (reduced > best && occupancy_.fits(bid, arrival)) {
          best = reduced;
          best_arrival = arrival;
        }
      }
      total += best;
      if (chosen != nullptr) (*chosen)[pos] = best_arrival;
    }
    return total;
  }

  // Projected subgradient descent on the prices for the subproblem at
  // position k, with Polyak steps towards `target` (the value the bound has to
  // reach for the node to be pruned). Leaves the best prices in place and
  // returns their bound; `chosen` receives the matching arrivals. When
  // `frequency` is given it counts, per position and arrival index, how often
  // the relaxation picked that arrival.
  double tune_prices(std::size_t k, double target, int iterations, std::vector<int>& chosen,
                     std::vector<std::vector<int>>* frequency = nullptr) {
    const int days = model_.days();
    const auto bids = model_.bids();
    const std::vector<int> rhs = cut_rhs(k);
    refresh_prefix();
    double current = evaluate_lagrangian(k, rhs, &chosen);
    double best_value = current;
    std::vector<double> best_prices = prices_;
    std::vector<double> best_cut_prices = cut_prices_;
    std::vector<int> best_chosen = chosen;
    double theta = k == 0 ? 2.0 : 1.0;
    int stale = 0;
    std::vector<double> gradient(prices_.size());
    std::vector<double> cut_gradient(cuts_.size());
    for (int iter = 0; iter < iterations && best_value > target + 1e-6; ++iter) {
      // stopping early only weakens the bound
      if ((iter & 0x3f) == 0x3f && Clock::now() - start_ > limits_.time_budget) break;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (int d = 1; d <= days; ++d) gradient[r * days + d - 1] = row_residual(rows_[r], d);
      }
      for (std::size_t j = 0; j < cuts_.size(); ++j) cut_gradient[j] = rhs[j];
      if (frequency != nullptr && iter >= kWarmupIterations) ++samples_;
      for (std::size_t pos = k; pos < order_.size(); ++pos) {
        if (chosen[pos] == 0) continue;
        const CompiledBid& bid = bids[order_[pos]];
        for (int d = chosen[pos]; d < chosen[pos] + bid.nights; ++d) {
          for (const auto& [row, usage] : terms_[pos]) gradient[row * days + d - 1] -= usage;
        }
        for (const auto& [day, j] : cut_terms_[pos]) {
          if (covers(bid, chosen[pos], day)) cut_gradient[j] -= 1.0;
        }
        if (frequency != nullptr && iter >= kWarmupIterations) {
          const auto it = std::find(bid.arrivals.begin(), bid.arrivals.end(), chosen[pos]);
          ++(*frequency)[pos][it - bid.arrivals.begin()];
        }
      }
      double norm = 0.0;
      // a zero price with positive slack cannot move
      for (std::size_t i = 0; i < gradient.size(); ++i) {
        if (prices_[i] <= 0.0 && gradient[i] > 0.0) gradient[i] = 0.0;
        norm += gradient[i] * gradient[i];
      }
      for (std::size_t j = 0; j < cuts_.size(); ++j) {
        if (cut_prices_[j] <= 0.0 && cut_gradient[j] > 0.0) cut_gradient[j] = 0.0;
        norm += cut_gradient[j] * cut_gradient[j];
      }
      if (norm == 0.0) break;
      const double step = theta * (current - target) / norm;
      for (std::size_t i = 0; i < prices_.size(); ++i) prices_[i] = std::max(0.0, prices_[i] - step * gradient[i]);
      for (std::size_t j = 0; j < cuts_.size(); ++j) {
        cut_prices_[j] = std::max(0.0, cut_prices_[j] - step * cut_gradient[j]);
      }
      refresh_prefix();
      current = evaluate_lagrangian(k, rhs, &chosen);
      if (current < best_value - 1e-9) {
        best_value = current;
        best_prices = prices_;
        best_cut_prices = cut_prices_;
        best_chosen = chosen;
        stale = 0;
      } else if (++stale >= (k == 0 ? 50 : 3)) {
        theta *= 0.5;
        stale = 0;
        if (theta < 1e-4) break;
      }
    }
    prices_ = std::move(best_prices);
    cut_prices_ = std::move(best_cut_prices);
    chosen = std::move(best_chosen);
    refresh_prefix();
    return best_value;
  }

  // Extends the current partial assignment (positions < k fixed) greedily:
  // bids whose Lagrangian arrival is set go first, by reduced value, each at
  // the best fitting arrival by reduced value; the rest follow in coefficient
  // order at their best fitting arrival. Records a better incumbent.
  void complete_heuristically(std::size_t k, Money value, const std::vector<int>& hint, bool exchange = false) {
    const auto bids = model_.bids();
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t pos = k; pos < order_.size(); ++pos) {
      const double key = hint[pos] != 0 ? reduced_value(pos, hint[pos]) : -std::numeric_limits<double>::infinity();
      ranked.emplace_back(key, pos);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<int> filled = chosen_;
    Money total = value;
    for (const auto& [key, pos] : ranked) {
      const CompiledBid& bid = bids[order_[pos]];
      int pick = 0;
      if (hint[pos] != 0 && occupancy_.fits(bid, hint[pos])) {
        pick = hint[pos];
      } else {
        double best = -std::numeric_limits<double>::infinity();
        for (int arrival : bid.arrivals) {
          const double reduced = reduced_value(pos, arrival);
          if (reduced > best && occupancy_.fits(bid, arrival)) {
            best = reduced;
            pick = arrival;
          }
        }
      }
      if (pick == 0) continue;
      occupancy_.place(bid, pick);
      filled[pos] = pick;
      total += bid.coefficient;
    }
    if (exchange) {
      // exchanges may also move decided bids; occupancy is rebuilt below
      exchange_improve(filled);
      total = Money{};
      for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        if (filled[pos] != 0) total += bids[order_[pos]].coefficient;
      }
      for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        if (filled[pos] != 0) occupancy_.remove(bids[order_[pos]], filled[pos]);
      }
      for (std::size_t pos = 0; pos < k; ++pos) {
        if (chosen_[pos] != 0) occupancy_.place(bids[order_[pos]], chosen_[pos]);
      }
    } else {
      for (std::size_t pos = k; pos < order_.size(); ++pos) {
        if (filled[pos] != 0) occupancy_.remove(bids[order_[pos]], filled[pos]);
      }
    }
    if (total > best_) {
      best_ = total;
      best_chosen_ = std::move(filled);
    }
  }

  // Average share of each night held by each bid over the sampled iterations.
  std::vector<std::vector<double>> occupancy_share(const std::vector<std::vector<int>>& frequency) const {
    const auto bids = model_.bids();
    std::vector<std::vector<double>> share(order_.size(), std::vector<double>(model_.days() + 1, 0.0));
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      const CompiledBid& bid = bids[order_[pos]];
      for (std::size_t a = 0; a < bid.arrivals.size(); ++a) {
        const double weight = static_cast<double>(frequency[pos][a]) / static_cast<double>(samples_);
        for (int d = bid.arrivals[a]; d < bid.arrivals[a] + bid.nights; ++d) share[pos][d] += weight;
      }
    }
    return share;
  }

  // Root primal heuristic: fixes (bid, arrival) pairs in decreasing order of
  // how often the relaxation picked them, then improves the result by single
  // exchanges. Called with nothing decided.
  void round_frequencies(const std::vector<std::vector<int>>& frequency) {
    const auto bids = model_.bids();
    struct Pick {
      int count;
      std::size_t pos;
      int arrival;
    };
    std::vector<Pick> picks;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      for (std::size_t a = 0; a < frequency[pos].size(); ++a) {
        if (frequency[pos][a] > 0) picks.push_back({frequency[pos][a], pos, bids[order_[pos]].arrivals[a]});
      }
    }
    std::stable_sort(picks.begin(), picks.end(), [](const Pick& x, const Pick& y) { return x.count > y.count; });
    std::vector<int> assignment(order_.size(), 0);
    for (const Pick& pick : picks) {
      const CompiledBid& bid = bids[order_[pick.pos]];
      if (assignment[pick.pos] != 0 || !occupancy_.fits(bid, pick.arrival)) continue;
      occupancy_.place(bid, pick.arrival);
      assignment[pick.pos] = pick.arrival;
    }
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      if (assignment[pos] == 0) assignment[pos] = place_anywhere(pos);
    }
    exchange_improve(assignment);
    Money total;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      if (assignment[pos] == 0) continue;
      occupancy_.remove(bids[order_[pos]], assignment[pos]);
      total += bids[order_[pos]].coefficient;
    }
    if (total > best_) {
      best_ = total;
      best_chosen_ = std::move(assignment);
    }
  }

  // Places the bid at `pos` at its earliest fitting arrival; 0 if none fits.
  int place_anywhere(std::size_t pos) {
    const CompiledBid& bid = model_.bids()[order_[pos]];
    for (int arrival : bid.arrivals) {
      if (occupancy_.fits(bid, arrival)) {
        occupancy_.place(bid, arrival);
        return arrival;
      }
    }
    return 0;
  }

  bool shares_rows(const CompiledBid& a, const CompiledBid& b) const {
    for (const auto& [group, rooms] : a.group_rooms) {
      for (const auto& [other, other_rooms] : b.group_rooms) {
        if (group == other) return true;
      }
    }
    return false;
  }

  // Repeatedly tries to admit a rejected bid: accepted bids that overlap one
  // of its arrivals on a shared group are evicted, cheapest first, until it
  // fits; the evicted bids are then re-placed where possible. A move is kept
  // when it raises the total. Occupancy reflects `assignment`.
  void exchange_improve(std::vector<int>& assignment) {
    const auto bids = model_.bids();
    bool improved = true;
    for (int round = 0; improved && round < 10; ++round) {
      improved = false;
      for (std::size_t in = 0; in < order_.size(); ++in) {
        if (assignment[in] != 0) continue;
        const CompiledBid& incoming = bids[order_[in]];
        for (int arrival : incoming.arrivals) {
          if (try_insert(assignment, in, arrival)) {
            improved = true;
            break;
          }
        }
      }
    }
  }

  bool try_insert(std::vector<int>& assignment, std::size_t in, int arrival) {
    const auto bids = model_.bids();
    const CompiledBid& incoming = bids[order_[in]];
    const int last = arrival + incoming.nights - 1;
    std::vector<std::size_t> blockers;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      const int at = assignment[pos];
      if (at == 0) continue;
      const CompiledBid& bid = bids[order_[pos]];
      if (at > last || at + bid.nights - 1 < arrival || !shares_rows(bid, incoming)) continue;
      blockers.push_back(pos);
    }
    std::stable_sort(blockers.begin(), blockers.end(),
                     [&](std::size_t a, std::size_t b) { return bids[order_[a]].coefficient < bids[order_[b]].coefficient; });
    std::vector<std::pair<std::size_t, int>> evicted;
    Money lost;
    bool fits = occupancy_.fits(incoming, arrival);
    for (std::size_t i = 0; i < blockers.size() && !fits; ++i) {
      const CompiledBid& bid = bids[order_[blockers[i]]];
      occupancy_.remove(bid, assignment[blockers[i]]);
      evicted.emplace_back(blockers[i], assignment[blockers[i]]);
      lost += bid.coefficient;
      fits = occupancy_.fits(incoming, arrival);
    }
    if (!fits) {
      for (const auto& [pos, at] : evicted) occupancy_.place(bids[order_[pos]], at);
      return false;
    }
    occupancy_.place(incoming, arrival);
    Money regained;
    std::vector<int> replaced(evicted.size(), 0);
    for (std::size_t i = 0; i < evicted.size(); ++i) {
      replaced[i] = place_anywhere(evicted[i].first);
      if (replaced[i] != 0) regained += bids[order_[evicted[i].first]].coefficient;
    }
    if (incoming.coefficient + regained > lost) {
      assignment[in] = arrival;
      for (std::size_t i = 0; i < evicted.size(); ++i) assignment[evicted[i].first] = replaced[i];
      return true;
    }
    for (std::size_t i = 0; i < evicted.size(); ++i) {
      if (replaced[i] != 0) occupancy_.remove(bids[order_[evicted[i].first]], replaced[i]);
    }
    occupancy_.remove(incoming, arrival);
    for (const auto& [pos, at] : evicted) occupancy_.place(bids[order_[pos]], at);
    return false;
  }

  void note_open(Money bound) { open_bound_ = std::max(open_bound_, bound); }

  // Prunes when `upper` cannot beat the incumbent by more than the tolerance;
  // a pruned bound above the incumbent still limits the reported bound.
  bool prune(Money upper) {
    if (!prunable(upper)) return false;
    if (upper > best_) note_open(upper);
    return true;
  }

  // Decisions on the path from the root: a persistent list, newest first.
  struct Decision {
    std::shared_ptr<const Decision> parent;
    std::size_t position;
    int arrival;  // 0 = rejected
  };

  struct OpenNode {
    Money bound;  // valid upper bound on any completion
    std::size_t depth;
    Money value;
    std::shared_ptr<const Decision> path;
    std::uint64_t sequence;
  };

  struct LowerPriority {
    bool operator()(const OpenNode& a, const OpenNode& b) const {
      if (a.bound != b.bound) return a.bound < b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.sequence > b.sequence;
    }
  };

  void push(Money bound, std::size_t depth, Money value, std::shared_ptr<const Decision> path) {
    open_.push({bound, depth, value, std::move(path), sequence_++});
  }

  // Rebuilds occupancy and chosen_ for the decisions on `path`.
  void restore(const std::shared_ptr<const Decision>& path) {
    occupancy_ = detail::Occupancy(model_);
    std::fill(chosen_.begin(), chosen_.end(), 0);
    const auto bids = model_.bids();
    for (const Decision* d = path.get(); d != nullptr; d = d->parent.get()) {
      chosen_[d->position] = d->arrival;
      if (d->arrival != 0) occupancy_.place(bids[order_[d->position]], d->arrival);
    }
  }

  // Best-first over open nodes; from each popped node the search dives along
  // the most promising child and queues the siblings with the parent's bound.
  void search() {
    push(Money::from_cents(std::numeric_limits<std::int64_t>::max() / 4), 0, Money{}, nullptr);
    root_prices_ = prices_;
    root_cut_prices_ = cut_prices_;
    while (!open_.empty()) {
      OpenNode node = open_.top();
      if (prunable(node.bound)) break;  // every other open node is no better
      open_.pop();
      restore(node.path);
      if (node.depth > 0) {
        prices_ = root_prices_;
        cut_prices_ = root_cut_prices_;
      }
      dive(node);
      if (aborted_) break;
    }
    if (!open_.empty() && open_.top().bound > best_) note_open(open_.top().bound);
  }

  void dive(OpenNode node) {
    const auto bids = model_.bids();
    std::size_t k = node.depth;
    Money value = node.value;
    std::shared_ptr<const Decision> path = node.path;
    bool first = true;
    while (true) {
      ++nodes_;
      if (value > best_) {
        best_ = value;
        best_chosen_ = chosen_;
      }
      if (k == order_.size()) return;

      Money upper = std::min(node.bound, value + combinatorial_bound(k));
      if (prune(upper)) return;
      if (out_of_budget()) {
        aborted_ = true;
        note_open(upper);
        return;
      }

      std::vector<int> hint(order_.size(), 0);
      const double target = static_cast<double>((best_ - value).cents() + tolerance(best_));
      double lagrangian = 0.0;
      if (k == 0) {
        std::vector<std::vector<int>> frequency(order_.size());
        for (std::size_t pos = 0; pos < order_.size(); ++pos) frequency[pos].assign(bids[order_[pos]].arrivals.size(), 0);
        for (int round = 0; round <= kCutRounds; ++round) {
          for (auto& counts : frequency) std::fill(counts.begin(), counts.end(), 0);
          samples_ = 0;
          lagrangian = tune_prices(k, target, kRootPriceIterations, hint, &frequency);
          if (prunable(std::min(upper, value + Money::from_cents(floor_bound(lagrangian)))) || samples_ == 0) break;
          if (round == kCutRounds || separate_covers(occupancy_share(frequency)) == 0) break;
        }
        root_prices_ = prices_;
        root_cut_prices_ = cut_prices_;
        round_frequencies(frequency);
      } else {
        lagrangian = tune_prices(k, target, first ? kPoppedPriceIterations : kNodePriceIterations, hint);
      }
      upper = std::min(upper, value + Money::from_cents(floor_bound(lagrangian)));
      if (prune(upper)) return;
      complete_heuristically(k, value, hint, first);
      if (prune(upper)) return;
      first = false;

      // Children: accept at each fitting arrival or reject, most promising
      // reduced value first (reject counts as zero).
      const CompiledBid& bid = bids[order_[k]];
      std::vector<std::pair<double, int>> children;
      for (int arrival : bid.arrivals) {
        if (occupancy_.fits(bid, arrival)) children.emplace_back(reduced_value(k, arrival), arrival);
      }
      children.emplace_back(0.0, 0);
      std::stable_sort(children.begin(), children.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (std::size_t i = 1; i < children.size(); ++i) {
        const int arrival = children[i].second;
        push(upper, k + 1, arrival != 0 ? value + bid.coefficient : value,
             std::make_shared<const Decision>(Decision{path, k, arrival}));
      }
      const int arrival = children.front().second;
      if (arrival != 0) {
        occupancy_.place(bid, arrival);
        value += bid.coefficient;
      }
      chosen_[k] = arrival;
      path = std::make_shared<const Decision>(Decision{path, k, arrival});
      node.bound = upper;
      ++k;
    }
  }

  const ForwardModel& model_;
  SolveLimits limits_;
  detail::Occupancy occupancy_;
  Clock::time_point start_;

  std::vector<std::size_t> order_;  // admissible bids, coefficient descending
  std::vector<Money> suffix_value_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<Item>> items_;
  std::vector<std::vector<int>> span_lo_;
  std::vector<std::vector<int>> span_hi_;

  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<int, int>>> terms_;  // per position: (row, usage per night)

  struct Cut {
    int day;
    int rhs;
    std::vector<std::size_t> members;  // positions
  };
  std::vector<Cut> cuts_;
  std::set<std::tuple<int, int, std::vector<std::size_t>>> known_cuts_;
  std::vector<int> base_capacity_;
  // per base row and night: (rooms, position) of requests that may hold it
  std::vector<std::vector<std::vector<std::pair<int, std::size_t>>>> night_candidates_;
  std::vector<std::vector<std::pair<int, int>>> cut_terms_;  // per position: (day, cut)
  std::vector<double> cut_prices_;
  std::vector<double> cut_prefix_;  // per position, prefix sums over days
  std::vector<double> prices_;  // per (row, day)
  std::vector<double> prefix_;  // per row, prefix sums over days

  std::vector<int> chosen_;
  std::vector<int> best_chosen_;
  std::priority_queue<OpenNode, std::vector<OpenNode>, LowerPriority> open_;
  std::uint64_t sequence_ = 0;
  int samples_ = 0;
  std::vector<double> root_prices_;
  std::vector<double> root_cut_prices_;
  Money best_;
  Money open_bound_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleWithGap: return "feasible-with-gap";
    case SolveStatus::InfeasibleInput: return "infeasible-input";
  }
  return "unknown";
}

SolveResult solve_exact(const ForwardModel& model, const SolveLimits& limits) {
  if (limits.time_budget.count() <= 0) throw DomainError("time budget must be positive");
  if (limits.gap_tolerance < 0.0) throw DomainError("gap tolerance must be non-negative");
  return BranchAndBound(model, limits).run();
}

SolveResult solve_greedy(const ForwardModel& model) {
  const auto bids = model.bids();
  std::vector<std::size_t> order(bids.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (bids[a].nightly_value != bids[b].nightly_value) return bids[a].nightly_value > bids[b].nightly_value;
    if (bids[a].nights != bids[b].nights) return bids[a].nights > bids[b].nights;
    return bids[a].customer < bids[b].customer;
  });
  return place_in_order(model, order);
}

SolveResult solve_fcfs(const ForwardModel& model, std::span<const CustomerId> arrival_order) {
  const auto bids = model.bids();
  std::vector<std::size_t> order;
  std::set<CustomerId> seen;
  std::vector<std::string> problems;
  for (CustomerId id : arrival_order) {
    if (!seen.insert(id).second) {
      problems.push_back("customer " + std::to_string(id.value) + " appears more than once");
      continue;
    }
    const CompiledBid* bid = model.find_bid(id);
    if (bid == nullptr) {
      problems.push_back("customer " + std::to_string(id.value) + " has no bid");
      continue;
    }
    order.push_back(static_cast<std::size_t>(bid - bids.data()));
  }
  for (const auto& bid : bids) {
    if (!seen.contains(bid.customer)) {
      problems.push_back("customer " + std::to_string(bid.customer.value) + " missing from arrival order");
    }
  }
  if (!problems.empty()) throw DomainError("arrival order is not a permutation of the bidders", problems);
  return place_in_order(model, order);
}

SolveResult brute_force(const ForwardModel& model, std::uint64_t cap) {
  const auto start = Clock::now();
  const auto bids = model.bids();
  std::uint64_t combinations = 1;
  for (const auto& bid : bids) {
    const std::uint64_t choices = 1 + bid.arrivals.size();
    if (combinations > cap / choices) {
      throw EnumerationCapExceeded("instance has more than " + std::to_string(cap) +
                                   " accept/arrival combinations; use solve_exact instead");
    }
    combinations *= choices;
  }

  const int days = model.days();
  std::vector<int> type_load(model.room_types().size() * days, 0);
  std::vector<int> group_load(model.groups().size() * days, 0);
  std::vector<int> current(bids.size(), 0);
  std::vector<int> best_assignment(bids.size(), 0);
  Money best_value;
  bool have_best = false;
  std::uint64_t visited = 0;

  auto capacity_ok = [&]() {
    for (std::size_t t = 0; t < model.room_types().size(); ++t) {
      for (int d = 0; d < days; ++d) {
        if (type_load[t * days + d] > model.type_capacity(static_cast<int>(t))) return false;
      }
    }
    for (std::size_t g = 0; g < model.groups().size(); ++g) {
      for (int d = 0; d < days; ++d) {
        if (group_load[g * days + d] > model.group_capacity(static_cast<int>(g))) return false;
      }
    }
    return true;
  };
  auto load = [&](const CompiledBid& bid, int arrival, int sign) {
    for (const auto& line : bid.lines) {
      for (int d = arrival; d < arrival + bid.nights; ++d) {
        type_load[line.type * days + d - 1] += sign * line.rooms;
        group_load[line.group * days + d - 1] += sign * line.rooms;
      }
    }
  };

  // Every combination is visited; a partial assignment that already breaks a
  // capacity row cannot be repaired by accepting more bids, so it is cut.
  auto enumerate = [&](auto&& self, std::size_t i, Money value) -> void {
    if (i == bids.size()) {
      ++visited;
      if (!have_best || value > best_value) {
        have_best = true;
        best_value = value;
        best_assignment = current;
      }
      return;
    }
    current[i] = 0;
    self(self, i + 1, value);
    for (int arrival : bids[i].arrivals) {
      load(bids[i], arrival, +1);
      if (capacity_ok()) {
        current[i] = arrival;
        self(self, i + 1, value + bids[i].coefficient);
        current[i] = 0;
      } else {
        ++visited;
      }
      load(bids[i], arrival, -1);
    }
  };
  enumerate(enumerate, 0, Money{});

  SolveResult result;
  result.solution = make_solution(model, best_assignment);
  result.status = SolveStatus::Optimal;
  result.best_bound = result.solution.objective;
  result.nodes_explored = visited;
  result.wall_time = Clock::now() - start;
  return result;
}

}  // namespace hotelauction::forward
