#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "hotelauction/core/types.hpp"
#include "hotelauction/forward/model.hpp"

namespace hotelauction::forward {

struct SolveLimits {
  std::chrono::milliseconds time_budget{30'000};
  std::optional<std::uint64_t> node_budget;
  double gap_tolerance = 0.0;  // relative, against max(1 cent, |objective|)
};

enum class SolveStatus { Optimal, FeasibleWithGap, InfeasibleInput };

std::string to_string(SolveStatus status);

struct SolveResult {
  ClearingSolution solution;
  SolveStatus status = SolveStatus::Optimal;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{};
  Money best_bound;
};

// Branch and bound over (accept at arrival l | reject) per bid. Bids are
// branched fewest feasible arrivals first, then by descending coefficient and
// ascending customer id. Open nodes are processed best bound first, diving
// from each along the child with the best reduced value.
//
// Node bound: the minimum of the coefficient sum of undecided bids, a per-group
// fractional knapsack over residual room-nights, and a Lagrangian bound that
// prices capacity per night (plus implied size-threshold, clique and cover
// rows). The incumbent is only replaced on strict improvement, so the result
// is deterministic whenever the search completes within its budgets. In profit
// mode bids with a negative coefficient are rejected up front.
SolveResult solve_exact(const ForwardModel& model, const SolveLimits& limits = {});

// Greedy placement: bids by nightly value descending, then stay length
// descending, then customer id; each bid takes the earliest arrival that fits
// the remaining capacity or is rejected.
SolveResult solve_greedy(const ForwardModel& model);

// First come, first served: same placement as greedy, in `arrival_order`.
// Throws DomainError unless `arrival_order` is a permutation of the bidders.
SolveResult solve_fcfs(const ForwardModel& model, std::span<const CustomerId> arrival_order);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration of every accept/arrival combination. Intended as a
// reference for small instances; refuses when prod(1 + |arrivals|) > cap.
SolveResult brute_force(const ForwardModel& model, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace hotelauction::forward
