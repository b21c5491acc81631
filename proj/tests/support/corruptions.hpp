#pragma once

// Corrupted clearing solutions with a known defect, built by perturbing exact
// optima of random instances. Shared by the validator tests and the
// acceptance run.

#include <algorithm>
#include <string>
#include <vector>

#include "hotelauction/forward/instance_gen.hpp"
#include "hotelauction/forward/model.hpp"
#include "hotelauction/forward/solution_validator.hpp"
#include "hotelauction/forward/solvers.hpp"

namespace hotelauction::testing {

struct Corruption {
  std::string kind;
  forward::Instance instance;
  ClearingSolution solution;
  std::vector<forward::SolutionIssue> expected;  // at least one must be reported
};

inline std::vector<Corruption> corruption_corpus(std::size_t count) {
  using namespace forward;
  std::vector<Corruption> out;
  for (std::uint64_t seed = 1; out.size() < count && seed < 10'000; ++seed) {
    RandomInstanceSpec spec;
    spec.customers = 8;
    spec.days = 10;
    spec.capacities = {2, 1};
    spec.max_nights = 4;
    spec.max_window_slack = 3;
    spec.shared_groups = seed % 2 == 0;
    spec.blackout_percent = 60;
    const Instance inst = random_instance(spec, seed);
    const ForwardModel model = build_model(inst.auction, inst.bids, ObjectiveMode::Income);
    const ClearingSolution base = solve_exact(model).solution;
    if (base.accepted.empty()) continue;
    const auto& [first_customer, first_stay] = *base.accepted.begin();
    const CompiledBid& first_bid = *model.find_bid(first_customer);

    Corruption c{"", inst, base, {}};
    switch (seed % 7) {
      case 0:
        c.kind = "arrival one past the last feasible start";
        c.solution.accepted[first_customer] = {first_bid.window_hi + 2 - first_bid.nights, first_bid.window_hi + 1};
        c.expected = {SolutionIssue::Window};
        break;
      case 1:
        c.kind = "stay one night too long";
        c.solution.accepted[first_customer].last_night += 1;
        c.expected = {SolutionIssue::StayLength};
        break;
      case 2: {
        c.kind = "stay covers a blackout day";
        bool placed = false;
        for (const auto& bid : model.bids()) {
          if (!base.accepted.contains(bid.customer) || bid.blackout_days.empty()) continue;
          const int day = bid.blackout_days.front();
          const int arrival = std::max(bid.window_lo, day - bid.nights + 1);
          if (arrival + bid.nights - 1 > bid.window_hi) continue;
          c.solution.accepted[bid.customer] = {arrival, arrival + bid.nights - 1};
          placed = true;
          break;
        }
        if (!placed) continue;
        c.expected = {SolutionIssue::Blackout};
        break;
      }
      case 3:
        c.kind = "unknown customer";
        c.solution.accepted[CustomerId{99'999}] = {1, 1};
        c.expected = {SolutionIssue::UnknownBid};
        break;
      case 4:
        c.kind = "objective off by one cent";
        c.solution.objective += Money::from_cents(1);
        c.expected = {SolutionIssue::ObjectiveMismatch};
        break;
      case 5:
        c.kind = "objective mode flipped";
        c.solution.objective_mode = ObjectiveMode::Profit;
        c.expected = {SolutionIssue::ObjectiveModeMismatch};
        break;
      case 6: {
        // Any rejected bid added to an optimum must break a capacity row,
        // otherwise the optimum could be improved.
        c.kind = "rejected bid forced in";
        const CompiledBid* rejected = nullptr;
        for (const auto& bid : model.bids())
          if (!base.accepted.contains(bid.customer)) rejected = &bid;
        if (rejected == nullptr) continue;
        const int arrival = rejected->arrivals.front();
        c.solution.accepted[rejected->customer] = {arrival, arrival + rejected->nights - 1};
        c.solution.objective += rejected->coefficient;
        c.expected = {SolutionIssue::TypeCapacity, SolutionIssue::GroupCapacity};
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline bool detected(const Corruption& c) {
  const auto model = forward::build_model(c.instance.auction, c.instance.bids, ObjectiveMode::Income);
  const auto report = forward::validate_solution(model, c.solution);
  return std::any_of(report.begin(), report.end(), [&](const forward::SolutionViolation& v) {
    return std::find(c.expected.begin(), c.expected.end(), v.issue) != c.expected.end();
  });
}

}  // namespace hotelauction::testing
