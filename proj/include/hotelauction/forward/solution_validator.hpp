#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hotelauction/core/types.hpp"
#include "hotelauction/forward/model.hpp"

namespace hotelauction::forward {

enum class SolutionIssue {
  UnknownBid,
  StayLength,
  Window,
  Blackout,
  TypeCapacity,
  GroupCapacity,
  ObjectiveMismatch,
  ObjectiveModeMismatch,
};

std::string to_string(SolutionIssue issue);

struct SolutionViolation {
  SolutionIssue issue;
  std::string message;
  std::optional<CustomerId> customer;
  std::optional<int> day;
};

// Rebuilds the occupation x_{c,d} from each accepted stay and checks every
// model row: stay length, arrival window, blackout days, per-type capacity,
// per-group capacity, and the stated objective. Empty result means valid.
std::vector<SolutionViolation> validate_solution(const ForwardModel& model, const ClearingSolution& solution);

}  // namespace hotelauction::forward
