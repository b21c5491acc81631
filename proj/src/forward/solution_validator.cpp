#include "hotelauction/forward/solution_validator.hpp"

#include <algorithm>
#include <map>

namespace hotelauction::forward {

std::string to_string(SolutionIssue issue) {
  switch (issue) {
    case SolutionIssue::UnknownBid: return "unknown_bid";
    case SolutionIssue::StayLength: return "stay_length";
    case SolutionIssue::Window: return "window";
    case SolutionIssue::Blackout: return "blackout";
    case SolutionIssue::TypeCapacity: return "type_capacity";
    case SolutionIssue::GroupCapacity: return "group_capacity";
    case SolutionIssue::ObjectiveMismatch: return "objective_mismatch";
    case SolutionIssue::ObjectiveModeMismatch: return "objective_mode_mismatch";
  }
  return "unknown";
}

std::vector<SolutionViolation> validate_solution(const ForwardModel& model, const ClearingSolution& solution) {
  std::vector<SolutionViolation> out;
  const int days = model.days();
  // usage[(type, day)] and usage[(group, day)], days 1-based
  std::map<std::pair<int, int>, int> type_usage;
  std::map<std::pair<int, int>, int> group_usage;
  Money objective;

  for (const auto& [customer, stay] : solution.accepted) {
    const std::string who = "bid " + std::to_string(customer.value);
    const CompiledBid* bid = model.find_bid(customer);
    if (bid == nullptr) {
      out.push_back({SolutionIssue::UnknownBid, who + " is not part of the model", customer, std::nullopt});
      continue;
    }
    objective += bid->coefficient;

    const int length = stay.last_night - stay.arrival + 1;
    if (length != bid->nights) {
      out.push_back({SolutionIssue::StayLength,
                     who + " occupies " + std::to_string(length) + " nights, bid asks for " +
                         std::to_string(bid->nights),
                     customer, std::nullopt});
    }
    if (stay.arrival < bid->window_lo || stay.last_night > bid->window_hi ||
        stay.arrival > bid->window_hi + 1 - bid->nights) {
      out.push_back({SolutionIssue::Window,
                     who + " stay [" + std::to_string(stay.arrival) + "," + std::to_string(stay.last_night) +
                         "] leaves window [" + std::to_string(bid->window_lo) + "," +
                         std::to_string(bid->window_hi) + "]",
                     customer, std::nullopt});
    }
    for (int day : bid->blackout_days) {
      if (day >= stay.arrival && day <= stay.last_night) {
        out.push_back({SolutionIssue::Blackout, who + " stays on blackout day " + std::to_string(day), customer, day});
      }
    }

    const int first = std::max(1, stay.arrival);
    const int last = std::min(days, stay.last_night);
    for (int d = first; d <= last; ++d) {
      for (const auto& line : bid->lines) {
        type_usage[{line.type, d}] += line.rooms;
        group_usage[{model.group_of_type(line.type), d}] += line.rooms;
      }
    }
  }

  for (const auto& [key, used] : type_usage) {
    const auto [type, day] = key;
    if (used > model.type_capacity(type)) {
      out.push_back({SolutionIssue::TypeCapacity,
                     "room type " + std::to_string(model.room_types()[type].id.value) + " day " +
                         std::to_string(day) + ": " + std::to_string(used) + " rooms > " +
                         std::to_string(model.type_capacity(type)),
                     std::nullopt, day});
    }
  }
  for (const auto& [key, used] : group_usage) {
    const auto [group, day] = key;
    if (used > model.group_capacity(group)) {
      out.push_back({SolutionIssue::GroupCapacity,
                     "group " + std::to_string(model.groups()[group].id.value) + " day " + std::to_string(day) +
                         ": " + std::to_string(used) + " rooms > " + std::to_string(model.group_capacity(group)),
                     std::nullopt, day});
    }
  }

  if (solution.objective_mode != model.objective_mode()) {
    out.push_back({SolutionIssue::ObjectiveModeMismatch,
                   "solution is in " + to_string(solution.objective_mode) + " mode, model in " +
                       to_string(model.objective_mode()),
                   std::nullopt, std::nullopt});
  }
  if (objective != solution.objective) {
    out.push_back({SolutionIssue::ObjectiveMismatch,
                   "stated objective " + solution.objective.to_string() + " but accepted bids are worth " +
                       objective.to_string(),
                   std::nullopt, std::nullopt});
  }
  return out;
}

}  // namespace hotelauction::forward
