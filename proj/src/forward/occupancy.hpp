#pragma once

#include <vector>

#include "hotelauction/forward/model.hpp"

namespace hotelauction::forward::detail {

// Rooms committed per (room type, day) and per (real group, day).
class Occupancy {
 public:
  explicit Occupancy(const ForwardModel& model)
      : model_(&model),
        days_(model.days()),
        type_used_(model.room_types().size() * static_cast<std::size_t>(days_), 0),
        group_used_(model.groups().size() * static_cast<std::size_t>(days_), 0) {}

  bool fits(const CompiledBid& bid, int arrival) const {
    for (int d = arrival; d < arrival + bid.nights; ++d) {
      for (const auto& line : bid.lines) {
        if (type_used(line.type, d) + line.rooms > model_->type_capacity(line.type)) return false;
      }
      for (const auto& [group, rooms] : bid.group_rooms) {
        if (group_used(group, d) + rooms > model_->group_capacity(group)) return false;
      }
    }
    return true;
  }

  void place(const CompiledBid& bid, int arrival) { apply(bid, arrival, +1); }
  void remove(const CompiledBid& bid, int arrival) { apply(bid, arrival, -1); }

  int type_used(int type, int day) const { return type_used_[type * days_ + day - 1]; }
  int group_used(int group, int day) const { return group_used_[group * days_ + day - 1]; }

  // Rooms of `group` still sellable on `day`, honoring both the group capacity
  // and the per-type auctioned counts of its members.
  int group_residual(int group, int day, const std::vector<int>& member_types) const {
    int by_types = 0;
    for (int t : member_types) by_types += model_->type_capacity(t) - type_used(t, day);
    const int by_group = model_->group_capacity(group) - group_used(group, day);
    return by_types < by_group ? by_types : by_group;
  }

 private:
  void apply(const CompiledBid& bid, int arrival, int sign) {
    for (int d = arrival; d < arrival + bid.nights; ++d) {
      for (const auto& line : bid.lines) type_used_[line.type * days_ + d - 1] += sign * line.rooms;
      for (const auto& [group, rooms] : bid.group_rooms) group_used_[group * days_ + d - 1] += sign * rooms;
    }
  }

  const ForwardModel* model_;
  int days_;
  std::vector<int> type_used_;
  std::vector<int> group_used_;
};

}  // namespace hotelauction::forward::detail
