#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hotelauction/core/types.hpp"

namespace hotelauction::forward {

struct CompiledLine {
  int type = 0;   // index into ForwardModel::room_types()
  int group = 0;  // index into ForwardModel::groups()
  int rooms = 0;
  Money price_per_night;
  Money value;    // rooms * (price or price - cost) * nights, per objective mode
};

// A validated bid in solver form. `arrivals` already excludes every stay that
// would cover a blackout day.
struct CompiledBid {
  CustomerId customer;
  std::vector<CompiledLine> lines;
  int window_lo = 1;
  int window_hi = 1;
  int nights = 1;
  std::vector<int> blackout_days;
  std::vector<int> arrivals;
  std::vector<std::pair<int, int>> group_rooms;  // (group, rooms summed over lines)
  Money coefficient;    // objective coefficient of y_c
  Money nightly_value;  // coefficient / nights
};

// Winner determination model over (y_c, l_c). The per-day occupation x_{c,d} is
// implied by the arrival, and the virtual-type coupling variables n_{r,d} are
// projected out into per-(group, day) capacity rows.
class ForwardModel {
 public:
  ForwardModel(ForwardAuction auction, std::vector<CompiledBid> bids, ObjectiveMode mode);

  const ForwardAuction& auction() const { return auction_; }
  const DateHorizon& horizon() const { return auction_.horizon; }
  int days() const { return auction_.horizon.length(); }
  std::span<const RoomType> room_types() const { return auction_.room_types; }
  std::span<const RealRoomGroup> groups() const { return auction_.groups; }
  std::span<const CompiledBid> bids() const { return bids_; }
  ObjectiveMode objective_mode() const { return mode_; }

  int type_capacity(int type) const { return auction_.room_types[type].auctioned_count; }
  int group_capacity(int group) const { return auction_.groups[group].capacity; }
  int group_of_type(int type) const { return group_of_type_[type]; }

  std::optional<int> type_index(RoomTypeId id) const;
  std::optional<int> group_index(GroupId id) const;
  const CompiledBid* find_bid(CustomerId id) const;

  // One capacity row per (room type, day) and one coupling row per (group, day).
  std::size_t capacity_row_count() const;
  std::size_t group_row_count() const;

 private:
  ForwardAuction auction_;
  std::vector<CompiledBid> bids_;
  ObjectiveMode mode_;
  std::vector<int> group_of_type_;
};

// Objective contribution of one line for the given mode:
// rooms * (price - [cost]) * nights.
Money line_value(const BidLine& line, const RoomType& type, int nights, ObjectiveMode mode);

// Validates the auction and every bid; throws DomainError listing all offenders.
ForwardModel build_model(const ForwardAuction& auction, std::span<const Bid> bids, ObjectiveMode mode);

}  // namespace hotelauction::forward
