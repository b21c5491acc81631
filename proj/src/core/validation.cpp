#include "hotelauction/core/validation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hotelauction {

std::string to_string(BidIssue issue) {
  switch (issue) {
    case BidIssue::EmptyBid: return "empty_bid";
    case BidIssue::UnknownRoomType: return "unknown_room_type";
    case BidIssue::DuplicateRoomType: return "duplicate_room_type";
    case BidIssue::NonPositiveRooms: return "non_positive_rooms";
    case BidIssue::BelowMinimumPrice: return "below_minimum_price";
    case BidIssue::WindowOutOfHorizon: return "window_out_of_horizon";
    case BidIssue::NonPositiveNights: return "non_positive_nights";
    case BidIssue::NightsExceedWindow: return "nights_exceed_window";
    case BidIssue::BlackoutOutsideWindow: return "blackout_outside_window";
    case BidIssue::NoFeasibleArrival: return "no_feasible_arrival";
  }
  return "unknown";
}

std::vector<int> feasible_arrivals(const Bid& bid) {
  std::vector<int> arrivals;
  if (bid.nights < 1) return arrivals;
  const std::set<int> blackout(bid.blackout_days.begin(), bid.blackout_days.end());
  for (int l = bid.window_lo; l + bid.nights - 1 <= bid.window_hi; ++l) {
    auto it = blackout.lower_bound(l);
    if (it == blackout.end() || *it > l + bid.nights - 1) arrivals.push_back(l);
  }
  return arrivals;
}

std::vector<BidViolation> validate_bid(const Bid& bid, const ForwardAuction& auction) {
  std::vector<BidViolation> out;
  auto flag = [&](BidIssue issue, std::string message) {
    out.push_back({bid.customer_id, issue, std::move(message)});
  };
  const std::string who = "bid " + std::to_string(bid.customer_id.value) + ": ";

  if (bid.lines.empty()) flag(BidIssue::EmptyBid, who + "no room-type lines");

  std::set<RoomTypeId> seen;
  for (const auto& line : bid.lines) {
    const std::string rt = std::to_string(line.room_type.value);
    if (!seen.insert(line.room_type).second) {
      flag(BidIssue::DuplicateRoomType, who + "room type " + rt + " requested by more than one line");
    }
    if (line.rooms < 1) flag(BidIssue::NonPositiveRooms, who + "room type " + rt + " requests no rooms");
    const RoomType* type = auction.find_room_type(line.room_type);
    if (type == nullptr) {
      flag(BidIssue::UnknownRoomType, who + "unknown room type " + rt);
      continue;
    }
    if (line.price_per_night < type->min_price) {
      flag(BidIssue::BelowMinimumPrice, who + "below minimum price for room type " + rt + " (" +
                                            line.price_per_night.to_string() + " < " +
                                            type->min_price.to_string() + ")");
    }
  }

  const int horizon = auction.horizon.length();
  const bool window_ok = 1 <= bid.window_lo && bid.window_lo <= bid.window_hi && bid.window_hi <= horizon;
  if (!window_ok) {
    flag(BidIssue::WindowOutOfHorizon, who + "window [" + std::to_string(bid.window_lo) + "," +
                                           std::to_string(bid.window_hi) + "] not within 1.." +
                                           std::to_string(horizon));
  }
  if (bid.nights < 1) {
    flag(BidIssue::NonPositiveNights, who + "stay length must be at least one night");
  } else if (window_ok && bid.nights > bid.window_hi - bid.window_lo + 1) {
    flag(BidIssue::NightsExceedWindow, who + std::to_string(bid.nights) + " nights do not fit the window");
  }
  for (int day : bid.blackout_days) {
    if (day < bid.window_lo || day > bid.window_hi) {
      flag(BidIssue::BlackoutOutsideWindow, who + "blackout day " + std::to_string(day) + " outside the window");
    }
  }
  if (window_ok && bid.nights >= 1 && bid.nights <= bid.window_hi - bid.window_lo + 1 &&
      feasible_arrivals(bid).empty()) {
    flag(BidIssue::NoFeasibleArrival, who + "every stay in the window hits a blackout day");
  }
  return out;
}

std::vector<std::string> validate_auction(const ForwardAuction& auction) {
  std::vector<std::string> out;
  std::set<RoomTypeId> type_ids;
  for (const auto& type : auction.room_types) {
    const std::string rt = "room type " + std::to_string(type.id.value);
    if (!type_ids.insert(type.id).second) out.push_back(rt + ": duplicate id");
    if (type.min_price <= Money{}) out.push_back(rt + ": minimum price must be positive");
    if (type.operating_cost < Money{}) out.push_back(rt + ": operating cost must be non-negative");
    if (type.auctioned_count < 0) out.push_back(rt + ": auctioned count must be non-negative");
  }

  std::map<RoomTypeId, GroupId> membership;
  std::set<GroupId> group_ids;
  for (const auto& group : auction.groups) {
    const std::string g = "group " + std::to_string(group.id.value);
    if (!group_ids.insert(group.id).second) out.push_back(g + ": duplicate id");
    if (group.capacity < 0) out.push_back(g + ": capacity must be non-negative");
    for (RoomTypeId member : group.member_room_types) {
      if (!type_ids.contains(member)) {
        out.push_back(g + ": unknown member room type " + std::to_string(member.value));
        continue;
      }
      auto [it, inserted] = membership.emplace(member, group.id);
      if (!inserted) {
        out.push_back("room type " + std::to_string(member.value) + " belongs to groups " +
                      std::to_string(it->second.value) + " and " + std::to_string(group.id.value));
      }
    }
  }
  for (const auto& type : auction.room_types) {
    auto it = membership.find(type.id);
    if (it == membership.end()) {
      out.push_back("room type " + std::to_string(type.id.value) + " belongs to no group");
    } else if (it->second != type.real_group) {
      out.push_back("room type " + std::to_string(type.id.value) + " names group " +
                    std::to_string(type.real_group.value) + " but is listed under group " +
                    std::to_string(it->second.value));
    }
  }
  return out;
}

}  // namespace hotelauction
