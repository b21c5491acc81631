#pragma once

#include <string>
#include <vector>

#include "hotelauction/core/types.hpp"

namespace hotelauction {

enum class BidIssue {
  EmptyBid,
  UnknownRoomType,
  DuplicateRoomType,
  NonPositiveRooms,
  BelowMinimumPrice,
  WindowOutOfHorizon,
  NonPositiveNights,
  NightsExceedWindow,
  BlackoutOutsideWindow,
  NoFeasibleArrival,
};

std::string to_string(BidIssue issue);

struct BidViolation {
  CustomerId customer;
  BidIssue issue;
  std::string message;
};

// All arrivals l with L_c <= l <= U_c + 1 - M_c whose stay block
// [l, l + M_c - 1] avoids every blackout day, ascending.
std::vector<int> feasible_arrivals(const Bid& bid);

// Empty result means the bid is admissible for `auction`.
std::vector<BidViolation> validate_bid(const Bid& bid, const ForwardAuction& auction);

// Structural checks on the auction itself: positive prices, non-negative
// counts and costs, and groups that partition the room types consistently with
// RoomType::real_group. Empty result means valid.
std::vector<std::string> validate_auction(const ForwardAuction& auction);

}  // namespace hotelauction
