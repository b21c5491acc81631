#pragma once

#include <map>
#include <string>
#include <vector>

#include "hotelauction/core/date.hpp"
#include "hotelauction/core/ids.hpp"
#include "hotelauction/core/money.hpp"

namespace hotelauction {

struct RoomType {
  RoomTypeId id;
  std::string name;
  int auctioned_count = 0;  // n_r
  Money min_price;          // pi_r, per night
  Money operating_cost;     // kappa_r, per night
  GroupId real_group;

  friend bool operator==(const RoomType&, const RoomType&) = default;
};

// A physical room category shared by one or more virtual room types (for
// instance the same double room sold with different breakfast options).
struct RealRoomGroup {
  GroupId id;
  int capacity = 0;  // N_q
  std::vector<RoomTypeId> member_room_types;

  friend bool operator==(const RealRoomGroup&, const RealRoomGroup&) = default;
};

struct BidLine {
  RoomTypeId room_type;
  int rooms = 0;            // n_{c,r}
  Money price_per_night;    // b_{c,r}

  friend bool operator==(const BidLine&, const BidLine&) = default;
};

// A customer's sealed offer. All lines share the window [window_lo, window_hi]
// (1-based night indices into the horizon) and the stay length; the bid is
// accepted or rejected as a whole.
struct Bid {
  CustomerId customer_id;
  std::vector<BidLine> lines;
  int window_lo = 1;  // L_c
  int window_hi = 1;  // U_c, last night that may be occupied
  int nights = 1;     // M_c
  std::vector<int> blackout_days;

  friend bool operator==(const Bid&, const Bid&) = default;
};

struct ForwardAuction {
  DateHorizon horizon{CalendarDate{}, 1};
  std::vector<RoomType> room_types;
  std::vector<RealRoomGroup> groups;

  const RoomType* find_room_type(RoomTypeId id) const;

  friend bool operator==(const ForwardAuction&, const ForwardAuction&) = default;
};

enum class ObjectiveMode { Income, Profit };

std::string to_string(ObjectiveMode mode);
// Accepts "income" / "profit"; throws DomainError otherwise.
ObjectiveMode parse_objective_mode(const std::string& text);

// Occupied block of an accepted bid: nights arrival..last_night inclusive
// (l_c and u_c = l_c + M_c - 1).
struct Stay {
  int arrival = 0;
  int last_night = 0;

  friend bool operator==(const Stay&, const Stay&) = default;
};

struct ClearingSolution {
  std::map<CustomerId, Stay> accepted;
  Money objective;
  ObjectiveMode objective_mode = ObjectiveMode::Income;

  friend bool operator==(const ClearingSolution&, const ClearingSolution&) = default;
};

}  // namespace hotelauction
