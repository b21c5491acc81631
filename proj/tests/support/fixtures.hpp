#pragma once

#include <string>
#include <vector>

#include "hotelauction/core/types.hpp"
#include "hotelauction/forward/instance_gen.hpp"

namespace hotelauction::testing {

inline std::string fixture_path(const std::string& name) { return std::string(HOTELAUCTION_FIXTURE_DIR) + "/" + name; }

inline CalendarDate ymd(int y, unsigned m, unsigned d) {
  return CalendarDate{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

// One room type with a singleton group of the same capacity.
inline ForwardAuction single_type_auction(CalendarDate start, int nights, int rooms, Money min_price,
                                          Money cost = Money{}) {
  ForwardAuction a{DateHorizon(start, nights), {}, {}};
  a.room_types.push_back({RoomTypeId{1}, "double", rooms, min_price, cost, GroupId{1}});
  a.groups.push_back({GroupId{1}, rooms, {RoomTypeId{1}}});
  return a;
}

inline Bid make_bid(std::int64_t customer, int rooms, Money price, int lo, int hi, int nights,
                    std::vector<int> blackout = {}, RoomTypeId type = RoomTypeId{1}) {
  return Bid{CustomerId{customer}, {{type, rooms, price}}, lo, hi, nights, std::move(blackout)};
}

// The three-bid scenario from the REST example: June 2023, two rooms at €65.
inline forward::Instance three_bid_instance() {
  forward::Instance inst{single_type_auction(ymd(2023, 6, 1), 15, 2, Money::from_euros(65)), {}};
  inst.bids.push_back(make_bid(1, 1, Money::from_euros(65), 2, 15, 3));
  inst.bids.push_back(make_bid(2, 1, Money::from_euros(80), 2, 10, 9));
  inst.bids.push_back(make_bid(3, 2, Money::from_euros(75), 10, 12, 2));
  return inst;
}

// A: 100/night, 1 night, window [1,1]. B: 60/night, 2 nights, window [1,2].
// One room over a two-night horizon: B alone earns 120, A alone 100.
inline forward::Instance ab_counterexample() {
  forward::Instance inst{single_type_auction(ymd(2023, 6, 1), 2, 1, Money::from_euros(50)), {}};
  inst.bids.push_back(make_bid(1, 1, Money::from_euros(100), 1, 1, 1));
  inst.bids.push_back(make_bid(2, 1, Money::from_euros(60), 1, 2, 2));
  return inst;
}

inline std::vector<Money> price_sample_prices() {
  std::vector<Money> out;
  for (int p : {30, 40, 40, 40, 45, 45, 48, 50, 50, 50}) out.push_back(Money::from_euros(p));
  return out;
}

}  // namespace hotelauction::testing
