#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hotelauction/core/types.hpp"

namespace hotelauction::forward {

struct Instance {
  ForwardAuction auction;
  std::vector<Bid> bids;  // in submission order
};

struct RandomInstanceSpec {
  int customers = 10;
  int days = 7;
  std::vector<int> capacities{5};  // auctioned rooms per room type
  int max_nights = 7;
  int max_window_slack = 7;  // window length = nights + slack
  int max_lines = 2;         // room-type lines per bid
  int max_rooms = 2;         // rooms per line
  // When set, consecutive room types are paired into one real group whose
  // capacity is smaller than the sum of the pair's counts.
  bool shared_groups = false;
  int blackout_percent = 10;  // chance that a bid carries one blackout day
};

Instance random_instance(const RandomInstanceSpec& spec, std::uint64_t seed);

// Contention statistic per room type: the largest number, over all days, by
// which the bids whose window covers that day outnumber the auctioned rooms.
std::vector<int> bids_above_capacity(const Instance& instance);

}  // namespace hotelauction::forward
