#include "hotelauction/forward/instance_gen.hpp"

#include <algorithm>
#include <random>

#include "hotelauction/core/validation.hpp"

namespace hotelauction::forward {
namespace {

// Inclusive uniform draw built on the raw engine output so that sequences do
// not depend on the standard library's distribution implementation.
int draw(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

}  // namespace

Instance random_instance(const RandomInstanceSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance instance;
  auto& auction = instance.auction;
  auction.horizon = DateHorizon(CalendarDate{std::chrono::year{2023}, std::chrono::June, std::chrono::day{1}},
                                spec.days);

  const int types = static_cast<int>(spec.capacities.size());
  for (int t = 0; t < types; ++t) {
    RoomType type;
    type.id = RoomTypeId{t + 1};
    type.name = "type " + std::to_string(t + 1);
    type.auctioned_count = spec.capacities[t];
    type.min_price = Money::from_euros(draw(rng, 40, 90));
    type.operating_cost = Money::from_euros(draw(rng, 5, 30));
    auction.room_types.push_back(type);
  }
  if (spec.shared_groups) {
    for (int t = 0; t < types; t += 2) {
      RealRoomGroup group;
      group.id = GroupId{t / 2 + 1};
      group.member_room_types.push_back(RoomTypeId{t + 1});
      int total = spec.capacities[t];
      if (t + 1 < types) {
        group.member_room_types.push_back(RoomTypeId{t + 2});
        total += spec.capacities[t + 1];
      }
      group.capacity = std::max(1, total - std::max(1, total / 3));
      for (RoomTypeId member : group.member_room_types) auction.room_types[member.value - 1].real_group = group.id;
      auction.groups.push_back(group);
    }
  } else {
    for (int t = 0; t < types; ++t) {
      auction.room_types[t].real_group = GroupId{t + 1};
      auction.groups.push_back({GroupId{t + 1}, spec.capacities[t], {RoomTypeId{t + 1}}});
    }
  }

  for (int c = 0; c < spec.customers; ++c) {
    Bid bid;
    bid.customer_id = CustomerId{c + 1};
    bid.nights = draw(rng, 1, std::min(spec.max_nights, spec.days));
    const int slack = draw(rng, 0, std::max(0, std::min(spec.max_window_slack, spec.days - bid.nights)));
    const int width = bid.nights + slack;
    bid.window_lo = draw(rng, 1, spec.days - width + 1);
    bid.window_hi = bid.window_lo + width - 1;

    const int lines = std::min(types, draw(rng, 1, std::max(1, spec.max_lines)));
    std::vector<int> pool(types);
    for (int t = 0; t < types; ++t) pool[t] = t;
    for (int i = 0; i < lines; ++i) {
      const int pick = draw(rng, i, types - 1);
      std::swap(pool[i], pool[pick]);
      const RoomType& type = auction.room_types[pool[i]];
      BidLine line;
      line.room_type = type.id;
      line.rooms = draw(rng, 1, std::max(1, std::min(spec.max_rooms, type.auctioned_count)));
      line.price_per_night = type.min_price + Money::from_euros(draw(rng, 0, 60));
      bid.lines.push_back(line);
    }

    if (slack > 0 && draw(rng, 1, 100) <= spec.blackout_percent) {
      bid.blackout_days.push_back(draw(rng, bid.window_lo, bid.window_hi));
      if (feasible_arrivals(bid).empty()) bid.blackout_days.clear();
    }
    instance.bids.push_back(std::move(bid));
  }
  return instance;
}

std::vector<int> bids_above_capacity(const Instance& instance) {
  const auto& auction = instance.auction;
  std::vector<int> out;
  for (const auto& type : auction.room_types) {
    int worst = 0;
    for (int d = 1; d <= auction.horizon.length(); ++d) {
      int covering = 0;
      for (const auto& bid : instance.bids) {
        if (d < bid.window_lo || d > bid.window_hi) continue;
        for (const auto& line : bid.lines) {
          if (line.room_type == type.id) ++covering;
        }
      }
      worst = std::max(worst, covering - type.auctioned_count);
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace hotelauction::forward
