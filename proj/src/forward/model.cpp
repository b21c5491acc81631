#include "hotelauction/forward/model.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "hotelauction/core/errors.hpp"
#include "hotelauction/core/validation.hpp"

namespace hotelauction::forward {

ForwardModel::ForwardModel(ForwardAuction auction, std::vector<CompiledBid> bids, ObjectiveMode mode)
    : auction_(std::move(auction)), bids_(std::move(bids)), mode_(mode) {
  group_of_type_.resize(auction_.room_types.size(), 0);
  for (std::size_t t = 0; t < auction_.room_types.size(); ++t) {
    if (auto g = group_index(auction_.room_types[t].real_group)) group_of_type_[t] = *g;
  }
}

std::optional<int> ForwardModel::type_index(RoomTypeId id) const {
  for (std::size_t t = 0; t < auction_.room_types.size(); ++t) {
    if (auction_.room_types[t].id == id) return static_cast<int>(t);
  }
  return std::nullopt;
}

std::optional<int> ForwardModel::group_index(GroupId id) const {
  for (std::size_t g = 0; g < auction_.groups.size(); ++g) {
    if (auction_.groups[g].id == id) return static_cast<int>(g);
  }
  return std::nullopt;
}

const CompiledBid* ForwardModel::find_bid(CustomerId id) const {
  for (const auto& bid : bids_) {
    if (bid.customer == id) return &bid;
  }
  return nullptr;
}

std::size_t ForwardModel::capacity_row_count() const {
  return auction_.room_types.size() * static_cast<std::size_t>(days());
}

std::size_t ForwardModel::group_row_count() const {
  return auction_.groups.size() * static_cast<std::size_t>(days());
}

Money line_value(const BidLine& line, const RoomType& type, int nights, ObjectiveMode mode) {
  const Money per_night =
      mode == ObjectiveMode::Income ? line.price_per_night : line.price_per_night - type.operating_cost;
  return per_night * static_cast<std::int64_t>(line.rooms) * nights;
}

ForwardModel build_model(const ForwardAuction& auction, std::span<const Bid> bids, ObjectiveMode mode) {
  std::vector<std::string> problems = validate_auction(auction);
  if (!problems.empty()) throw DomainError("invalid forward auction", std::move(problems));

  std::set<CustomerId> seen;
  for (const auto& bid : bids) {
    if (!seen.insert(bid.customer_id).second) {
      problems.push_back("bid " + std::to_string(bid.customer_id.value) + ": duplicate customer id");
    }
    for (const auto& v : validate_bid(bid, auction)) problems.push_back(v.message);
  }
  if (!problems.empty()) throw DomainError("invalid bids", std::move(problems));

  ForwardModel shell(auction, {}, mode);
  std::vector<CompiledBid> compiled;
  compiled.reserve(bids.size());
  for (const auto& bid : bids) {
    CompiledBid cb;
    cb.customer = bid.customer_id;
    cb.window_lo = bid.window_lo;
    cb.window_hi = bid.window_hi;
    cb.nights = bid.nights;
    cb.blackout_days = bid.blackout_days;
    cb.arrivals = feasible_arrivals(bid);
    for (const auto& line : bid.lines) {
      const int t = *shell.type_index(line.room_type);
      const RoomType& type = auction.room_types[t];
      CompiledLine cl;
      cl.type = t;
      cl.group = shell.group_of_type(t);
      cl.rooms = line.rooms;
      cl.price_per_night = line.price_per_night;
      cl.value = line_value(line, type, bid.nights, mode);
      cb.coefficient += cl.value;
      cb.lines.push_back(cl);
      auto it = std::find_if(cb.group_rooms.begin(), cb.group_rooms.end(),
                             [&](const auto& gr) { return gr.first == cl.group; });
      if (it == cb.group_rooms.end()) {
        cb.group_rooms.emplace_back(cl.group, cl.rooms);
      } else {
        it->second += cl.rooms;
      }
    }
    cb.nightly_value = Money::from_cents(cb.coefficient.cents() / cb.nights);
    compiled.push_back(std::move(cb));
  }
  return ForwardModel(auction, std::move(compiled), mode);
}

}  // namespace hotelauction::forward
