#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace hotelauction {

template <typename Tag>
struct Id {
  std::int64_t value = 0;

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value; }
};

using CustomerId = Id<struct CustomerTag>;
using RoomTypeId = Id<struct RoomTypeTag>;
using GroupId = Id<struct GroupTag>;
using AuctionId = Id<struct AuctionTag>;

}  // namespace hotelauction

template <typename Tag>
struct std::hash<hotelauction::Id<Tag>> {
  std::size_t operator()(const hotelauction::Id<Tag>& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};
