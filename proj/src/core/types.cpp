#include "hotelauction/core/types.hpp"

#include "hotelauction/core/errors.hpp"

namespace hotelauction {

const RoomType* ForwardAuction::find_room_type(RoomTypeId id) const {
  for (const auto& type : room_types) {
    if (type.id == id) return &type;
  }
  return nullptr;
}

std::string to_string(ObjectiveMode mode) {
  return mode == ObjectiveMode::Income ? "income" : "profit";
}

ObjectiveMode parse_objective_mode(const std::string& text) {
  if (text == "income") return ObjectiveMode::Income;
  if (text == "profit") return ObjectiveMode::Profit;
  throw DomainError("unknown objective mode '" + text + "' (expected income or profit)");
}

}  // namespace hotelauction
