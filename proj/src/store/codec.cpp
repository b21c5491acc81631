#include "hotelauction/store/codec.hpp"

#include <cmath>
#include <fstream>

namespace hotelauction::store {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? "/" : where) + ": " + what);
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const Json& field(const Json& object, const std::string& key, const std::string& where) {
  if (!object.is_object()) fail(where, "expected object");
  const auto it = object.find(key);
  if (it == object.end()) fail(at(where, key), "missing");
  return *it;
}

const Json* optional_field(const Json& object, const std::string& key, const std::string& where) {
  if (!object.is_object()) fail(where, "expected object");
  const auto it = object.find(key);
  return it == object.end() || it->is_null() ? nullptr : &*it;
}

const Json& array(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected array");
  return value;
}

std::int64_t integer(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) fail(where, "expected integer");
  return value.get<std::int64_t>();
}

int small_integer(const Json& value, const std::string& where) {
  const auto v = integer(value, where);
  if (v < -1'000'000'000 || v > 1'000'000'000) fail(where, "integer out of range");
  return static_cast<int>(v);
}

double number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "expected number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail(where, "expected finite number");
  return v;
}

std::string text(const Json& value, const std::string& where) {
  if (!value.is_string()) fail(where, "expected string");
  return value.get<std::string>();
}

CalendarDate date(const Json& value, const std::string& where) {
  const auto parsed = parse_iso_date(text(value, where));
  if (!parsed) fail(where, "expected YYYY-MM-DD date");
  return *parsed;
}

// Night index of an ISO date within the horizon.
int night(const Json& value, const DateHorizon& horizon, const std::string& where) {
  const CalendarDate d = date(value, where);
  if (!horizon.contains(d)) fail(where, "date outside the auction horizon");
  return date_index(horizon, d);
}

Json night_to_json(int index, const DateHorizon& horizon) { return format_iso_date(horizon.date_at(index)); }

}  // namespace

Json money_to_json(Money money) { return Json{{"cents", money.cents()}, {"currency", kCurrency}}; }

Money money_from_json(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return Money::from_euros(value.get<std::int64_t>());
  if (value.is_number()) return Money::from_decimal(number(value, where));
  const auto cents = integer(field(value, "cents", where), at(where, "cents"));
  if (const Json* currency = optional_field(value, "currency", where);
      currency && text(*currency, at(where, "currency")) != kCurrency)
    fail(at(where, "currency"), "only EUR is supported");
  return Money::from_cents(cents);
}

Json auction_to_json(const AuctionRecord& record) {
  const ForwardAuction& a = record.auction;
  Json types = Json::array();
  for (const auto& t : a.room_types) {
    types.push_back({{"id", t.id.value},
                     {"name", t.name},
                     {"auctioned", t.auctioned_count},
                     {"min_price", money_to_json(t.min_price)},
                     {"operating_cost", money_to_json(t.operating_cost)},
                     {"group", t.real_group.value}});
  }
  Json groups = Json::array();
  for (const auto& g : a.groups) {
    Json members = Json::array();
    for (auto m : g.member_room_types) members.push_back(m.value);
    groups.push_back({{"id", g.id.value}, {"capacity", g.capacity}, {"room_types", members}});
  }
  Json bids = Json::array();
  for (const auto& b : record.bids) {
    Json lines = Json::array();
    for (const auto& l : b.lines)
      lines.push_back({{"room_type", l.room_type.value}, {"rooms", l.rooms}, {"price_per_night", money_to_json(l.price_per_night)}});
    Json blackout = Json::array();
    for (int d : b.blackout_days) blackout.push_back(night_to_json(d, a.horizon));
    bids.push_back({{"customer", b.customer_id.value},
                    {"lines", lines},
                    {"window", {{"first", night_to_json(b.window_lo, a.horizon)}, {"last", night_to_json(b.window_hi, a.horizon)}}},
                    {"nights", b.nights},
                    {"blackout", blackout}});
  }
  Json out{{"id", record.id.value},
           {"horizon", {{"start", format_iso_date(a.horizon.start())}, {"nights", a.horizon.length()}}},
           {"room_types", types},
           {"groups", groups},
           {"bids", bids}};
  if (record.latest) out["latest_result"] = solve_to_json(*record.latest, a.horizon);
  return out;
}

AuctionRecord auction_from_json(const Json& value, const std::string& where) {
  AuctionRecord record;
  record.id = AuctionId{1};
  if (const Json* id = optional_field(value, "id", where)) record.id = AuctionId{integer(*id, at(where, "id"))};

  const std::string hw = at(where, "horizon");
  const Json& horizon = field(value, "horizon", where);
  const int length = small_integer(field(horizon, "nights", hw), at(hw, "nights"));
  if (length < 1) fail(at(hw, "nights"), "horizon needs at least one night");
  ForwardAuction& a = record.auction;
  a.horizon = DateHorizon(date(field(horizon, "start", hw), at(hw, "start")), length);

  const std::string tw = at(where, "room_types");
  const Json& types = array(field(value, "room_types", where), tw);
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::string w = at(tw, i);
    RoomType t;
    t.id = RoomTypeId{integer(field(types[i], "id", w), at(w, "id"))};
    if (const Json* name = optional_field(types[i], "name", w)) t.name = text(*name, at(w, "name"));
    t.auctioned_count = small_integer(field(types[i], "auctioned", w), at(w, "auctioned"));
    t.min_price = money_from_json(field(types[i], "min_price", w), at(w, "min_price"));
    if (const Json* cost = optional_field(types[i], "operating_cost", w)) t.operating_cost = money_from_json(*cost, at(w, "operating_cost"));
    t.real_group = GroupId{t.id.value};
    if (const Json* g = optional_field(types[i], "group", w)) t.real_group = GroupId{integer(*g, at(w, "group"))};
    a.room_types.push_back(t);
  }

  if (const Json* groups = optional_field(value, "groups", where)) {
    const std::string gw = at(where, "groups");
    array(*groups, gw);
    for (std::size_t i = 0; i < groups->size(); ++i) {
      const std::string w = at(gw, i);
      const Json& g = (*groups)[i];
      RealRoomGroup group;
      group.id = GroupId{integer(field(g, "id", w), at(w, "id"))};
      group.capacity = small_integer(field(g, "capacity", w), at(w, "capacity"));
      const Json& members = array(field(g, "room_types", w), at(w, "room_types"));
      for (std::size_t m = 0; m < members.size(); ++m)
        group.member_room_types.push_back(RoomTypeId{integer(members[m], at(at(w, "room_types"), m))});
      a.groups.push_back(group);
    }
  } else {
    for (auto& t : a.room_types) {
      t.real_group = GroupId{t.id.value};
      a.groups.push_back({t.real_group, t.auctioned_count, {t.id}});
    }
  }

  const std::string bw = at(where, "bids");
  const Json* bids = optional_field(value, "bids", where);
  for (std::size_t i = 0; bids && i < array(*bids, bw).size(); ++i) {
    const std::string w = at(bw, i);
    const Json& b = (*bids)[i];
    Bid bid;
    bid.customer_id = CustomerId{integer(field(b, "customer", w), at(w, "customer"))};
    const std::string lw = at(w, "lines");
    const Json& lines = array(field(b, "lines", w), lw);
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const std::string w2 = at(lw, l);
      BidLine line;
      line.room_type = RoomTypeId{integer(field(lines[l], "room_type", w2), at(w2, "room_type"))};
      line.rooms = small_integer(field(lines[l], "rooms", w2), at(w2, "rooms"));
      line.price_per_night = money_from_json(field(lines[l], "price_per_night", w2), at(w2, "price_per_night"));
      bid.lines.push_back(line);
    }
    const std::string ww = at(w, "window");
    const Json& window = field(b, "window", w);
    bid.window_lo = night(field(window, "first", ww), a.horizon, at(ww, "first"));
    bid.window_hi = night(field(window, "last", ww), a.horizon, at(ww, "last"));
    bid.nights = small_integer(field(b, "nights", w), at(w, "nights"));
    if (const Json* blackout = optional_field(b, "blackout", w)) {
      const std::string xw = at(w, "blackout");
      for (std::size_t d = 0; d < array(*blackout, xw).size(); ++d)
        bid.blackout_days.push_back(night((*blackout)[d], a.horizon, at(xw, d)));
    }
    record.bids.push_back(bid);
  }

  if (const Json* latest = optional_field(value, "latest_result", where))
    record.latest = solve_from_json(*latest, a.horizon, at(where, "latest_result"));
  return record;
}

Json solve_to_json(const StoredSolve& solve, const DateHorizon& horizon) {
  Json accepted = Json::array();
  for (const auto& [customer, stay] : solve.solution.accepted)
    accepted.push_back({{"customer", customer.value},
                        {"arrival", night_to_json(stay.arrival, horizon)},
                        {"last_night", night_to_json(stay.last_night, horizon)}});
  return Json{{"status", solve.status},
              {"objective", money_to_json(solve.solution.objective)},
              {"objective_mode", to_string(solve.solution.objective_mode)},
              {"best_bound", money_to_json(solve.best_bound)},
              {"nodes", solve.nodes},
              {"wall_seconds", solve.wall_seconds},
              {"accepted", accepted}};
}

StoredSolve solve_from_json(const Json& value, const DateHorizon& horizon, const std::string& where) {
  StoredSolve solve;
  solve.status = text(field(value, "status", where), at(where, "status"));
  solve.solution.objective = money_from_json(field(value, "objective", where), at(where, "objective"));
  try {
    solve.solution.objective_mode = parse_objective_mode(text(field(value, "objective_mode", where), at(where, "objective_mode")));
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    fail(at(where, "objective_mode"), e.what());
  }
  solve.best_bound = money_from_json(field(value, "best_bound", where), at(where, "best_bound"));
  if (const Json* nodes = optional_field(value, "nodes", where)) {
    const auto n = integer(*nodes, at(where, "nodes"));
    if (n < 0) fail(at(where, "nodes"), "must be non-negative");
    solve.nodes = static_cast<std::uint64_t>(n);
  }
  if (const Json* secs = optional_field(value, "wall_seconds", where)) solve.wall_seconds = number(*secs, at(where, "wall_seconds"));
  const std::string aw = at(where, "accepted");
  const Json& accepted = array(field(value, "accepted", where), aw);
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    const std::string w = at(aw, i);
    const CustomerId customer{integer(field(accepted[i], "customer", w), at(w, "customer"))};
    const Stay stay{night(field(accepted[i], "arrival", w), horizon, at(w, "arrival")),
                    night(field(accepted[i], "last_night", w), horizon, at(w, "last_night"))};
    if (!solve.solution.accepted.emplace(customer, stay).second) fail(at(w, "customer"), "customer accepted twice");
  }
  return solve;
}

Json record_to_json(const rules::OfferRecord& r) {
  return Json{{"period_visiting", r.period_visiting}, {"hotel_rating", r.hotel_rating},
              {"distance_to_sea", r.distance_to_sea}, {"beds_requested", r.beds_requested},
              {"breakfast_type", r.breakfast_type},   {"sites_within_10km", r.sites_within_10km},
              {"accepted_price", money_to_json(r.accepted_price)}};
}

rules::OfferRecord record_from_json(const Json& value, const std::string& where) {
  rules::OfferRecord r;
  for (rules::Attribute a : rules::kAttributes) {
    const std::string key(rules::attribute_name(a));
    const double v = number(field(value, key, where), at(where, key));
    if (rules::attribute_domain(a).integral && v != std::floor(v)) fail(at(where, key), "expected whole number");
    r.set(a, v);
  }
  r.accepted_price = money_from_json(field(value, "accepted_price", where), at(where, "accepted_price"));
  return r;
}

Json profile_to_json(const rules::HotelProfile& p) {
  Json breakfasts = Json::array();
  for (const auto& [type, cost] : p.breakfast_costs) breakfasts.push_back({{"type", type}, {"cost", money_to_json(cost)}});
  Json out{{"id", p.id},
           {"hotel_rating", p.hotel_rating},
           {"distance_to_sea", p.distance_to_sea},
           {"breakfasts", breakfasts},
           {"base_cost", money_to_json(p.base_cost)}};
  if (p.sites_within_10km) out["sites_within_10km"] = *p.sites_within_10km;
  return out;
}

rules::HotelProfile profile_from_json(const Json& value, const std::string& where) {
  rules::HotelProfile p;
  p.id = text(field(value, "id", where), at(where, "id"));
  p.hotel_rating = number(field(value, "hotel_rating", where), at(where, "hotel_rating"));
  p.distance_to_sea = number(field(value, "distance_to_sea", where), at(where, "distance_to_sea"));
  if (const Json* sites = optional_field(value, "sites_within_10km", where))
    p.sites_within_10km = small_integer(*sites, at(where, "sites_within_10km"));
  if (const Json* breakfasts = optional_field(value, "breakfasts", where)) {
    const std::string bw = at(where, "breakfasts");
    p.breakfast_costs.clear();
    for (std::size_t i = 0; i < array(*breakfasts, bw).size(); ++i) {
      const std::string w = at(bw, i);
      const int type = small_integer(field((*breakfasts)[i], "type", w), at(w, "type"));
      if (!p.breakfast_costs.emplace(type, money_from_json(field((*breakfasts)[i], "cost", w), at(w, "cost"))).second)
        fail(at(w, "type"), "breakfast type listed twice");
    }
  }
  if (const Json* base = optional_field(value, "base_cost", where)) p.base_cost = money_from_json(*base, at(where, "base_cost"));
  return p;
}

AuctionRecord read_auction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  Json document;
  try {
    document = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return auction_from_json(document);
}

}  // namespace hotelauction::store
