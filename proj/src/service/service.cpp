#include "hotelauction/service/service.hpp"

#include <httplib.h>

#include <algorithm>

#include "hotelauction/core/errors.hpp"
#include "hotelauction/forward/model.hpp"
#include "hotelauction/reverse/pricing.hpp"
#include "hotelauction/rules/estimator.hpp"

namespace hotelauction::service {
namespace {

using nlohmann::ordered_json;
using store::Json;

constexpr const char* kArrivalKey = "arrival-date (YYYY-mm-dd)";

Reply error_reply(int status, const std::string& code, const std::string& message,
                  const std::vector<std::string>& details = {}) {
  ordered_json doc{{"error", code}, {"message", message}};
  if (!details.empty()) doc["details"] = details;
  return {status, doc.dump()};
}

ordered_json fraction_json(const Fraction& f) {
  return {{"numerator", f.numerator()}, {"denominator", f.denominator()}, {"value", f.to_double()}};
}

ordered_json money_json(Money m) { return store::money_to_json(m); }

ordered_json rule_list(const rules::Ruleset& rules) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rules) out.push_back(r.to_string());
  return out;
}

// Request values for the six characteristics; unknown keys are rejected.
rules::AttributeAssignment parse_assignment(const Json& request) {
  rules::AttributeAssignment assignment;
  if (request.is_null()) return assignment;
  if (!request.is_object()) throw DomainError("request must be an object");
  for (const auto& [key, value] : request.items()) {
    const auto attribute = rules::parse_attribute(key);
    if (!attribute) throw DomainError("unknown request attribute " + key);
    if (value.is_null()) continue;
    if (!value.is_number()) throw DomainError("request attribute " + key + " must be a number");
    assignment[static_cast<std::size_t>(*attribute)] = value.get<double>();
  }
  return assignment;
}

// History prices of records equal to the request on every assigned value;
// all prices when nothing matches.
std::vector<Money> matching_prices(const std::vector<rules::OfferRecord>& history,
                                   const rules::AttributeAssignment& request) {
  std::vector<Money> all, matching;
  for (const auto& r : history) {
    all.push_back(r.accepted_price);
    bool match = true;
    for (rules::Attribute a : rules::kAttributes) {
      const auto& v = request[static_cast<std::size_t>(a)];
      if (v && *v != r.value(a)) match = false;
    }
    if (match) matching.push_back(r.accepted_price);
  }
  return matching.empty() ? all : matching;
}

Money parse_money_text(const std::string& text) {
  const auto money = Money::parse(text);
  if (!money) throw DomainError("not an amount: " + text);
  return *money;
}

}  // namespace

ordered_json accepted_entries(const ClearingSolution& solution, const DateHorizon& horizon) {
  ordered_json out = ordered_json::array();
  for (const auto& [customer, stay] : solution.accepted)  // std::map: ascending ids
    out.push_back({{"bidid", customer.value}, {kArrivalKey, format_unpadded_date(horizon.date_at(stay.arrival))}});
  return out;
}

Service::Service(store::StoreHandle& store, ServiceOptions options) : store_(store), options_(options) {}

Reply Service::optimize_auction(std::int64_t id, ObjectiveMode mode) {
  const AuctionId auction_id{id};
  auto lock = store_.lock_auction(auction_id);
  const auto root = store_.snapshot();
  const auto it = root->forward_auctions.find(auction_id);
  if (it == root->forward_auctions.end()) return error_reply(404, "not_found", "unknown auction " + std::to_string(id));
  const store::AuctionRecord record = it->second;

  forward::SolveResult result;
  try {
    result = forward::solve_exact(forward::build_model(record.auction, record.bids, mode), options_.limits);
  } catch (const DomainError& e) {
    return error_reply(422, "invalid_auction", e.what(), e.details());
  }
  if (result.status == forward::SolveStatus::FeasibleWithGap && result.solution.accepted.empty() && !record.bids.empty()) {
    ordered_json doc{{"error", "solver_timeout"},
                     {"message", "no bid placed within the solver budget"},
                     {"best_bound", money_json(result.best_bound)},
                     {"nodes", result.nodes_explored}};
    return {503, doc.dump()};
  }

  store::StoredSolve stored{result.solution, forward::to_string(result.status), result.best_bound,
                            result.nodes_explored, result.wall_time.count()};
  try {
    store_.update([&](store::StoreRoot& next) {
      auto current = next.forward_auctions.find(auction_id);
      // Bids changed while solving: the result no longer describes the auction.
      if (current == next.forward_auctions.end() || current->second.bids != record.bids ||
          current->second.auction != record.auction)
        return;
      current->second.latest = stored;
    });
  } catch (const std::exception& e) {
    return error_reply(500, "store_failure", e.what());
  }
  return {200, accepted_entries(result.solution, record.auction.horizon).dump()};
}

Reply Service::get_auction(std::int64_t id) const {
  const auto root = store_.snapshot();
  const auto it = root->forward_auctions.find(AuctionId{id});
  if (it == root->forward_auctions.end()) return error_reply(404, "not_found", "unknown auction " + std::to_string(id));
  return {200, store::auction_to_json(it->second).dump()};
}

std::shared_ptr<const rules::Ruleset> Service::rules_for(const std::shared_ptr<const store::StoreRoot>& root) {
  std::lock_guard lock(rules_mutex_);
  if (rules_root_ != root) {
    rules_ = std::make_shared<const rules::Ruleset>(
        root->reverse_history.empty() ? rules::Ruleset{} : rules::mine_rules(root->reverse_history, options_.miner));
    rules_root_ = root;
  }
  return rules_;
}

Reply Service::reverse_estimate(const std::string& body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return error_reply(400, "bad_request", e.what());
  }
  if (!doc.is_object()) return error_reply(400, "bad_request", "body must be an object");
  const auto root = store_.snapshot();
  try {
    const auto pid = doc.find("profile_id");
    if (pid == doc.end() || !pid->is_string()) return error_reply(422, "invalid_request", "profile_id is required");
    const auto profile_it = root->hotel_profiles.find(pid->get<std::string>());
    if (profile_it == root->hotel_profiles.end())
      return error_reply(404, "not_found", "unknown hotel profile " + pid->get<std::string>());
    const rules::HotelProfile& profile = profile_it->second;
    if (root->reverse_history.empty()) return error_reply(422, "no_history", "no reverse auction history stored");

    const Money cost = doc.contains("cost") ? store::money_from_json(doc["cost"], "/cost") : profile.base_cost;
    const auto request = parse_assignment(doc.contains("request") ? doc["request"] : Json());
    const auto distribution = reverse::empirical_distribution(matching_prices(root->reverse_history, request));
    const auto mined = rules_for(root);
    const auto feasible = rules::filter_feasible(*mined, profile);

    rules::PriceEstimate estimate;
    try {
      estimate = rules::estimate_price(feasible, request, distribution, cost);
    } catch (const rules::RuleConflict& conflict) {
      ordered_json out{{"error", "conflict"},
                       {"message", conflict.what()},
                       {"lower", money_json(conflict.lower())},
                       {"upper", money_json(conflict.upper())},
                       {"lower_rules", rule_list(conflict.lower_rules())},
                       {"upper_rules", rule_list(conflict.upper_rules())}};
      return {409, out.dump()};
    }
    const auto offer = rules::select_offer(estimate.applicable, estimate.price, profile);
    const Fraction acceptance = distribution.survival(estimate.price);
    const Fraction expected = reverse::expected_profit_cents(distribution, cost, estimate.price);

    ordered_json out;
    out["price"] = money_json(estimate.price);
    out["source"] = estimate.fallback ? "distribution" : "rules";
    out["amenities"] = {{"breakfast_type", offer.breakfast_type ? ordered_json(*offer.breakfast_type) : ordered_json()}};
    out["amenity_cost"] = money_json(offer.amenity_cost);
    out["defaults"] = offer.defaults;
    out["selected_rule"] = offer.rule ? ordered_json(offer.rule->to_string()) : ordered_json();
    out["acceptance_probability"] = fraction_json(acceptance);
    out["expected_profit"] = money_json(Money::from_cents(expected.round()));
    out["abstain"] = expected <= Fraction(0, 1);
    out["cost"] = money_json(cost);
    out["applicable_rules"] = rule_list(estimate.applicable);
    return {200, out.dump()};
  } catch (const DomainError& e) {
    return error_reply(422, "invalid_request", e.what(), e.details());
  }
}

Reply Service::profit_curve(const std::multimap<std::string, std::string>& params) {
  const auto root = store_.snapshot();
  try {
    const auto cost_it = params.find("cost");
    if (cost_it == params.end()) return error_reply(422, "invalid_request", "cost parameter is required");
    const Money cost = parse_money_text(cost_it->second);
    rules::AttributeAssignment request;
    for (const auto& [key, value] : params) {
      if (key == "cost") continue;
      const auto attribute = rules::parse_attribute(key);
      if (!attribute) return error_reply(422, "invalid_request", "unknown parameter " + key);
      try {
        request[static_cast<std::size_t>(*attribute)] = std::stod(value);
      } catch (const std::exception&) {
        return error_reply(422, "invalid_request", key + " must be a number");
      }
    }
    if (root->reverse_history.empty()) return error_reply(422, "no_history", "no reverse auction history stored");
    const auto distribution = reverse::empirical_distribution(matching_prices(root->reverse_history, request));
    ordered_json points = ordered_json::array();
    for (const auto& p : reverse::profit_curve(distribution, cost))
      points.push_back({{"price", money_json(p.price)},
                        {"expected_profit", money_json(p.expected_profit)},
                        {"acceptance_probability", fraction_json(p.acceptance_probability)}});
    const auto best = reverse::optimize_price(distribution, cost);
    ordered_json out{{"cost", money_json(cost)},
                     {"points", points},
                     {"optimum",
                      {{"price", money_json(best.price)},
                       {"expected_profit", money_json(best.expected_profit)},
                       {"acceptance_probability", fraction_json(best.acceptance_probability)},
                       {"abstain", best.abstain}}}};
    return {200, out.dump()};
  } catch (const DomainError& e) {
    return error_reply(422, "invalid_request", e.what(), e.details());
  }
}

void Service::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  };
  auto parse_id = [](const std::string& text) -> std::optional<std::int64_t> {
    try {
      std::size_t used = 0;
      const auto id = std::stoll(text, &used);
      if (used == text.size()) return id;
    } catch (const std::exception&) {
    }
    return std::nullopt;
  };
  auto objective = [](const httplib::Request& req) {
    return req.has_param("objective") ? parse_objective_mode(req.get_param_value("objective")) : ObjectiveMode::Income;
  };
  auto optimize = [this, send, parse_id, objective](const httplib::Request& req, httplib::Response& res) {
    const auto id = parse_id(req.path_params.at("id"));
    if (!id) return send(res, error_reply(400, "bad_request", "auction id must be an integer"));
    try {
      send(res, optimize_auction(*id, objective(req)));
    } catch (const DomainError& e) {
      send(res, error_reply(400, "bad_request", e.what()));
    }
  };
  server.Get("/api/optimize_auction/:id", optimize);
  server.Post("/api/auctions/:id/optimize", optimize);
  server.Get("/api/auctions/:id", [this, send, parse_id](const httplib::Request& req, httplib::Response& res) {
    const auto id = parse_id(req.path_params.at("id"));
    if (!id) return send(res, error_reply(400, "bad_request", "auction id must be an integer"));
    send(res, get_auction(*id));
  });
  server.Post("/api/reverse/estimate", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, reverse_estimate(req.body));
  });
  server.Get("/api/reverse/profit_curve", [this, send](const httplib::Request& req, httplib::Response& res) {
    std::multimap<std::string, std::string> params(req.params.begin(), req.params.end());
    send(res, profit_curve(params));
  });
  server.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      send(res, error_reply(500, "internal_error", e.what()));
    }
  });
}

bool serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  service.mount(server);
  return server.listen(host, port);
}

}  // namespace hotelauction::service
