#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "hotelauction/forward/solvers.hpp"
#include "hotelauction/rules/miner.hpp"
#include "hotelauction/store/store.hpp"

namespace httplib {
class Server;
}

namespace hotelauction::service {

struct Reply {
  int status = 200;
  std::string body;  // JSON text
};

struct ServiceOptions {
  forward::SolveLimits limits;
  rules::MinerConfig miner;
};

// Accepted bids in the forward auction response format, ascending by bid id:
// [{"bidid":1,"arrival-date (YYYY-mm-dd)":"2023-6-2"}, ...]. Bid ids are
// customer ids; dates are not zero padded.
nlohmann::ordered_json accepted_entries(const ClearingSolution& solution, const DateHorizon& horizon);

class Service {
 public:
  Service(store::StoreHandle& store, ServiceOptions options = {});

  // GET /api/optimize_auction/{id}: solves auction `id`, stores the result,
  // returns the accepted list. 404 for an unknown id; 503 with the bound when
  // the budget ran out before any bid could be placed.
  Reply optimize_auction(std::int64_t id, ObjectiveMode mode = ObjectiveMode::Income);

  // GET /api/auctions/{id}: the stored auction document, bids and latest result.
  Reply get_auction(std::int64_t id) const;

  // POST /api/reverse/estimate. Body:
  //   {"profile_id": "...", "cost": <money>?, "request": {<attribute>: <value>, ...}}
  // Cost defaults to the profile's base cost. Rules are mined from the stored
  // history; the fallback distribution uses the history records whose
  // characteristics equal every assigned request value, or the whole history
  // when none do. 404 unknown profile, 409 rule conflict, 422 bad input.
  Reply reverse_estimate(const std::string& body);

  // GET /api/reverse/profit_curve?cost=...: expected profit at every breakpoint
  // and midpoint of the history distribution, plus the optimum. Optional
  // attribute parameters narrow the history by exact match as above.
  Reply profit_curve(const std::multimap<std::string, std::string>& params);

  // Registers every route on `server`.
  void mount(httplib::Server& server);

 private:
  std::shared_ptr<const rules::Ruleset> rules_for(const std::shared_ptr<const store::StoreRoot>& root);

  store::StoreHandle& store_;
  ServiceOptions options_;
  std::mutex rules_mutex_;
  std::shared_ptr<const store::StoreRoot> rules_root_;
  std::shared_ptr<const rules::Ruleset> rules_;
};

// Serves until the process is stopped. Returns false when the port cannot be bound.
bool serve(Service& service, const std::string& host, int port);

}  // namespace hotelauction::service
