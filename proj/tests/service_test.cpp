#include <gtest/gtest.h>

#include <httplib.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "hotelauction/service/service.hpp"
#include "hotelauction/store/codec.hpp"
#include "support/datasets.hpp"
#include "support/fixtures.hpp"

using namespace hotelauction;
using namespace hotelauction::service;
using hotelauction::testing::fixture_path;
using hotelauction::testing::offer;
using hotelauction::testing::price_sample_prices;
using Json = nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("hotelauction_service_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

rules::HotelProfile profile(std::string id, double rating, double distance, Money base_cost,
                            std::map<int, Money> breakfasts = {{rules::kNoBreakfast, Money{}}}) {
  rules::HotelProfile p;
  p.id = std::move(id);
  p.hotel_rating = rating;
  p.distance_to_sea = distance;
  p.breakfast_costs = std::move(breakfasts);
  p.base_cost = base_cost;
  return p;
}

// History whose prices are the sample price column. A request with values outside
// every observed characteristic matches no rule and no record exactly.
store::StoreRoot price_sample_root() {
  store::StoreRoot root;
  const auto prices = price_sample_prices();
  for (std::size_t i = 0; i < prices.size(); ++i) {
    auto r = offer(2, 3 + static_cast<double>(i % 3), 10 + 10 * static_cast<double>(i), 2, rules::kContinental,
                   5 + static_cast<int>(i % 4), 0);
    r.accepted_price = prices[i];
    root.reverse_history.push_back(r);
  }
  root.hotel_profiles["plain"] = profile("plain", 3, 100, Money::from_euros(10));
  return root;
}

const char* kUnmatchedRequest =
    R"({"period_visiting":1,"hotel_rating":1,"distance_to_sea":9000,"beds_requested":1,"breakfast_type":0,"sites_within_10km":0})";

std::string estimate_body(const std::string& profile_id, const std::string& request, const std::string& cost = "") {
  std::string body = R"({"profile_id":")" + profile_id + R"(","request":)" + request;
  if (!cost.empty()) body += R"(,"cost":)" + cost;
  return body + "}";
}

struct Harness {
  explicit Harness(store::StoreRoot root, ServiceOptions options = {})
      : handle(scratch("store.json"), std::move(root)), service(handle, options) {}
  store::StoreHandle handle;
  Service service;
};

}  // namespace

TEST(AcceptedEntries, FormatsBidIdsAndUnpaddedDates) {
  ClearingSolution s;
  s.accepted[CustomerId{3}] = {11, 12};
  s.accepted[CustomerId{1}] = {2, 4};
  const DateHorizon h(hotelauction::testing::ymd(2023, 6, 1), 15);
  EXPECT_EQ(accepted_entries(s, h).dump(),
            R"json([{"bidid":1,"arrival-date (YYYY-mm-dd)":"2023-6-2"},{"bidid":3,"arrival-date (YYYY-mm-dd)":"2023-6-11"}])json");
  EXPECT_EQ(accepted_entries(ClearingSolution{}, h).dump(), "[]");
}

TEST(OptimizeAuction, ThreeBidFixtureMatchesGolden) {
  Harness h(store::load(fixture_path("store_three_bid.json")));
  const auto reply = h.service.optimize_auction(1);
  EXPECT_EQ(reply.status, 200);
  EXPECT_EQ(reply.body, slurp(fixture_path("golden_optimize_1.json")));
}

TEST(OptimizeAuction, PersistsTheResultAndIsIdempotent) {
  Harness h(store::load(fixture_path("store_three_bid.json")));
  const auto first = h.service.optimize_auction(1);
  const auto second = h.service.optimize_auction(1);
  EXPECT_EQ(first.body, second.body);
  const auto& latest = h.handle.snapshot()->forward_auctions.at(AuctionId{1}).latest;
  ASSERT_TRUE(latest);
  EXPECT_EQ(latest->status, "optimal");
  EXPECT_EQ(latest->solution.objective, Money::from_euros(1215));
  const auto reloaded = store::load(h.handle.path());
  EXPECT_EQ(reloaded.forward_auctions.at(AuctionId{1}).latest->solution, latest->solution);

  const auto doc = Json::parse(h.service.get_auction(1).body);
  EXPECT_EQ(doc["latest_result"]["accepted"].size(), 3u);
  EXPECT_EQ(doc["latest_result"]["objective"]["cents"], 121500);
}

TEST(OptimizeAuction, EmptyAndSingleBidAuctions) {
  store::StoreRoot root;
  auto empty = store::read_auction_file(fixture_path("empty_auction.json"));
  root.forward_auctions.emplace(empty.id, empty);
  auto single = empty;
  single.id = AuctionId{3};
  single.bids.push_back(hotelauction::testing::make_bid(9, 1, Money::from_euros(60), 2, 6, 3));
  root.forward_auctions.emplace(single.id, single);
  Harness h(root);
  EXPECT_EQ(h.service.optimize_auction(2).body, "[]");
  EXPECT_EQ(h.service.optimize_auction(3).body, R"json([{"bidid":9,"arrival-date (YYYY-mm-dd)":"2023-6-2"}])json");
}

TEST(OptimizeAuction, UnknownIdIsNotFound) {
  Harness h(store::load(fixture_path("store_three_bid.json")));
  const auto reply = h.service.optimize_auction(42);
  EXPECT_EQ(reply.status, 404);
  EXPECT_EQ(Json::parse(reply.body)["error"], "not_found");
  EXPECT_EQ(h.service.get_auction(42).status, 404);
}

TEST(OptimizeAuction, ProfitObjectiveIsStored) {
  Harness h(store::load(fixture_path("store_three_bid.json")));
  EXPECT_EQ(h.service.optimize_auction(1, ObjectiveMode::Profit).status, 200);
  EXPECT_EQ(h.handle.snapshot()->forward_auctions.at(AuctionId{1}).latest->solution.objective_mode,
            ObjectiveMode::Profit);
}

TEST(ReverseEstimate, FallsBackToTheHistoryOptimum) {
  Harness h(price_sample_root());
  const auto reply = h.service.reverse_estimate(estimate_body("plain", kUnmatchedRequest));
  ASSERT_EQ(reply.status, 200) << reply.body;
  const auto doc = Json::parse(reply.body);
  EXPECT_EQ(doc["price"]["cents"], 4000);
  EXPECT_EQ(doc["expected_profit"]["cents"], 2700);
  EXPECT_EQ(doc["source"], "distribution");
  EXPECT_EQ(doc["acceptance_probability"]["numerator"], 9);
  EXPECT_EQ(doc["acceptance_probability"]["denominator"], 10);
  EXPECT_EQ(doc["abstain"], false);
  EXPECT_EQ(doc["defaults"], true);
  EXPECT_TRUE(doc["applicable_rules"].empty());
}

TEST(ReverseEstimate, AbstainsWhenCostExceedsEveryPrice) {
  Harness h(price_sample_root());
  const auto reply = h.service.reverse_estimate(estimate_body("plain", kUnmatchedRequest, "60"));
  ASSERT_EQ(reply.status, 200) << reply.body;
  const auto doc = Json::parse(reply.body);
  EXPECT_EQ(doc["abstain"], true);
  EXPECT_LE(doc["expected_profit"]["cents"].get<std::int64_t>(), 0);
  EXPECT_EQ(doc["cost"]["cents"], 6000);
}

TEST(ReverseEstimate, UsesTheMinedBeachRule) {
  store::StoreRoot root;
  root.reverse_history = hotelauction::testing::beach_pattern_dataset();
  root.hotel_profiles["seaside"] =
      profile("seaside", 3, 10, Money::from_euros(20),
              {{rules::kNoBreakfast, Money{}}, {rules::kContinental, Money::from_euros(3)}});
  ServiceOptions options;
  options.miner = {0.15, 1.0, 3, 3};
  Harness h(root, options);
  const auto reply = h.service.reverse_estimate(
      estimate_body("seaside", R"({"distance_to_sea":10,"breakfast_type":1,"sites_within_10km":2})"));
  ASSERT_EQ(reply.status, 200) << reply.body;
  const auto doc = Json::parse(reply.body);
  EXPECT_EQ(doc["price"]["cents"], 7500);
  EXPECT_EQ(doc["source"], "rules");
  bool echoed = false;
  for (const auto& r : doc["applicable_rules"])
    echoed = echoed || r.get<std::string>().starts_with(
                           "distance_to_sea ∈ [5,25] ∧ breakfast_type = 1 ∧ sites_within_10km ∈ [1,3] → p ≥ 75");
  EXPECT_TRUE(echoed) << reply.body;
}

TEST(ReverseEstimate, ConflictingRulesAreReported) {
  store::StoreRoot root;
  for (int p : {100, 104, 108, 110}) root.reverse_history.push_back(offer(2, 5, 500, 2, 0, 4, p));
  for (int p : {40, 44, 48, 50}) root.reverse_history.push_back(offer(2, 1, 5, 2, 0, 4, p));
  for (int p : {70, 72}) root.reverse_history.push_back(offer(2, 3, 200, 2, 0, 4, p));
  root.hotel_profiles["odd"] = profile("odd", 5, 5, Money::from_euros(10));
  Harness h(root);
  const auto reply = h.service.reverse_estimate(estimate_body("odd", R"({"hotel_rating":5,"distance_to_sea":5})"));
  ASSERT_EQ(reply.status, 409) << reply.body;
  const auto doc = Json::parse(reply.body);
  EXPECT_EQ(doc["lower"]["cents"], 10000);
  EXPECT_EQ(doc["upper"]["cents"], 5000);
  EXPECT_FALSE(doc["lower_rules"].empty());
  EXPECT_FALSE(doc["upper_rules"].empty());
}

TEST(ReverseEstimate, RejectsBadRequests) {
  Harness h(price_sample_root());
  EXPECT_EQ(h.service.reverse_estimate(estimate_body("nobody", "{}")).status, 404);
  EXPECT_EQ(h.service.reverse_estimate("{not json").status, 400);
  EXPECT_EQ(h.service.reverse_estimate(R"({"request":{}})").status, 422);
  EXPECT_EQ(h.service.reverse_estimate(estimate_body("plain", R"({"colour":3})")).status, 422);
  Harness empty(store::StoreRoot{{}, {}, {{"plain", profile("plain", 3, 0, Money{})}}});
  EXPECT_EQ(empty.service.reverse_estimate(estimate_body("plain", "{}")).status, 422);
}

TEST(ProfitCurve, PeaksAtTheOptimum) {
  Harness h(price_sample_root());
  const auto reply = h.service.profit_curve({{"cost", "10"}});
  ASSERT_EQ(reply.status, 200) << reply.body;
  const auto doc = Json::parse(reply.body);
  EXPECT_EQ(doc["points"].size(), 9u);
  EXPECT_EQ(doc["optimum"]["price"]["cents"], 4000);
  EXPECT_EQ(doc["optimum"]["expected_profit"]["cents"], 2700);
  EXPECT_EQ(h.service.profit_curve({}).status, 422);
  EXPECT_EQ(h.service.profit_curve({{"cost", "10"}, {"colour", "1"}}).status, 422);
  const auto narrowed = Json::parse(h.service.profit_curve({{"cost", "10"}, {"distance_to_sea", "10"}}).body);
  EXPECT_EQ(narrowed["points"].size(), 1u);
}

TEST(Http, ServesTheGoldenResponse) {
  store::StoreHandle handle(scratch("store.json"), store::load(fixture_path("store_three_bid.json")));
  Service service(handle);
  httplib::Server server;
  service.mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto res = client.Get("/api/optimize_auction/1");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(res->body, slurp(fixture_path("golden_optimize_1.json")));

  const auto again = client.Post("/api/auctions/1/optimize", "", "application/json");
  ASSERT_TRUE(again);
  EXPECT_EQ(again->body, res->body);

  const auto missing = client.Get("/api/optimize_auction/7");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  const auto bad_id = client.Get("/api/optimize_auction/abc");
  ASSERT_TRUE(bad_id);
  EXPECT_EQ(bad_id->status, 400);
  const auto bad_objective = client.Get("/api/optimize_auction/1?objective=revenue");
  ASSERT_TRUE(bad_objective);
  EXPECT_EQ(bad_objective->status, 400);

  const auto stored = client.Get("/api/auctions/1");
  ASSERT_TRUE(stored);
  EXPECT_EQ(Json::parse(stored->body)["latest_result"]["status"], "optimal");

  server.stop();
  worker.join();
}
