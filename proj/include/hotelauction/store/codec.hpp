#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hotelauction/core/errors.hpp"
#include "hotelauction/core/types.hpp"
#include "hotelauction/rules/estimator.hpp"
#include "hotelauction/rules/records.hpp"

namespace hotelauction::store {

using Json = nlohmann::json;

// Thrown for malformed documents. what() starts with the JSON pointer of the
// offending value, e.g. "/forward_auctions/0/bids/2/nights: expected integer".
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Latest clearing stored with an auction.
struct StoredSolve {
  ClearingSolution solution;
  std::string status;  // "optimal", "feasible_with_gap", ...
  Money best_bound;
  std::uint64_t nodes = 0;
  double wall_seconds = 0;

  friend bool operator==(const StoredSolve&, const StoredSolve&) = default;
};

struct AuctionRecord {
  AuctionId id;
  ForwardAuction auction;
  std::vector<Bid> bids;  // submission order
  std::optional<StoredSolve> latest;

  friend bool operator==(const AuctionRecord&, const AuctionRecord&) = default;
};

// Money as {"cents": 6500, "currency": "EUR"}; a bare number is read as euros.
Json money_to_json(Money money);
Money money_from_json(const Json& value, const std::string& where);

// Auction document: horizon, room types, optional groups (one group per room
// type when omitted), bids with ISO dates. `id` defaults to 1 when absent.
Json auction_to_json(const AuctionRecord& record);
AuctionRecord auction_from_json(const Json& value, const std::string& where = "");

Json solve_to_json(const StoredSolve& solve, const DateHorizon& horizon);
StoredSolve solve_from_json(const Json& value, const DateHorizon& horizon, const std::string& where);

Json record_to_json(const rules::OfferRecord& record);
rules::OfferRecord record_from_json(const Json& value, const std::string& where);

Json profile_to_json(const rules::HotelProfile& profile);
rules::HotelProfile profile_from_json(const Json& value, const std::string& where);

// Reads an auction document from a file (the CLI instance format).
AuctionRecord read_auction_file(const std::string& path);

}  // namespace hotelauction::store
