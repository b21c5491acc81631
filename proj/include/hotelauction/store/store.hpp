#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hotelauction/store/codec.hpp"

namespace hotelauction::store {

inline constexpr int kSchemaVersion = 1;

struct StoreRoot {
  std::map<AuctionId, AuctionRecord> forward_auctions;
  std::vector<rules::OfferRecord> reverse_history;
  std::map<std::string, rules::HotelProfile> hotel_profiles;

  friend bool operator==(const StoreRoot&, const StoreRoot&) = default;
};

// Content checks: every auction and bid is admissible, every stored result
// validates against its auction, history records and profiles are in domain.
// Throws DomainError whose details list each offender.
void validate_root(const StoreRoot& root);

Json root_to_json(const StoreRoot& root);
// Parses and validates. Errors name the JSON pointer of the bad value.
StoreRoot root_from_json(const Json& document);

// A missing file is an error; an empty document "{}" is an empty store.
StoreRoot load(const std::filesystem::path& path);

// Writes to a unique temporary file beside `path`, flushes it to disk and
// renames it over `path`. On failure the previous file is left untouched.
void save(const StoreRoot& root, const std::filesystem::path& path);

// The two halves of save(), exposed so tests can stop between them.
std::filesystem::path stage(const StoreRoot& root, const std::filesystem::path& path);
void commit(const std::filesystem::path& staged, const std::filesystem::path& path);

// Shared access for the service: readers take immutable snapshots, writers
// are serialized and publish a new snapshot only after the file is replaced.
class StoreHandle {
 public:
  // Loads `path`, or starts empty when the file does not exist yet.
  explicit StoreHandle(std::filesystem::path path);
  StoreHandle(std::filesystem::path path, StoreRoot initial);

  std::shared_ptr<const StoreRoot> snapshot() const;

  // Applies `change` to a copy of the current root, validates, saves and
  // publishes it. Nothing changes when `change` or the save throws.
  void update(const std::function<void(StoreRoot&)>& change);

  // Lock that serializes work on one auction (e.g. concurrent optimize calls).
  std::unique_lock<std::mutex> lock_auction(AuctionId id);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const StoreRoot> current_;
  std::mutex writer_mutex_;
  std::mutex auction_locks_mutex_;
  std::map<AuctionId, std::unique_ptr<std::mutex>> auction_locks_;
};

}  // namespace hotelauction::store
