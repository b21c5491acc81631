#include "hotelauction/store/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "hotelauction/core/validation.hpp"
#include "hotelauction/forward/model.hpp"
#include "hotelauction/forward/solution_validator.hpp"

namespace hotelauction::store {
namespace {

std::string auction_label(AuctionId id) { return "auction " + std::to_string(id.value); }

void check_auction(const AuctionRecord& record, std::vector<std::string>& issues) {
  const std::string label = auction_label(record.id);
  const auto auction_issues = validate_auction(record.auction);
  for (const auto& issue : auction_issues) issues.push_back(label + ": " + issue);
  if (!auction_issues.empty()) return;
  bool bids_ok = true;
  std::map<CustomerId, int> seen;
  for (const auto& bid : record.bids) {
    if (++seen[bid.customer_id] == 2) {
      issues.push_back(label + ": customer " + std::to_string(bid.customer_id.value) + " has more than one bid");
      bids_ok = false;
    }
    for (const auto& v : validate_bid(bid, record.auction)) {
      issues.push_back(label + ", customer " + std::to_string(v.customer.value) + ": " + v.message);
      bids_ok = false;
    }
  }
  if (!record.latest || !bids_ok) return;
  const auto model = forward::build_model(record.auction, record.bids, record.latest->solution.objective_mode);
  for (const auto& v : forward::validate_solution(model, record.latest->solution))
    issues.push_back(label + ", stored result: " + v.message);
}

[[noreturn]] void io_failure(const std::string& what, const std::filesystem::path& path) {
  throw DomainError(what + " " + path.string() + ": " + std::strerror(errno));
}

std::filesystem::path temp_name(const std::filesystem::path& path) {
  static std::atomic<std::uint64_t> counter{0};
  std::ostringstream name;
  name << '.' << path.filename().string() << ".tmp." << ::getpid() << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id())
       << '.' << counter++;
  return path.parent_path() / name.str();
}

}  // namespace

void validate_root(const StoreRoot& root) {
  std::vector<std::string> issues;
  for (const auto& [id, record] : root.forward_auctions) {
    if (record.id != id) issues.push_back(auction_label(id) + ": key does not match record id");
    check_auction(record, issues);
  }
  for (std::size_t i = 0; i < root.reverse_history.size(); ++i)
    for (const auto& issue : rules::record_issues(root.reverse_history[i]))
      issues.push_back("reverse_history " + std::to_string(i) + ": " + issue);
  for (const auto& [id, profile] : root.hotel_profiles) {
    if (profile.id != id) issues.push_back("hotel profile " + id + ": key does not match profile id");
    for (const auto& issue : rules::profile_issues(profile)) issues.push_back("hotel profile " + id + ": " + issue);
  }
  if (!issues.empty()) throw DomainError("store validation failed", std::move(issues));
}

Json root_to_json(const StoreRoot& root) {
  Json auctions = Json::array();
  for (const auto& [id, record] : root.forward_auctions) auctions.push_back(auction_to_json(record));
  Json history = Json::array();
  for (const auto& r : root.reverse_history) history.push_back(record_to_json(r));
  Json profiles = Json::array();
  for (const auto& [id, p] : root.hotel_profiles) profiles.push_back(profile_to_json(p));
  return Json{{"schema_version", kSchemaVersion},
              {"forward_auctions", auctions},
              {"reverse_history", history},
              {"hotel_profiles", profiles}};
}

StoreRoot root_from_json(const Json& document) {
  if (!document.is_object()) throw ParseError("/: expected object");
  if (auto it = document.find("schema_version"); it != document.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() != kSchemaVersion)
      throw ParseError("/schema_version: unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  StoreRoot root;
  auto list = [&](const char* key) -> const Json* {
    auto it = document.find(key);
    if (it == document.end() || it->is_null()) return nullptr;
    if (!it->is_array()) throw ParseError(std::string("/") + key + ": expected array");
    return &*it;
  };
  if (const Json* auctions = list("forward_auctions")) {
    for (std::size_t i = 0; i < auctions->size(); ++i) {
      auto record = auction_from_json((*auctions)[i], "/forward_auctions/" + std::to_string(i));
      const AuctionId id = record.id;
      if (!root.forward_auctions.emplace(id, std::move(record)).second)
        throw ParseError("/forward_auctions/" + std::to_string(i) + "/id: duplicate auction id " + std::to_string(id.value));
    }
  }
  if (const Json* history = list("reverse_history"))
    for (std::size_t i = 0; i < history->size(); ++i)
      root.reverse_history.push_back(record_from_json((*history)[i], "/reverse_history/" + std::to_string(i)));
  if (const Json* profiles = list("hotel_profiles")) {
    for (std::size_t i = 0; i < profiles->size(); ++i) {
      auto profile = profile_from_json((*profiles)[i], "/hotel_profiles/" + std::to_string(i));
      const std::string id = profile.id;
      if (!root.hotel_profiles.emplace(id, std::move(profile)).second)
        throw ParseError("/hotel_profiles/" + std::to_string(i) + "/id: duplicate profile id " + id);
    }
  }
  validate_root(root);
  return root;
}

StoreRoot load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open store " + path.string());
  Json document;
  try {
    document = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return root_from_json(document);
}

std::filesystem::path stage(const StoreRoot& root, const std::filesystem::path& path) {
  validate_root(root);
  const std::string body = root_to_json(root).dump(2) + "\n";
  const auto temp = temp_name(path);
  const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
  if (fd < 0) io_failure("cannot create", temp);
  std::size_t written = 0;
  while (written < body.size()) {
    const auto n = ::write(fd, body.data() + written, body.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      std::filesystem::remove(temp);
      io_failure("cannot write", temp);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    std::filesystem::remove(temp);
    io_failure("cannot flush", temp);
  }
  return temp;
}

void commit(const std::filesystem::path& staged, const std::filesystem::path& path) {
  if (std::rename(staged.c_str(), path.c_str()) != 0) {
    std::error_code ignored;
    std::filesystem::remove(staged, ignored);
    io_failure("cannot replace", path);
  }
  const auto dir = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
  if (const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC); fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

void save(const StoreRoot& root, const std::filesystem::path& path) { commit(stage(root, path), path); }

StoreHandle::StoreHandle(std::filesystem::path path)
    : path_(std::move(path)),
      current_(std::make_shared<const StoreRoot>(std::filesystem::exists(path_) ? load(path_) : StoreRoot{})) {}

StoreHandle::StoreHandle(std::filesystem::path path, StoreRoot initial)
    : path_(std::move(path)), current_(std::make_shared<const StoreRoot>(std::move(initial))) {}

std::shared_ptr<const StoreRoot> StoreHandle::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void StoreHandle::update(const std::function<void(StoreRoot&)>& change) {
  std::lock_guard writer(writer_mutex_);
  auto next = std::make_shared<StoreRoot>(*snapshot());
  change(*next);
  save(*next, path_);
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(next);
}

std::unique_lock<std::mutex> StoreHandle::lock_auction(AuctionId id) {
  std::mutex* m = nullptr;
  {
    std::lock_guard lock(auction_locks_mutex_);
    auto& slot = auction_locks_[id];
    if (!slot) slot = std::make_unique<std::mutex>();
    m = slot.get();
  }
  return std::unique_lock(*m);
}

}  // namespace hotelauction::store
