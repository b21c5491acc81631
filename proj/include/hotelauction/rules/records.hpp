#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hotelauction/core/money.hpp"

namespace hotelauction::rules {

// The six request characteristics, in dataset column order.
enum class Attribute { PeriodVisiting, HotelRating, DistanceToSea, BedsRequested, BreakfastType, SitesWithin10km };

inline constexpr std::size_t kAttributeCount = 6;
inline constexpr std::array<Attribute, kAttributeCount> kAttributes{
    Attribute::PeriodVisiting, Attribute::HotelRating,   Attribute::DistanceToSea,
    Attribute::BedsRequested,  Attribute::BreakfastType, Attribute::SitesWithin10km};

// Column name in dataset files, e.g. "distance_to_sea".
std::string_view attribute_name(Attribute attribute);
std::optional<Attribute> parse_attribute(std::string_view name);
// Period and breakfast are matched by equality, the rest by interval.
bool is_categorical(Attribute attribute);

struct AttributeDomain {
  double low;
  double high;
  bool integral;
};
AttributeDomain attribute_domain(Attribute attribute);

enum Breakfast { kNoBreakfast = 0, kContinental = 1, kAmerican = 2 };

struct OfferRecord {
  int period_visiting = 1;  // 1 low, 2 intermediate, 3 high season
  double hotel_rating = 1;
  double distance_to_sea = 0;  // meters
  int beds_requested = 1;
  int breakfast_type = kNoBreakfast;
  int sites_within_10km = 0;
  Money accepted_price;  // per night

  double value(Attribute attribute) const;
  void set(Attribute attribute, double value);

  friend bool operator==(const OfferRecord&, const OfferRecord&) = default;
};

inline constexpr double kMinAcceptedPrice = 10;
inline constexpr double kMaxAcceptedPrice = 250;

// One message per out-of-domain field; empty when the record is valid.
std::vector<std::string> record_issues(const OfferRecord& record);

// A (possibly partial) assignment of the six characteristics, as carried by
// a reverse-auction request.
using AttributeAssignment = std::array<std::optional<double>, kAttributeCount>;

AttributeAssignment assignment_of(const OfferRecord& record);

// Tab-separated, header row first, columns in OfferRecord field order.
// Throws DomainError naming the line on malformed or out-of-domain rows.
std::vector<OfferRecord> read_dataset(std::istream& in);
std::vector<OfferRecord> read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const std::vector<OfferRecord>& records);

// Accepted prices from a tabular file: the "accepted_price" column when the
// header has one, otherwise the first column.
std::vector<Money> read_price_column(std::istream& in);
std::vector<Money> read_price_column_file(const std::string& path);

}  // namespace hotelauction::rules
