#include "hotelauction/rules/records.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hotelauction/core/errors.hpp"

namespace hotelauction::rules {
namespace {

constexpr std::array<std::string_view, kAttributeCount> kNames{
    "period_visiting", "hotel_rating", "distance_to_sea", "beds_requested", "breakfast_type", "sites_within_10km"};
constexpr std::string_view kPriceColumn = "accepted_price";

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

// Tab separated; comma separated files are accepted when a line has no tab.
std::vector<std::string> split_fields(const std::string& line) {
  const char sep = line.find('\t') != std::string::npos ? '\t' : ',';
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(sep, start);
    fields.push_back(trim(std::string_view(line).substr(start, end == std::string::npos ? end : end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return fields;
}

bool blank(const std::string& line) { return trim(line).empty(); }

std::string where(int line_number) { return "line " + std::to_string(line_number); }

double parse_number(const std::string& text, int line_number, std::string_view column) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value))
    throw DomainError(where(line_number) + ": " + std::string(column) + " is not a number: '" + text + "'");
  return value;
}

Money parse_price(const std::string& text, int line_number) {
  const auto price = Money::parse(text);
  if (!price) throw DomainError(where(line_number) + ": accepted_price is not an amount: '" + text + "'");
  return *price;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return in;
}

}  // namespace

std::string_view attribute_name(Attribute attribute) { return kNames[static_cast<std::size_t>(attribute)]; }

std::optional<Attribute> parse_attribute(std::string_view name) {
  for (Attribute a : kAttributes)
    if (attribute_name(a) == name) return a;
  return std::nullopt;
}

bool is_categorical(Attribute attribute) {
  return attribute == Attribute::PeriodVisiting || attribute == Attribute::BreakfastType;
}

AttributeDomain attribute_domain(Attribute attribute) {
  switch (attribute) {
    case Attribute::PeriodVisiting: return {1, 3, true};
    case Attribute::HotelRating: return {1, 5, false};
    case Attribute::DistanceToSea: return {0, 10000, false};
    case Attribute::BedsRequested: return {1, 3, true};
    case Attribute::BreakfastType: return {0, 2, true};
    case Attribute::SitesWithin10km: return {0, 10, true};
  }
  return {0, 0, true};
}

double OfferRecord::value(Attribute attribute) const {
  switch (attribute) {
    case Attribute::PeriodVisiting: return period_visiting;
    case Attribute::HotelRating: return hotel_rating;
    case Attribute::DistanceToSea: return distance_to_sea;
    case Attribute::BedsRequested: return beds_requested;
    case Attribute::BreakfastType: return breakfast_type;
    case Attribute::SitesWithin10km: return sites_within_10km;
  }
  return 0;
}

void OfferRecord::set(Attribute attribute, double value) {
  switch (attribute) {
    case Attribute::PeriodVisiting: period_visiting = static_cast<int>(value); break;
    case Attribute::HotelRating: hotel_rating = value; break;
    case Attribute::DistanceToSea: distance_to_sea = value; break;
    case Attribute::BedsRequested: beds_requested = static_cast<int>(value); break;
    case Attribute::BreakfastType: breakfast_type = static_cast<int>(value); break;
    case Attribute::SitesWithin10km: sites_within_10km = static_cast<int>(value); break;
  }
}

std::vector<std::string> record_issues(const OfferRecord& record) {
  std::vector<std::string> issues;
  for (Attribute a : kAttributes) {
    const AttributeDomain domain = attribute_domain(a);
    const double v = record.value(a);
    if (v < domain.low || v > domain.high)
      issues.push_back(std::string(attribute_name(a)) + " outside [" + std::to_string(static_cast<int>(domain.low)) +
                       "," + std::to_string(static_cast<int>(domain.high)) + "]");
  }
  if (record.accepted_price < Money::from_euros(10) || record.accepted_price > Money::from_euros(250))
    issues.push_back("accepted_price " + record.accepted_price.to_string() + " outside [10,250]");
  return issues;
}

AttributeAssignment assignment_of(const OfferRecord& record) {
  AttributeAssignment assignment;
  for (Attribute a : kAttributes) assignment[static_cast<std::size_t>(a)] = record.value(a);
  return assignment;
}

std::vector<OfferRecord> read_dataset(std::istream& in) {
  std::string line;
  int line_number = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_number;
    if (!blank(line)) header = split_fields(line);
  }
  if (header.empty()) throw DomainError("dataset has no header row");
  if (header.size() != kAttributeCount + 1) throw DomainError(where(line_number) + ": expected 7 columns in header");
  for (std::size_t i = 0; i < kAttributeCount; ++i)
    if (header[i] != kNames[i])
      throw DomainError(where(line_number) + ": column " + std::to_string(i + 1) + " should be " + std::string(kNames[i]));
  if (header.back() != kPriceColumn) throw DomainError(where(line_number) + ": column 7 should be accepted_price");

  std::vector<OfferRecord> records;
  while (std::getline(in, line)) {
    ++line_number;
    if (blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != kAttributeCount + 1)
      throw DomainError(where(line_number) + ": expected 7 columns, got " + std::to_string(fields.size()));
    OfferRecord record;
    for (std::size_t i = 0; i < kAttributeCount; ++i) {
      const double v = parse_number(fields[i], line_number, kNames[i]);
      const Attribute a = kAttributes[i];
      if (attribute_domain(a).integral && v != std::floor(v))
        throw DomainError(where(line_number) + ": " + std::string(kNames[i]) + " must be a whole number");
      record.set(a, v);
    }
    record.accepted_price = parse_price(fields.back(), line_number);
    if (auto issues = record_issues(record); !issues.empty())
      throw DomainError(where(line_number) + ": record out of domain", std::move(issues));
    records.push_back(record);
  }
  return records;
}

std::vector<OfferRecord> read_dataset_file(const std::string& path) {
  auto in = open(path);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const std::vector<OfferRecord>& records) {
  for (std::size_t i = 0; i < kAttributeCount; ++i) out << kNames[i] << '\t';
  out << kPriceColumn << '\n';
  for (const auto& r : records) {
    std::ostringstream distance, rating;
    rating << r.hotel_rating;
    distance << r.distance_to_sea;
    out << r.period_visiting << '\t' << rating.str() << '\t' << distance.str() << '\t' << r.beds_requested << '\t'
        << r.breakfast_type << '\t' << r.sites_within_10km << '\t' << r.accepted_price.to_string() << '\n';
  }
}

std::vector<Money> read_price_column(std::istream& in) {
  std::string line;
  int line_number = 0;
  std::optional<std::size_t> column;
  std::vector<Money> prices;
  while (std::getline(in, line)) {
    ++line_number;
    if (blank(line)) continue;
    const auto fields = split_fields(line);
    if (!column) {
      column = 0;
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == kPriceColumn) column = i;
      // A headerless single column starts with a price.
      if (Money::parse(fields[*column])) prices.push_back(*Money::parse(fields[*column]));
      continue;
    }
    if (*column >= fields.size()) throw DomainError(where(line_number) + ": missing price column");
    prices.push_back(parse_price(fields[*column], line_number));
  }
  return prices;
}

std::vector<Money> read_price_column_file(const std::string& path) {
  auto in = open(path);
  return read_price_column(in);
}

}  // namespace hotelauction::rules
