#include "hotelauction/rules/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "hotelauction/core/errors.hpp"

namespace hotelauction::rules {
namespace {

constexpr std::array<double, 4> kPeriodPremium{0, 0, 20, 45};
constexpr std::array<double, 3> kBreakfastPremium{0, 6, 12};

// Inclusive draw from the raw engine output, independent of the standard
// library's distribution implementations.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace

Money synthetic_base_price(const OfferRecord& r) {
  const double x = r.distance_to_sea / 200.0;
  const double beach = 30.0 * x * std::exp(1.0 - x);
  const double euros = 18.0 + kPeriodPremium[std::clamp(r.period_visiting, 1, 3)] + 9.0 * r.hotel_rating +
                       12.0 * r.beds_requested + kBreakfastPremium[std::clamp(r.breakfast_type, 0, 2)] +
                       2.0 * r.sites_within_10km + beach;
  return Money::from_cents(std::llround(euros * 100.0));
}

Money synthetic_price(const OfferRecord& characteristics, std::int64_t noise_cents) {
  const std::int64_t cents = synthetic_base_price(characteristics).cents() + noise_cents;
  return Money::from_cents(std::clamp<std::int64_t>(cents, 1000, 25000));
}

std::vector<OfferRecord> generate_synthetic(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("synthetic dataset size must be at least 1");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int low, int high) { return static_cast<int>(draw(rng, low, high)); };
  std::vector<OfferRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    OfferRecord r;
    r.period_visiting = uniform(1, 3);
    r.hotel_rating = uniform(1, 5);
    r.distance_to_sea = uniform(0, 10000);
    r.beds_requested = uniform(1, 3);
    r.breakfast_type = uniform(0, 2);
    r.sites_within_10km = uniform(0, 10);
    r.accepted_price = synthetic_price(r, draw(rng, -kSyntheticNoise, kSyntheticNoise));
    records.push_back(r);
  }
  return records;
}

}  // namespace hotelauction::rules
