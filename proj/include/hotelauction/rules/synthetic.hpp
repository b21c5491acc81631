#pragma once

#include <cstdint>
#include <vector>

#include "hotelauction/rules/records.hpp"

namespace hotelauction::rules {

// Noise added to the base price is drawn from [-kSyntheticNoise, +kSyntheticNoise]
// cents, so two records with equal characteristics differ by at most €30.
inline constexpr std::int64_t kSyntheticNoise = 1500;

// Deterministic score: increasing in period, rating, beds, breakfast and
// sites; rises then falls with distance to the sea (peak around 200 m).
Money synthetic_base_price(const OfferRecord& characteristics);

// Base price plus noise, clamped to [10,250]. Characteristics are read from
// `characteristics`; its accepted_price is ignored.
Money synthetic_price(const OfferRecord& characteristics, std::int64_t noise_cents);

// `n` records with characteristics uniform over their domains (integers for
// rating, beds, sites and distance in meters). Same (n, seed), same records.
std::vector<OfferRecord> generate_synthetic(int n, std::uint64_t seed);

}  // namespace hotelauction::rules
