#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hotelauction/core/fraction.hpp"
#include "hotelauction/core/money.hpp"

namespace hotelauction::reverse {

// Empirical distribution of accepted offer prices from past reverse auctions.
// Masses are exact multiples of 1/N.
class AcceptedPriceDistribution {
 public:
  // `counts[i]` samples at `breakpoints[i]`; breakpoints strictly ascending,
  // counts positive. Throws DomainError otherwise.
  AcceptedPriceDistribution(std::vector<Money> breakpoints, std::vector<std::int64_t> counts);

  const std::vector<Money>& breakpoints() const { return breakpoints_; }
  std::size_t size() const { return breakpoints_.size(); }
  std::int64_t sample_size() const { return sample_size_; }

  Fraction mass(std::size_t i) const { return Fraction(counts_[i], sample_size_); }
  // F(pi_i): share of samples at or below breakpoint i.
  Fraction cumulative(std::size_t i) const;
  // Share of samples at or above `price`: the chance an offer at that price
  // would have been accepted.
  Fraction survival(Money price) const;

 private:
  std::vector<Money> breakpoints_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> at_or_above_;  // suffix sums of counts
  std::int64_t sample_size_ = 0;
};

// Throws DomainError on an empty sample or a non-positive price.
AcceptedPriceDistribution empirical_distribution(std::span<const Money> accepted_prices);

// (price - cost) * survival(price), exact, in cents.
Fraction expected_profit_cents(const AcceptedPriceDistribution& dist, Money cost, Money price);

// Same value rounded to whole cents (halves away from zero).
Money expected_profit(const AcceptedPriceDistribution& dist, Money cost, Money price);

struct PricingDecision {
  Money price;
  Money expected_profit;
  Fraction expected_profit_cents;
  Fraction acceptance_probability;
  bool abstain = false;  // best expected profit is not positive
};

// Best offer price. Expected profit is increasing between breakpoints, so only
// breakpoints are scanned; ties go to the lower price.
PricingDecision optimize_price(const AcceptedPriceDistribution& dist, Money cost);

struct ProfitCurvePoint {
  Money price;
  Money expected_profit;
  Fraction acceptance_probability;
};

// Expected profit at every breakpoint and at the midpoint (rounded down to a
// cent) between consecutive breakpoints, in ascending price order.
std::vector<ProfitCurvePoint> profit_curve(const AcceptedPriceDistribution& dist, Money cost);

}  // namespace hotelauction::reverse
