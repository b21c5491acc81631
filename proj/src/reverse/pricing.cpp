#include "hotelauction/reverse/pricing.hpp"

#include <algorithm>
#include <string>

#include "hotelauction/core/errors.hpp"

namespace hotelauction::reverse {

AcceptedPriceDistribution::AcceptedPriceDistribution(std::vector<Money> breakpoints, std::vector<std::int64_t> counts)
    : breakpoints_(std::move(breakpoints)), counts_(std::move(counts)) {
  if (breakpoints_.empty()) throw DomainError("distribution needs at least one breakpoint");
  if (breakpoints_.size() != counts_.size()) throw DomainError("breakpoints and counts differ in length");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (counts_[i] <= 0) throw DomainError("breakpoint " + breakpoints_[i].to_string() + " has no samples");
    if (i > 0 && breakpoints_[i] <= breakpoints_[i - 1]) throw DomainError("breakpoints must be strictly ascending");
  }
  at_or_above_.assign(counts_.size() + 1, 0);
  for (std::size_t i = counts_.size(); i-- > 0;) at_or_above_[i] = at_or_above_[i + 1] + counts_[i];
  sample_size_ = at_or_above_[0];
}

Fraction AcceptedPriceDistribution::cumulative(std::size_t i) const {
  return Fraction(sample_size_ - at_or_above_[i + 1], sample_size_);
}

Fraction AcceptedPriceDistribution::survival(Money price) const {
  const auto first = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), price);
  return Fraction(at_or_above_[first - breakpoints_.begin()], sample_size_);
}

AcceptedPriceDistribution empirical_distribution(std::span<const Money> accepted_prices) {
  if (accepted_prices.empty()) throw DomainError("no accepted prices to build a distribution from");
  std::vector<Money> sorted(accepted_prices.begin(), accepted_prices.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() <= Money{}) throw DomainError("accepted prices must be positive");
  std::vector<Money> breakpoints;
  std::vector<std::int64_t> counts;
  for (Money price : sorted) {
    if (!breakpoints.empty() && breakpoints.back() == price) {
      ++counts.back();
    } else {
      breakpoints.push_back(price);
      counts.push_back(1);
    }
  }
  return AcceptedPriceDistribution(std::move(breakpoints), std::move(counts));
}

Fraction expected_profit_cents(const AcceptedPriceDistribution& dist, Money cost, Money price) {
  const Fraction survival = dist.survival(price);
  return Fraction((price - cost).cents() * survival.numerator(), survival.denominator());
}

Money expected_profit(const AcceptedPriceDistribution& dist, Money cost, Money price) {
  return Money::from_cents(expected_profit_cents(dist, cost, price).round());
}

PricingDecision optimize_price(const AcceptedPriceDistribution& dist, Money cost) {
  PricingDecision best;
  bool have = false;
  for (Money price : dist.breakpoints()) {
    const Fraction value = expected_profit_cents(dist, cost, price);
    if (!have || value > best.expected_profit_cents) {
      best.price = price;
      best.expected_profit_cents = value;
      have = true;
    }
  }
  best.expected_profit = Money::from_cents(best.expected_profit_cents.round());
  best.acceptance_probability = dist.survival(best.price);
  best.abstain = best.expected_profit_cents <= Fraction(0, 1);
  return best;
}

std::vector<ProfitCurvePoint> profit_curve(const AcceptedPriceDistribution& dist, Money cost) {
  std::vector<ProfitCurvePoint> curve;
  auto add = [&](Money price) {
    curve.push_back({price, expected_profit(dist, cost, price), dist.survival(price)});
  };
  const auto& points = dist.breakpoints();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) {
      const Money mid = Money::from_cents((points[i - 1].cents() + points[i].cents()) / 2);
      if (mid > points[i - 1]) add(mid);
    }
    add(points[i]);
  }
  return curve;
}

}  // namespace hotelauction::reverse
