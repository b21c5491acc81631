#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hotelauction/rules/estimator.hpp"
#include "hotelauction/rules/evaluation.hpp"
#include "hotelauction/rules/synthetic.hpp"
#include "support/datasets.hpp"

using namespace hotelauction;
using namespace hotelauction::rules;
using hotelauction::testing::offer;

namespace {

std::pair<std::vector<OfferRecord>, std::vector<OfferRecord>> split(const std::vector<OfferRecord>& all, std::size_t train) {
  return {std::vector<OfferRecord>(all.begin(), all.begin() + static_cast<long>(train)),
          std::vector<OfferRecord>(all.begin() + static_cast<long>(train), all.end())};
}

}  // namespace

TEST(GenerateSynthetic, RecordsStayInTheirDomains) {
  const auto data = generate_synthetic(10'000, 2024);
  ASSERT_EQ(data.size(), 10'000u);
  for (const auto& r : data) {
    ASSERT_TRUE(record_issues(r).empty()) << record_issues(r).front();
    ASSERT_GE(r.accepted_price, Money::from_euros(10));
    ASSERT_LE(r.accepted_price, Money::from_euros(250));
  }
  EXPECT_EQ(generate_synthetic(100, 1).size(), 100u);
}

TEST(GenerateSynthetic, IsReproducibleFromTheSeed) {
  EXPECT_EQ(generate_synthetic(500, 9), generate_synthetic(500, 9));
  EXPECT_NE(generate_synthetic(500, 9), generate_synthetic(500, 10));
  // Prefix stability: a longer run starts with the shorter one.
  const auto longer = generate_synthetic(200, 9);
  const auto shorter = generate_synthetic(100, 9);
  EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), longer.begin()));
}

TEST(GenerateSynthetic, IdenticalCharacteristicsDifferByAtMostThirty) {
  const auto data = generate_synthetic(20'000, 77);
  std::map<std::tuple<int, double, double, int, int, int>, std::pair<Money, Money>> range;
  for (const auto& r : data) {
    const auto key = std::make_tuple(r.period_visiting, r.hotel_rating, std::floor(r.distance_to_sea), r.beds_requested,
                                     r.breakfast_type, r.sites_within_10km);
    if (r.distance_to_sea != std::floor(r.distance_to_sea)) continue;
    auto [it, inserted] = range.try_emplace(key, r.accepted_price, r.accepted_price);
    it->second.first = std::min(it->second.first, r.accepted_price);
    it->second.second = std::max(it->second.second, r.accepted_price);
  }
  for (const auto& [key, span] : range) ASSERT_LE(span.second - span.first, Money::from_euros(30));

  std::mt19937_64 rng(3);
  for (const auto& r : generate_synthetic(2000, 5)) {
    const auto low = synthetic_price(r, -kSyntheticNoise);
    const auto high = synthetic_price(r, kSyntheticNoise);
    ASSERT_LE(high - low, Money::from_euros(30));
  }
}

TEST(GenerateSynthetic, PricesAreMonotoneInOrderedAttributes) {
  const auto data = generate_synthetic(3000, 13);
  std::mt19937_64 rng(17);
  for (const auto& base : data) {
    const std::int64_t noise = static_cast<std::int64_t>(rng() % 3001) - kSyntheticNoise;
    for (Attribute a : {Attribute::PeriodVisiting, Attribute::HotelRating, Attribute::BedsRequested,
                        Attribute::BreakfastType, Attribute::SitesWithin10km}) {
      const auto domain = attribute_domain(a);
      for (double v = domain.low; v < domain.high; v += 1) {
        OfferRecord lo = base, hi = base;
        lo.set(a, v);
        hi.set(a, v + 1);
        ASSERT_LE(synthetic_price(lo, noise), synthetic_price(hi, noise)) << attribute_name(a) << " " << v;
      }
    }
  }
  OfferRecord r = data.front();
  r.hotel_rating = 2;
  const auto two = synthetic_price(r, 0);
  r.hotel_rating = 4;
  EXPECT_LE(two, synthetic_price(r, 0));
}

TEST(GenerateSynthetic, DistanceEffectRisesThenFalls) {
  OfferRecord r = offer(2, 3, 0, 2, kContinental, 4, 0);
  const auto at_beach = synthetic_base_price(r);
  r.distance_to_sea = 200;
  const auto peak = synthetic_base_price(r);
  r.distance_to_sea = 5000;
  const auto far = synthetic_base_price(r);
  EXPECT_LT(at_beach, peak);
  EXPECT_LT(far, peak);
}

TEST(EvaluateEstimator, BeatsTheDistributionBaselineOnHeldOutData) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto [train, test] = split(generate_synthetic(100, seed), 80);
    const auto report = evaluate_estimator(train, test, {0.15, 0.9, 3, 8});
    ASSERT_EQ(report.rows.size(), 20u);
    EXPECT_LE(report.mae, report.baseline_mae) << "seed " << seed;
    EXPECT_GT(report.mape, 0.0);
  }
}

TEST(EvaluateEstimator, MaeIsTheMeanAbsoluteError) {
  const auto [train, test] = split(generate_synthetic(100, 4), 80);
  const auto report = evaluate_estimator(train, test, {0.15, 0.9, 3, 8});
  std::int64_t total = 0;
  double relative = 0;
  for (const auto& row : report.rows) {
    const auto err = std::llabs((row.estimate - row.record.accepted_price).cents());
    total += err;
    relative += static_cast<double>(err) / static_cast<double>(row.record.accepted_price.cents());
  }
  EXPECT_EQ(report.mae, Money::from_cents((total + 10) / 20));
  EXPECT_NEAR(report.mape, relative / 20.0, 1e-12);
}

TEST(EvaluateEstimator, ResubstitutionErrorIsBoundedByRuleSlack) {
  std::mt19937_64 rng(71);
  const auto data = hotelauction::testing::random_desk_dataset(rng, 40);
  const MinerConfig config{0.05, 1.0, 3, 4};
  const auto rules = mine_rules(data, config);
  // Slack of a rule: distance from its bound to the farthest covered price.
  Money widest;
  for (const auto& r : rules) {
    for (const auto& rec : data) {
      if (!applies(r, assignment_of(rec))) continue;
      const Money gap = r.direction == Direction::AtLeast ? rec.accepted_price - r.bound : r.bound - rec.accepted_price;
      widest = std::max(widest, gap);
    }
  }
  const auto report = evaluate_estimator(data, data, config);
  for (const auto& row : report.rows) {
    if (row.used_fallback || row.conflict) continue;
    const auto err = row.estimate - row.record.accepted_price;
    ASSERT_LE(std::max(err, -err), widest);
  }
}

TEST(EvaluateEstimator, ExactMatchRuleGivesZeroError) {
  const std::vector<OfferRecord> train{offer(1, 3, 10, 1, kNoBreakfast, 0, 45), offer(1, 3, 20, 2, kContinental, 1, 60),
                                       offer(2, 4, 40, 2, kAmerican, 2, 85), offer(3, 5, 30, 3, kAmerican, 3, 140),
                                       offer(2, 2, 50, 1, kNoBreakfast, 0, 40)};
  const std::vector<OfferRecord> test{train[3]};
  const auto report = evaluate_estimator(train, test, {0.2, 1.0, 3, 8});
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].estimate, Money::from_euros(140));
  EXPECT_EQ(report.mae, Money{});
}

TEST(EvaluateEstimator, ReportListsEstimateAndTruth) {
  const auto [train, test] = split(generate_synthetic(100, 2), 80);
  const auto text = format_evaluation(evaluate_estimator(train, test, {}));
  const auto first = test.front().accepted_price.to_string();
  EXPECT_NE(text.find("(" + first + ")"), std::string::npos);
  EXPECT_NE(text.find("MAE"), std::string::npos);
}
