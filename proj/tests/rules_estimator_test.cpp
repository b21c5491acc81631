#include <gtest/gtest.h>

#include <random>

#include "hotelauction/rules/estimator.hpp"
#include "support/datasets.hpp"
#include "support/fixtures.hpp"

using namespace hotelauction;
using namespace hotelauction::rules;
using hotelauction::testing::random_desk_dataset;
using hotelauction::testing::price_sample_prices;

namespace {

Money eur(std::int64_t e) { return Money::from_euros(e); }

PriceRule rule(std::vector<Condition> antecedents, Direction direction, std::int64_t euros) {
  return PriceRule{std::move(antecedents), direction, eur(euros), Fraction(1, 5), Fraction(1, 1)};
}

PriceRule beach_rule() {
  return rule({{Attribute::DistanceToSea, 5, 25}, {Attribute::BreakfastType, 1, 1}, {Attribute::SitesWithin10km, 1, 10}},
              Direction::AtLeast, 75);
}

AttributeAssignment request(std::initializer_list<std::pair<Attribute, double>> values) {
  AttributeAssignment out;
  for (const auto& [a, v] : values) out[static_cast<std::size_t>(a)] = v;
  return out;
}

HotelProfile seaside_hotel() {
  HotelProfile p;
  p.id = "seaside";
  p.hotel_rating = 4;
  p.distance_to_sea = 100;
  p.sites_within_10km = 3;
  p.breakfast_costs = {{kNoBreakfast, Money{}}, {kContinental, eur(3)}, {kAmerican, eur(5)}};
  p.base_cost = eur(10);
  return p;
}

const auto& price_sample() {
  static const auto dist = reverse::empirical_distribution(price_sample_prices());
  return dist;
}

}  // namespace

TEST(FilterFeasible, DropsRulesTheHotelCannotMeet) {
  const auto hotel = seaside_hotel();
  const auto near_sea = rule({{Attribute::DistanceToSea, 0, 50}}, Direction::AtLeast, 90);
  const auto continental = rule({{Attribute::BreakfastType, 1, 1}}, Direction::AtLeast, 60);
  EXPECT_TRUE(filter_feasible({near_sea}, hotel).empty());
  EXPECT_EQ(filter_feasible({continental}, hotel), Ruleset{continental});
  EXPECT_TRUE(filter_feasible({}, hotel).empty());

  HotelProfile plain = hotel;
  plain.breakfast_costs = {{kNoBreakfast, Money{}}};
  EXPECT_TRUE(filter_feasible({continental}, plain).empty());
  // Period and beds describe the request, not the hotel.
  const auto high_season = rule({{Attribute::PeriodVisiting, 3, 3}, {Attribute::BedsRequested, 2, 3}}, Direction::AtLeast, 80);
  EXPECT_EQ(filter_feasible({high_season}, plain).size(), 1u);
}

TEST(FilterFeasible, IsASubsetAndIdempotent) {
  std::mt19937_64 rng(61);
  const auto data = random_desk_dataset(rng, 60);
  const auto rules = mine_rules(data, {0.1, 0.8, 3, 4});
  for (double distance : {0.0, 20.0, 50.0}) {
    HotelProfile hotel = seaside_hotel();
    hotel.distance_to_sea = distance;
    const auto once = filter_feasible(rules, hotel);
    for (const auto& r : once) ASSERT_NE(std::find(rules.begin(), rules.end(), r), rules.end());
    ASSERT_EQ(filter_feasible(once, hotel), once);
  }
}

TEST(EstimatePrice, SingleLowerBoundRule) {
  const auto estimate = estimate_price({beach_rule()}, request({{Attribute::DistanceToSea, 10}, {Attribute::BreakfastType, 1}}),
                                       price_sample(), eur(10));
  EXPECT_EQ(estimate.price, eur(75));
  EXPECT_EQ(estimate.applicable, Ruleset{beach_rule()});
  EXPECT_FALSE(estimate.fallback);
}

TEST(EstimatePrice, FallsBackToTheDistributionOptimum) {
  const auto estimate = estimate_price({beach_rule()}, request({{Attribute::DistanceToSea, 400}}), price_sample(), eur(10));
  EXPECT_EQ(estimate.price, eur(40));
  EXPECT_TRUE(estimate.applicable.empty());
  ASSERT_TRUE(estimate.fallback);
  EXPECT_EQ(estimate.fallback->expected_profit, eur(27));
}

TEST(EstimatePrice, MaxLowerWithinUpperClamp) {
  const Condition rating{Attribute::HotelRating, 3, 5};
  const Ruleset rules{rule({rating}, Direction::AtLeast, 60), rule({rating}, Direction::AtLeast, 75),
                      rule({rating}, Direction::AtMost, 90)};
  EXPECT_EQ(estimate_price(rules, request({{Attribute::HotelRating, 4}}), price_sample(), eur(10)).price, eur(75));
}

TEST(EstimatePrice, UpperBoundCapsTheFallback) {
  const Ruleset rules{rule({{Attribute::HotelRating, 1, 2}}, Direction::AtMost, 35)};
  const auto estimate = estimate_price(rules, request({{Attribute::HotelRating, 2}}), price_sample(), eur(10));
  EXPECT_EQ(estimate.price, eur(35));
  EXPECT_TRUE(estimate.fallback);
}

TEST(EstimatePrice, UnassignedAttributesCountAsSatisfiable) {
  EXPECT_EQ(estimate_price({beach_rule()}, request({}), price_sample(), eur(10)).price, eur(75));
}

TEST(EstimatePrice, ConflictCarriesBothSides) {
  const Condition rating{Attribute::HotelRating, 3, 5};
  const Ruleset rules{rule({rating}, Direction::AtLeast, 100), rule({rating}, Direction::AtLeast, 70),
                      rule({rating}, Direction::AtMost, 80)};
  try {
    estimate_price(rules, request({{Attribute::HotelRating, 4}}), price_sample(), eur(10));
    FAIL() << "expected RuleConflict";
  } catch (const RuleConflict& e) {
    EXPECT_EQ(e.lower(), eur(100));
    EXPECT_EQ(e.upper(), eur(80));
    EXPECT_EQ(e.lower_rules(), Ruleset{rules[0]});
    EXPECT_EQ(e.upper_rules(), Ruleset{rules[2]});
  }
}

TEST(EstimatePrice, AddingALowerBoundNeverLowersTheEstimate) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 300; ++i) {
    const auto data = random_desk_dataset(rng, 30 + rng() % 40);
    const auto rules = mine_rules(data, {0.1, 0.8, 2, 4});
    const auto target = data[rng() % data.size()];
    const auto req = assignment_of(target);
    Ruleset lower_only;
    for (const auto& r : rules)
      if (r.direction == Direction::AtLeast) lower_only.push_back(r);
    Ruleset grown;
    std::optional<Money> previous;
    for (const auto& r : lower_only) {
      grown.push_back(r);
      const auto estimate = estimate_price(grown, req, price_sample(), eur(10));
      if (estimate.fallback) continue;
      if (previous) ASSERT_GE(estimate.price, *previous) << "case " << i;
      previous = estimate.price;
    }
  }
}

TEST(SelectOffer, PicksTheCheapestAmenities) {
  const Ruleset rules{rule({{Attribute::BreakfastType, 2, 2}}, Direction::AtLeast, 60),
                      rule({{Attribute::BreakfastType, 1, 1}}, Direction::AtLeast, 60)};
  const auto offer = select_offer(rules, eur(70), seaside_hotel());
  ASSERT_TRUE(offer.rule);
  EXPECT_EQ(*offer.rule, rules[1]);
  EXPECT_EQ(offer.breakfast_type, 1);
  EXPECT_EQ(offer.amenity_cost, eur(3));
  EXPECT_FALSE(offer.defaults);
}

TEST(SelectOffer, BeachRuleOffersContinental) {
  const auto offer = select_offer({beach_rule()}, eur(75), seaside_hotel());
  EXPECT_EQ(offer.breakfast_type, kContinental);
  EXPECT_EQ(offer.price, eur(75));
}

TEST(SelectOffer, DefaultsWithoutAnAdmittingRule) {
  const auto none = select_offer({}, eur(40), seaside_hotel());
  EXPECT_TRUE(none.defaults);
  EXPECT_FALSE(none.rule);
  EXPECT_EQ(none.amenity_cost, Money{});
  const auto not_admitted = select_offer({beach_rule()}, eur(60), seaside_hotel());
  EXPECT_TRUE(not_admitted.defaults);
}

TEST(SelectOffer, TiesPreferFewerAntecedents) {
  const Ruleset rules{rule({{Attribute::PeriodVisiting, 2, 2}, {Attribute::HotelRating, 3, 5}}, Direction::AtLeast, 50),
                      rule({{Attribute::HotelRating, 3, 5}}, Direction::AtLeast, 50)};
  const auto offer = select_offer(rules, eur(55), seaside_hotel());
  ASSERT_TRUE(offer.rule);
  EXPECT_EQ(offer.rule->antecedents.size(), 1u);
  EXPECT_FALSE(offer.breakfast_type);
}
