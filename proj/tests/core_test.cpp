#include <gtest/gtest.h>

#include <random>

#include "hotelauction/core/date.hpp"
#include "hotelauction/core/errors.hpp"
#include "hotelauction/core/fraction.hpp"
#include "hotelauction/core/money.hpp"
#include "hotelauction/core/validation.hpp"
#include "support/fixtures.hpp"

using namespace hotelauction;
using hotelauction::testing::make_bid;
using hotelauction::testing::single_type_auction;
using hotelauction::testing::ymd;

TEST(Money, ParsesAndFormatsDecimals) {
  EXPECT_EQ(Money::parse("65")->cents(), 6500);
  EXPECT_EQ(Money::parse("37.7")->cents(), 3770);
  EXPECT_EQ(Money::parse("-3.25")->cents(), -325);
  EXPECT_FALSE(Money::parse("1.234"));
  EXPECT_FALSE(Money::parse("abc"));
  EXPECT_FALSE(Money::parse(""));
  EXPECT_EQ(Money::from_cents(3770).to_string(), "37.7");
  EXPECT_EQ(Money::from_cents(5).to_string(), "0.05");
  EXPECT_EQ(Money::from_euros(27).to_string(), "27");
  EXPECT_EQ(Money::from_decimal(37.7).cents(), 3770);
  EXPECT_EQ(Money::from_decimal(0.125).cents(), 13);
}

TEST(Money, ToStringRoundTripsThroughParse) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto cents = static_cast<std::int64_t>(rng() % 2'000'000) - 1'000'000;
    const Money m = Money::from_cents(cents);
    ASSERT_EQ(Money::parse(m.to_string()), m) << m.to_string();
  }
}

TEST(Fraction, NormalizesAndCompares) {
  EXPECT_EQ(Fraction(9, 10), Fraction(18, 20));
  EXPECT_EQ(Fraction(3, -6), Fraction(-1, 2));
  EXPECT_EQ(Fraction(0, 5), Fraction(0, 1));
  EXPECT_LT(Fraction(1, 3), Fraction(1, 2));
  EXPECT_EQ(Fraction(9, 10).to_string(), "9/10");
  EXPECT_EQ(Fraction(4, 2).to_string(), "2");
  EXPECT_EQ(Fraction(3, 2).round(), 2);
  EXPECT_EQ(Fraction(-3, 2).round(), -2);
  EXPECT_EQ(Fraction(7, 5).round(), 1);
  EXPECT_THROW(Fraction(1, 0), std::invalid_argument);
}

TEST(Date, ParsesStrictIso) {
  EXPECT_EQ(parse_iso_date("2023-06-02"), ymd(2023, 6, 2));
  EXPECT_FALSE(parse_iso_date("2023-6-2"));
  EXPECT_FALSE(parse_iso_date("2023-02-30"));
  EXPECT_FALSE(parse_iso_date("20230602"));
  EXPECT_EQ(format_iso_date(ymd(2023, 6, 2)), "2023-06-02");
  EXPECT_EQ(format_unpadded_date(ymd(2023, 6, 2)), "2023-6-2");
  EXPECT_EQ(format_unpadded_date(ymd(2023, 12, 11)), "2023-12-11");
}

TEST(DateIndex, Examples) {
  const DateHorizon h(ymd(2023, 6, 1), 15);
  EXPECT_EQ(date_index(h, ymd(2023, 6, 1)), 1);
  EXPECT_EQ(date_index(h, ymd(2023, 6, 3)), 3);
  EXPECT_THROW(date_index(h, ymd(2023, 6, 16)), DomainError);
  EXPECT_THROW(date_index(h, ymd(2023, 5, 31)), DomainError);
}

TEST(DateIndex, IsABijectionOntoTheHorizon) {
  for (int length : {1, 2, 29, 60, 400}) {
    const DateHorizon h(ymd(2024, 2, 20), length);
    for (int k = 1; k <= length; ++k) {
      const CalendarDate d = h.date_at(k);
      ASSERT_TRUE(h.contains(d));
      ASSERT_EQ(date_index(h, d), k);
      ASSERT_EQ(std::chrono::sys_days(d) - std::chrono::sys_days(h.start()), std::chrono::days(k - 1));
    }
    EXPECT_THROW(h.date_at(0), DomainError);
    EXPECT_THROW(h.date_at(length + 1), DomainError);
  }
}

TEST(FeasibleArrivals, Examples) {
  EXPECT_EQ(feasible_arrivals(make_bid(1, 1, Money::from_euros(70), 1, 4, 2)), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(feasible_arrivals(make_bid(1, 1, Money::from_euros(70), 1, 7, 2, {3, 4, 5, 6, 7})), (std::vector<int>{1}));
  EXPECT_TRUE(feasible_arrivals(make_bid(1, 1, Money::from_euros(70), 1, 3, 2, {2})).empty());
}

TEST(FeasibleArrivals, CountAndContainmentProperties) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    const int lo = 1 + static_cast<int>(rng() % 20);
    const int hi = lo + static_cast<int>(rng() % 15);
    const int nights = 1 + static_cast<int>(rng() % (hi - lo + 1));
    std::vector<int> blackout;
    if (rng() % 2)
      for (int d = lo; d <= hi; ++d)
        if (rng() % 6 == 0) blackout.push_back(d);
    const Bid bid = make_bid(1, 1, Money::from_euros(70), lo, hi, nights, blackout);
    const auto arrivals = feasible_arrivals(bid);
    if (blackout.empty()) ASSERT_EQ(static_cast<int>(arrivals.size()), hi - lo + 2 - nights);
    ASSERT_TRUE(std::is_sorted(arrivals.begin(), arrivals.end()));
    for (int l : arrivals) {
      ASSERT_GE(l, lo);
      ASSERT_LE(l + nights - 1, hi);
      for (int d : blackout) ASSERT_FALSE(d >= l && d < l + nights);
    }
    // Every omitted start in range must hit a blackout night.
    for (int l = lo; l + nights - 1 <= hi; ++l) {
      const bool listed = std::find(arrivals.begin(), arrivals.end(), l) != arrivals.end();
      const bool blocked = std::any_of(blackout.begin(), blackout.end(), [&](int d) { return d >= l && d < l + nights; });
      ASSERT_EQ(listed, !blocked);
    }
  }
}

namespace {

bool has_issue(const std::vector<BidViolation>& report, BidIssue issue) {
  return std::any_of(report.begin(), report.end(), [&](const BidViolation& v) { return v.issue == issue; });
}

}  // namespace

TEST(ValidateBid, Examples) {
  const auto auction = single_type_auction(ymd(2023, 6, 1), 15, 5, Money::from_euros(65));
  EXPECT_TRUE(has_issue(validate_bid(make_bid(1, 1, Money::from_euros(60), 1, 15, 3), auction), BidIssue::BelowMinimumPrice));
  EXPECT_TRUE(validate_bid(make_bid(1, 1, Money::from_euros(65), 1, 15, 3), auction).empty());

  Bid duplicate = make_bid(1, 1, Money::from_euros(70), 1, 15, 3);
  duplicate.lines.push_back(duplicate.lines.front());
  EXPECT_TRUE(has_issue(validate_bid(duplicate, auction), BidIssue::DuplicateRoomType));
}

TEST(ValidateBid, ReportsStructuralProblems) {
  const auto auction = single_type_auction(ymd(2023, 6, 1), 15, 5, Money::from_euros(65));
  EXPECT_TRUE(has_issue(validate_bid(make_bid(1, 1, Money::from_euros(70), 1, 3, 2, {2}), auction),
                        BidIssue::NoFeasibleArrival));
  EXPECT_TRUE(has_issue(validate_bid(make_bid(1, 1, Money::from_euros(70), 10, 16, 2), auction),
                        BidIssue::WindowOutOfHorizon));
  EXPECT_TRUE(has_issue(validate_bid(make_bid(1, 1, Money::from_euros(70), 1, 3, 4), auction),
                        BidIssue::NightsExceedWindow));
  EXPECT_TRUE(has_issue(validate_bid(make_bid(1, 0, Money::from_euros(70), 1, 3, 1), auction),
                        BidIssue::NonPositiveRooms));
  EXPECT_TRUE(has_issue(validate_bid(make_bid(1, 1, Money::from_euros(70), 1, 3, 1, {}, RoomTypeId{9}), auction),
                        BidIssue::UnknownRoomType));
  EXPECT_TRUE(has_issue(validate_bid(make_bid(1, 1, Money::from_euros(70), 1, 3, 1, {5}), auction),
                        BidIssue::BlackoutOutsideWindow));
  Bid empty = make_bid(1, 1, Money::from_euros(70), 1, 3, 1);
  empty.lines.clear();
  EXPECT_TRUE(has_issue(validate_bid(empty, auction), BidIssue::EmptyBid));
}

TEST(ValidateAuction, RejectsInconsistentGroups) {
  auto auction = single_type_auction(ymd(2023, 6, 1), 7, 3, Money::from_euros(50));
  EXPECT_TRUE(validate_auction(auction).empty());
  auction.room_types[0].real_group = GroupId{2};
  EXPECT_FALSE(validate_auction(auction).empty());
  auction = single_type_auction(ymd(2023, 6, 1), 7, 3, Money::from_euros(0));
  EXPECT_FALSE(validate_auction(auction).empty());
}
