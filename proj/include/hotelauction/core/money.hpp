#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hotelauction {

// Monetary amount held as an exact count of cents. All prices, costs and
// objective values go through this type so that comparisons never depend on
// floating point rounding.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }
  static constexpr Money from_euros(std::int64_t euros) { return Money(euros * 100); }
  // Rounds to the nearest cent.
  static Money from_decimal(double euros);
  // Accepts "65", "65.5", "37.70", "-3.25". At most two decimals.
  static std::optional<Money> parse(std::string_view text);

  constexpr std::int64_t cents() const { return cents_; }
  constexpr double euros() const { return static_cast<double>(cents_) / 100.0; }

  // Shortest exact decimal: "65", "37.7", "0.05".
  std::string to_string() const;

  constexpr Money operator+(Money o) const { return Money(cents_ + o.cents_); }
  constexpr Money operator-(Money o) const { return Money(cents_ - o.cents_); }
  constexpr Money operator-() const { return Money(-cents_); }
  constexpr Money operator*(std::int64_t k) const { return Money(cents_ * k); }
  constexpr Money& operator+=(Money o) {
    cents_ += o.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    cents_ -= o.cents_;
    return *this;
  }

  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

inline constexpr std::string_view kCurrency = "EUR";

}  // namespace hotelauction
