#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hotelauction {

// Exact non-negative-denominator rational, kept in lowest terms. Used for
// probabilities (counts over a sample size) and for expected values in cents.
class Fraction {
 public:
  constexpr Fraction() = default;
  // Throws std::invalid_argument when denominator is zero.
  Fraction(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  // Nearest integer, halves away from zero.
  std::int64_t round() const;
  // "9/10", or "3" for whole numbers.
  std::string to_string() const;

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hotelauction
