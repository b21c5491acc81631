#include "hotelauction/core/fraction.hpp"

#include <numeric>
#include <stdexcept>

namespace hotelauction {

Fraction::Fraction(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("fraction with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = g == 0 ? 0 : numerator / g;
  den_ = g == 0 ? 1 : denominator / g;
}

std::int64_t Fraction::round() const {
  const std::int64_t magnitude = num_ < 0 ? -num_ : num_;
  const std::int64_t rounded = (2 * magnitude + den_) / (2 * den_);
  return num_ < 0 ? -rounded : rounded;
}

std::string Fraction::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace hotelauction
