#include "hotelauction/core/money.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace hotelauction {

Money Money::from_decimal(double euros) {
  return Money(static_cast<std::int64_t>(std::llround(euros * 100.0)));
}

std::optional<Money> Money::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (frac.size() > 2) return std::nullopt;

  std::int64_t units = 0;
  if (!whole.empty()) {
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
    if (ec != std::errc{} || ptr != whole.data() + whole.size()) return std::nullopt;
  }
  std::int64_t cents = 0;
  if (!frac.empty()) {
    for (char ch : frac) {
      if (ch < '0' || ch > '9') return std::nullopt;
    }
    std::from_chars(frac.data(), frac.data() + frac.size(), cents);
    if (frac.size() == 1) cents *= 10;
  }
  const std::int64_t total = units * 100 + cents;
  return Money(negative ? -total : total);
}

std::string Money::to_string() const {
  const std::int64_t magnitude = std::llabs(cents_);
  std::string out = cents_ < 0 ? "-" : "";
  out += std::to_string(magnitude / 100);
  const std::int64_t frac = magnitude % 100;
  if (frac != 0) {
    out += '.';
    out += static_cast<char>('0' + frac / 10);
    if (frac % 10 != 0) out += static_cast<char>('0' + frac % 10);
  }
  return out;
}

}  // namespace hotelauction
