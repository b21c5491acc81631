#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace hotelauction {

using CalendarDate = std::chrono::year_month_day;

// Strict "YYYY-MM-DD" (zero padded). Returns nullopt on anything else,
// including impossible dates such as 2023-02-30.
std::optional<CalendarDate> parse_iso_date(std::string_view text);
std::string format_iso_date(CalendarDate date);
// "2023-6-2" style, used only by the forward auction REST response.
std::string format_unpadded_date(CalendarDate date);

// The contiguous auction period D = [d_1, ..., d_|D|]. Each date stands for the
// night that starts on it; indices are 1-based.
class DateHorizon {
 public:
  DateHorizon(CalendarDate start, int length);

  CalendarDate start() const { return start_; }
  int length() const { return length_; }
  CalendarDate last() const { return date_at(length_); }

  bool contains(CalendarDate date) const;
  // Throws DomainError when `index` is outside 1..length().
  CalendarDate date_at(int index) const;

  friend bool operator==(const DateHorizon&, const DateHorizon&) = default;

 private:
  CalendarDate start_;
  int length_;
};

// I(d): position of `date` in the horizon. Throws DomainError when the date is
// outside the horizon.
int date_index(const DateHorizon& horizon, CalendarDate date);

}  // namespace hotelauction
