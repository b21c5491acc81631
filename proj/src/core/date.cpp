#include "hotelauction/core/date.hpp"

#include <charconv>
#include <cstdio>

#include "hotelauction/core/errors.hpp"

namespace hotelauction {
namespace {

bool parse_fixed(std::string_view text, int& out) {
  for (char ch : text) {
    if (ch < '0' || ch > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::optional<CalendarDate> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_fixed(text.substr(0, 4), y) || !parse_fixed(text.substr(5, 2), m) ||
      !parse_fixed(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const CalendarDate date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                          std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(CalendarDate date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::string format_unpadded_date(CalendarDate date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d-%u-%u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

DateHorizon::DateHorizon(CalendarDate start, int length) : start_(start), length_(length) {
  if (length < 1) throw DomainError("date horizon length must be at least 1");
}

bool DateHorizon::contains(CalendarDate date) const {
  using std::chrono::sys_days;
  const auto offset = (sys_days{date} - sys_days{start_}).count();
  return offset >= 0 && offset < length_;
}

CalendarDate DateHorizon::date_at(int index) const {
  if (index < 1 || index > length_) {
    throw DomainError("date index " + std::to_string(index) + " outside horizon 1.." +
                      std::to_string(length_));
  }
  using std::chrono::days;
  using std::chrono::sys_days;
  return CalendarDate{sys_days{start_} + days{index - 1}};
}

int date_index(const DateHorizon& horizon, CalendarDate date) {
  if (!horizon.contains(date)) {
    throw DomainError("date " + format_iso_date(date) + " is outside the horizon " +
                      format_iso_date(horizon.start()) + ".." + format_iso_date(horizon.last()));
  }
  using std::chrono::sys_days;
  return static_cast<int>((sys_days{date} - sys_days{horizon.start()}).count()) + 1;
}

}  // namespace hotelauction
