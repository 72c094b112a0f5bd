#pragma once
// Calendar dates and quarter labels ("2007Q3").

#include <chrono>
#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace liqnet {

struct Date {
  int year = 1999;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  bool valid() const {
    using namespace std::chrono;
    return year_month_day{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                          std::chrono::day{static_cast<unsigned>(day)}}
        .ok();
  }

  std::string to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
  }

  // Expects "YYYY-MM-DD".
  static Date parse(const std::string& s) {
    int y = 0, m = 0, d = 0;
    char c1 = 0, c2 = 0;
    if (std::sscanf(s.c_str(), "%d%c%d%c%d", &y, &c1, &m, &c2, &d) != 5 || c1 != '-' || c2 != '-') {
      throw std::invalid_argument("bad date: '" + s + "' (expected YYYY-MM-DD)");
    }
    Date date{y, m, d};
    if (!date.valid()) throw std::invalid_argument("bad date: '" + s + "' (not a calendar day)");
    return date;
  }
};

struct Quarter {
  int year = 1999;
  int q = 1;  // 1..4

  auto operator<=>(const Quarter&) const = default;

  // Calendar quarters: Q1 = Jan-Mar, Q2 = Apr-Jun, ...
  static Quarter of(const Date& d) { return Quarter{d.year, (d.month - 1) / 3 + 1}; }

  std::string label() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04dQ%d", year, q);
    return buf;
  }

  static Quarter parse(const std::string& s) {
    int y = 0, qq = 0;
    char c = 0;
    if (std::sscanf(s.c_str(), "%d%c%d", &y, &c, &qq) != 3 || (c != 'Q' && c != 'q') || qq < 1 ||
        qq > 4) {
      throw std::invalid_argument("bad quarter label: '" + s + "' (expected e.g. 2007Q3)");
    }
    return Quarter{y, qq};
  }

  int index() const { return year * 4 + (q - 1); }

  Quarter next() const { return q == 4 ? Quarter{year + 1, 1} : Quarter{year, q + 1}; }

  int first_month() const { return 3 * (q - 1) + 1; }

  int days_in_quarter() const {
    int total = 0;
    for (int m = first_month(); m < first_month() + 3; ++m) total += days_in_month(year, m);
    return total;
  }

  // 0-based day offset within the quarter -> calendar date.
  Date date_at(int day_offset) const {
    for (int m = first_month(); m < first_month() + 3; ++m) {
      const int dm = days_in_month(year, m);
      if (day_offset < dm) return Date{year, m, day_offset + 1};
      day_offset -= dm;
    }
    throw std::out_of_range("day offset beyond quarter");
  }

  static int days_in_month(int year, int month) {
    static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
      const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
      return leap ? 29 : 28;
    }
    return kDays[month - 1];
  }
};

}  // namespace liqnet
