// Copyright 2026 The rdfmsg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// xsd:dateTime values on a single timeline.  An Instant compares by timeline
// position (seconds and nanoseconds since the Unix epoch, UTC) while keeping
// the exact lexical form it was written with, so re-serialization never
// rewrites timestamps.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>

#include "rdfmsg/errors.hpp"
#include "rdfmsg/text.hpp"

namespace rdfmsg {

/// A point on the timeline plus the xsd:dateTime lexical form it came from.
/// Comparison looks only at the timeline value: "2026-05-12T19:20:00+01:00"
/// and "2026-05-12T18:20:00Z" are equal.
struct Instant {
  int64_t seconds = 0;  ///< since 1970-01-01T00:00:00Z
  uint32_t nanos = 0;   ///< [0, 999999999]
  std::string lexical;  ///< the original written form

  friend bool operator==(const Instant& a, const Instant& b) {
    return a.seconds == b.seconds && a.nanos == b.nanos;
  }
  friend bool operator!=(const Instant& a, const Instant& b) {
    return !(a == b);
  }
  friend bool operator<(const Instant& a, const Instant& b) {
    return std::tie(a.seconds, a.nanos) < std::tie(b.seconds, b.nanos);
  }
  friend bool operator>(const Instant& a, const Instant& b) { return b < a; }
  friend bool operator<=(const Instant& a, const Instant& b) {
    return !(b < a);
  }
  friend bool operator>=(const Instant& a, const Instant& b) {
    return !(a < b);
  }
};

namespace detail {

/// Days from 1970-01-01 to the given proleptic-Gregorian civil date
/// (Howard Hinnant's days_from_civil; valid far beyond any plausible year).
inline int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

inline bool leap_year(int64_t y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

inline unsigned days_in_month(int64_t y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30,
                                       31, 31, 30, 31, 30, 31};
  if (m == 2 && leap_year(y)) return 29;
  return kDays[m - 1];
}

}  // namespace detail

/// Parses an xsd:dateTime lexical form.  A missing timezone designator is
/// read as UTC so that every instant lands on the one shared timeline;
/// "24:00:00" normalizes to 00:00:00 of the following day.  Fractional
/// seconds are kept to nanosecond resolution (further digits must be zero).
inline Instant parse_datetime(std::string_view s) {
  size_t i = 0;
  auto fail = [&](const std::string& why) -> BadDatetimeError {
    return BadDatetimeError("bad xsd:dateTime \"" + std::string(s) +
                            "\": " + why);
  };
  auto digits = [&](size_t count) -> int64_t {
    int64_t value = 0;
    for (size_t k = 0; k < count; ++k) {
      if (i >= s.size() || !text::is_digit(s[i])) {
        throw fail("expected a digit");
      }
      value = value * 10 + (s[i++] - '0');
    }
    return value;
  };
  auto expect = [&](char c) {
    if (i >= s.size() || s[i] != c) {
      throw fail(std::string("expected '") + c + "'");
    }
    ++i;
  };

  bool negative_year = false;
  if (i < s.size() && s[i] == '-') {
    negative_year = true;
    ++i;
  }
  size_t year_start = i;
  while (i < s.size() && text::is_digit(s[i])) ++i;
  size_t year_digits = i - year_start;
  if (year_digits < 4) throw fail("year needs at least four digits");
  if (year_digits > 4 && s[year_start] == '0') {
    throw fail("year longer than four digits must not start with zero");
  }
  if (year_digits > 11) throw fail("year out of range");
  int64_t year = 0;
  for (size_t k = year_start; k < year_start + year_digits; ++k) {
    year = year * 10 + (s[k] - '0');
  }
  if (negative_year) year = -year;

  expect('-');
  int64_t month = digits(2);
  expect('-');
  int64_t day = digits(2);
  expect('T');
  int64_t hour = digits(2);
  expect(':');
  int64_t minute = digits(2);
  expect(':');
  int64_t second = digits(2);

  uint32_t nanos = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    size_t frac_start = i;
    uint64_t frac = 0;
    while (i < s.size() && text::is_digit(s[i])) {
      if (i - frac_start < 9) {
        frac = frac * 10 + static_cast<uint64_t>(s[i] - '0');
      } else if (s[i] != '0') {
        throw fail("fractional seconds beyond nanoseconds must be zero");
      }
      ++i;
    }
    size_t frac_digits = i - frac_start;
    if (frac_digits == 0) throw fail("expected digits after '.'");
    for (size_t k = frac_digits; k < 9; ++k) frac *= 10;
    nanos = static_cast<uint32_t>(frac);
  }

  int64_t tz_offset = 0;  // seconds east of UTC
  if (i < s.size()) {
    char c = s[i];
    if (c == 'Z') {
      ++i;
    } else if (c == '+' || c == '-') {
      ++i;
      int64_t tz_hour = digits(2);
      expect(':');
      int64_t tz_minute = digits(2);
      if (tz_hour > 14 || tz_minute > 59 || (tz_hour == 14 && tz_minute != 0)) {
        throw fail("timezone offset out of range");
      }
      tz_offset = (tz_hour * 60 + tz_minute) * 60;
      if (c == '-') tz_offset = -tz_offset;
    } else {
      throw fail("unexpected trailing characters");
    }
  }
  if (i != s.size()) throw fail("unexpected trailing characters");

  if (month < 1 || month > 12) throw fail("month out of range");
  if (day < 1 ||
      day > detail::days_in_month(year, static_cast<unsigned>(month))) {
    throw fail("day out of range");
  }
  if (minute > 59 || second > 59) throw fail("time out of range");
  if (hour == 24) {
    if (minute != 0 || second != 0 || nanos != 0) {
      throw fail("hour 24 is only valid at 24:00:00");
    }
  } else if (hour > 23) {
    throw fail("time out of range");
  }

  int64_t days = detail::days_from_civil(year, static_cast<unsigned>(month),
                                         static_cast<unsigned>(day));
  Instant out;
  out.seconds =
      days * 86400 + hour * 3600 + minute * 60 + second - tz_offset;
  out.nanos = nanos;
  out.lexical = std::string(s);
  return out;
}

}  // namespace rdfmsg
