#include "paremio/dates.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace paremio {

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

// Floor division, exact for negative years.
long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

} // namespace

bool valid_date(int year, int month, int day) {
  using namespace std::chrono;
  if (month < 1 || month > 12 || day < 1 || day > 31) return false;
  return year_month_day{std::chrono::year{year}, std::chrono::month{(unsigned)month},
                        std::chrono::day{(unsigned)day}}
      .ok();
}

long days_from_civil(int year, int month, int day) {
  using namespace std::chrono;
  return sys_days(year_month_day{std::chrono::year{year},
                                 std::chrono::month{(unsigned)month},
                                 std::chrono::day{(unsigned)day}})
      .time_since_epoch()
      .count();
}

void civil_from_days(long z, int& year, int& month, int& day) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{days{z}}};
  year = int(ymd.year());
  month = int(unsigned(ymd.month()));
  day = int(unsigned(ymd.day()));
}

std::optional<TemporalKey> TemporalKey::parse(std::string_view s) {
  if (s.size() == 4) {
    int y;
    if (parse_int(s, y)) return of_year(y);
    return std::nullopt;
  }
  if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
    int y, m, d;
    if (parse_int(s.substr(0, 4), y) && parse_int(s.substr(5, 2), m) &&
        parse_int(s.substr(8, 2), d) && valid_date(y, m, d))
      return of_date(y, m, d);
  }
  return std::nullopt;
}

std::string TemporalKey::to_string() const {
  char buf[16];
  if (res == Resolution::year) {
    std::snprintf(buf, sizeof buf, "%04d", year);
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  }
  return buf;
}

std::optional<BinSpec> BinSpec::parse(std::string_view s) {
  if (s == "day") return BinSpec{BinWidth::day};
  if (s == "month") return BinSpec{BinWidth::month};
  if (s == "year") return BinSpec{BinWidth::year};
  if (s.size() >= 2 && s.back() == 'y') {
    int k;
    if (parse_int(s.substr(0, s.size() - 1), k) && k >= 1)
      return BinSpec{BinWidth::kyear, k};
  }
  return std::nullopt;
}

std::string BinSpec::to_string() const {
  switch (width) {
    case BinWidth::day: return "day";
    case BinWidth::month: return "month";
    case BinWidth::year: return "year";
    case BinWidth::kyear: return std::to_string(k) + "y";
  }
  return "?";
}

TemporalKey bin_start_for(const TemporalKey& key, const BinSpec& spec) {
  switch (spec.width) {
    case BinWidth::day:
      return TemporalKey::of_date(key.year, key.month, key.day);
    case BinWidth::month:
      return TemporalKey::of_date(key.year, key.month, 1);
    case BinWidth::year:
      return TemporalKey::of_year(key.year);
    case BinWidth::kyear: {
      long start = 1700 + floor_div(key.year - 1700, spec.k) * spec.k;
      return TemporalKey::of_year(static_cast<int>(start));
    }
  }
  return key;
}

TemporalKey next_bin_start(const TemporalKey& start, const BinSpec& spec) {
  switch (spec.width) {
    case BinWidth::day: {
      long z = days_from_civil(start.year, start.month, start.day) + 1;
      int y, m, d;
      civil_from_days(z, y, m, d);
      return TemporalKey::of_date(y, m, d);
    }
    case BinWidth::month: {
      int y = start.year, m = start.month + 1;
      if (m > 12) { m = 1; ++y; }
      return TemporalKey::of_date(y, m, 1);
    }
    case BinWidth::year:
      return TemporalKey::of_year(start.year + 1);
    case BinWidth::kyear:
      return TemporalKey::of_year(start.year + spec.k);
  }
  return start;
}

bool resolution_supports(Resolution res, const BinSpec& spec) {
  if (res == Resolution::day) return true;
  return spec.width == BinWidth::year || spec.width == BinWidth::kyear;
}

} // namespace paremio
