#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace paremio {

enum class Resolution { year, day };

/// A document's position in time: either a bare year (book corpora keyed by
/// author birth year, yearly n-gram corpora) or a full calendar date (news,
/// daily feeds). Year-resolution keys carry month = day = 1.
struct TemporalKey {
  Resolution res = Resolution::year;
  int year = 0;
  int month = 1;
  int day = 1;

  static TemporalKey of_year(int y) { return {Resolution::year, y, 1, 1}; }
  static TemporalKey of_date(int y, int m, int d) {
    return {Resolution::day, y, m, d};
  }

  /// Accepts "YYYY" or "YYYY-MM-DD". Returns nullopt on anything else,
  /// including calendar-invalid dates.
  static std::optional<TemporalKey> parse(std::string_view s);

  /// "YYYY" for year resolution, "YYYY-MM-DD" for day resolution.
  std::string to_string() const;

  friend auto operator<=>(const TemporalKey& a, const TemporalKey& b) {
    if (auto c = a.year <=> b.year; c != 0) return c;
    if (auto c = a.month <=> b.month; c != 0) return c;
    return a.day <=> b.day;
  }
  friend bool operator==(const TemporalKey&, const TemporalKey&) = default;
};

bool valid_date(int year, int month, int day);

/// Serial day number for calendar arithmetic (days since 1970-01-01).
long days_from_civil(int year, int month, int day);
void civil_from_days(long z, int& year, int& month, int& day);

enum class BinWidth { day, month, year, kyear };

struct BinSpec {
  BinWidth width = BinWidth::year;
  int k = 1; // multi-year width, used when width == kyear

  /// Accepts "day", "month", "year", or "<k>y" (e.g. "20y").
  static std::optional<BinSpec> parse(std::string_view s);
  std::string to_string() const;
};

// Multi-year bins are anchored so that 1700 starts a bin; month and year
// bins are calendar-aligned.
TemporalKey bin_start_for(const TemporalKey& key, const BinSpec& spec);
TemporalKey next_bin_start(const TemporalKey& start, const BinSpec& spec);

/// True when keys of resolution `res` can be binned at width `spec`
/// (year-resolution keys cannot fill day or month bins).
bool resolution_supports(Resolution res, const BinSpec& spec);

} // namespace paremio
