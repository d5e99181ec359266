#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paremio/dates.hpp"
#include "paremio/matcher.hpp"

namespace paremio {

enum class CountingMode { occurrences, document_presence };

std::string counting_mode_name(CountingMode m);
std::optional<CountingMode> parse_counting_mode(std::string_view s);

/// One bin of a frequency series. f_rel is defined only where n > 0;
/// undefined points are kept so exports can show gaps.
struct SeriesPoint {
  TemporalKey bin_start;
  long long f = 0;
  long long n = 0;
  double f_rel = 0.0;
  bool has_f_rel = false;
};

/// Contiguous, uniform-width, non-overlapping bins in ascending order.
struct FrequencySeries {
  int proverb_id = -1;
  CountingMode mode = CountingMode::occurrences;
  BinSpec bins;
  std::vector<SeriesPoint> points;
};

/// A document's temporal position, as needed for binning. Documents with
/// no temporal key are excluded from every bin (but remain in corpus-total
/// counts upstream).
struct DocTime {
  std::string doc_id;
  std::optional<TemporalKey> when;
};

/// Bins a document-keyed MatchTable. f sums occurrences (or presence
/// flags) of documents whose key falls in the bin; n counts all
/// temporally-keyed documents in the bin, matched or not. Bins span the
/// corpus date range.
std::map<int, FrequencySeries> bin_counts(const MatchTable& table,
                                          const std::vector<DocTime>& docs,
                                          const BinSpec& spec,
                                          CountingMode mode);

/// Fills f_rel = f/n at every point with n > 0; pure, counts untouched.
FrequencySeries relative_frequency(FrequencySeries series);

/// Centered moving average over f_rel, window truncated to available
/// points at the edges; a window of 1 is the identity. Undefined points
/// do not contribute; a window with no defined point stays undefined.
/// For even windows the extra slot extends forward.
FrequencySeries rolling_average(const FrequencySeries& series, int window);

/// Series from a bin-keyed table (pre-aggregated corpora). f takes
/// occurrence counts (or document counts in presence mode); n comes from
/// the supplied per-period denominators. Cells are re-binned into `spec`;
/// bins with no denominator stay undefined.
std::map<int, FrequencySeries> ngram_series(
    const MatchTable& table,
    const std::map<TemporalKey, long long>& denominators, const BinSpec& spec,
    CountingMode mode);

/// Long-format export: proverb, bin_start, bin_width, count, total, f_rel,
/// f_rel_smoothed. `labels` maps proverb ids to display text.
std::string serialize_series(
    const std::map<int, FrequencySeries>& raw,
    const std::map<int, FrequencySeries>& smoothed,
    const std::map<int, std::string>& labels);

} // namespace paremio
