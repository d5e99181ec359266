#include "paremio/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paremio/errors.hpp"
#include "paremio/kernels.hpp"
#include "paremio/log.hpp"
#include "paremio/table_io.hpp"

namespace paremio {

std::string counting_mode_name(CountingMode m) {
  return m == CountingMode::occurrences ? "occurrences" : "presence";
}

std::optional<CountingMode> parse_counting_mode(std::string_view s) {
  if (s == "occurrences") return CountingMode::occurrences;
  if (s == "presence" || s == "document_presence")
    return CountingMode::document_presence;
  return std::nullopt;
}

namespace {

void validate_spec(const BinSpec& spec) {
  if (spec.width == BinWidth::kyear && spec.k < 1)
    throw ConfigError("bin width must be positive");
}

/// Contiguous bin starts covering [lo, hi].
std::vector<TemporalKey> bin_range(const TemporalKey& lo, const TemporalKey& hi,
                                   const BinSpec& spec) {
  std::vector<TemporalKey> starts;
  TemporalKey cur = bin_start_for(lo, spec);
  const TemporalKey last = bin_start_for(hi, spec);
  while (cur <= last) {
    starts.push_back(cur);
    cur = next_bin_start(cur, spec);
  }
  return starts;
}

std::size_t bin_index(const std::vector<TemporalKey>& starts,
                      const TemporalKey& key, const BinSpec& spec) {
  TemporalKey start = bin_start_for(key, spec);
  auto it = std::lower_bound(starts.begin(), starts.end(), start);
  return std::size_t(it - starts.begin());
}

FrequencySeries make_series(int proverb_id, CountingMode mode,
                            const BinSpec& spec,
                            const std::vector<TemporalKey>& starts) {
  FrequencySeries s;
  s.proverb_id = proverb_id;
  s.mode = mode;
  s.bins = spec;
  s.points.resize(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i)
    s.points[i].bin_start = starts[i];
  return s;
}

} // namespace

std::map<int, FrequencySeries> bin_counts(const MatchTable& table,
                                          const std::vector<DocTime>& docs,
                                          const BinSpec& spec,
                                          CountingMode mode) {
  validate_spec(spec);
  if (table.key_kind != TableKeyKind::document)
    throw DataError("bin_counts requires a document-keyed match table");

  std::map<std::string, const TemporalKey*> keyed;
  std::optional<TemporalKey> lo, hi;
  for (const DocTime& d : docs) {
    if (!d.when) continue; // omitted from every bin
    if (!resolution_supports(d.when->res, spec))
      throw ConfigError("bin width '" + spec.to_string() +
                        "' is finer than the corpus date resolution");
    keyed.emplace(d.doc_id, &*d.when);
    if (!lo || *d.when < *lo) lo = *d.when;
    if (!hi || *hi < *d.when) hi = *d.when;
  }

  std::map<int, FrequencySeries> out;
  if (!lo) {
    // no temporally-keyed documents: empty series per proverb
    for (const auto& [pid, keys] : table.cells)
      out.emplace(pid, make_series(pid, mode, spec, {}));
    return out;
  }

  const std::vector<TemporalKey> starts = bin_range(*lo, *hi, spec);
  std::vector<long long> totals(starts.size(), 0);
  for (const DocTime& d : docs)
    if (d.when) ++totals[bin_index(starts, *d.when, spec)];

  for (const auto& [pid, keys] : table.cells) {
    FrequencySeries series = make_series(pid, mode, spec, starts);
    for (std::size_t i = 0; i < starts.size(); ++i)
      series.points[i].n = totals[i];
    for (const auto& [doc_id, cell] : keys) {
      auto it = keyed.find(doc_id);
      if (it == keyed.end()) continue; // no temporal key
      SeriesPoint& p = series.points[bin_index(starts, *it->second, spec)];
      p.f += mode == CountingMode::occurrences ? cell.occurrences
                                               : (cell.documents > 0 ? 1 : 0);
    }
    out.emplace(pid, std::move(series));
  }
  return out;
}

FrequencySeries relative_frequency(FrequencySeries series) {
  const std::size_t n = series.points.size();
  std::vector<double> fs(n), ns(n), rel(n);
  for (std::size_t i = 0; i < n; ++i) {
    fs[i] = double(series.points[i].f);
    ns[i] = double(series.points[i].n);
  }
  kernels::ratio_or_nan(fs.data(), ns.data(), rel.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    series.points[i].has_f_rel = !std::isnan(rel[i]);
    series.points[i].f_rel = rel[i];
  }
  return series;
}

FrequencySeries rolling_average(const FrequencySeries& series, int window) {
  if (window <= 0) throw ConfigError("rolling window must be >= 1");
  const std::size_t n = series.points.size();
  FrequencySeries out = series;
  if (n == 0 || window == 1) return out;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = series.points[i].has_f_rel ? series.points[i].f_rel : nan;

  std::vector<double> vals(n), counts(n);
  kernels::nan_mask_split(x.data(), n, vals.data(), counts.data());

  // prefix sums: O(1) per window; f_rel magnitudes keep the cancellation
  // error far below export precision
  std::vector<double> pv(n + 1, 0.0), pc(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    pv[i + 1] = pv[i] + vals[i];
    pc[i + 1] = pc[i] + counts[i];
  }

  const std::size_t back = std::size_t(window - 1) / 2;
  const std::size_t fwd = std::size_t(window) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i > back ? i - back : 0;
    std::size_t hi = std::min(n - 1, i + fwd);
    double cnt = pc[hi + 1] - pc[lo];
    if (cnt > 0) {
      out.points[i].f_rel = (pv[hi + 1] - pv[lo]) / cnt;
      out.points[i].has_f_rel = true;
    } else {
      out.points[i].f_rel = nan;
      out.points[i].has_f_rel = false;
    }
  }
  return out;
}

std::map<int, FrequencySeries> ngram_series(
    const MatchTable& table,
    const std::map<TemporalKey, long long>& denominators, const BinSpec& spec,
    CountingMode mode) {
  validate_spec(spec);
  if (table.key_kind != TableKeyKind::bin)
    throw DataError("ngram_series requires a bin-keyed match table");

  // re-bin cell keys and denominators into the requested width
  std::optional<TemporalKey> lo, hi;
  auto note = [&](const TemporalKey& k) {
    if (!resolution_supports(k.res, spec))
      throw ConfigError("bin width '" + spec.to_string() +
                        "' is finer than the corpus date resolution");
    if (!lo || k < *lo) lo = k;
    if (!hi || *hi < k) hi = k;
  };
  for (const auto& [pid, keys] : table.cells)
    for (const auto& [key, cell] : keys) {
      auto when = TemporalKey::parse(key);
      if (!when)
        throw DataError("bin-keyed table has unparseable key '" + key + "'");
      note(*when);
    }
  for (const auto& [when, total] : denominators) note(when);

  std::map<int, FrequencySeries> out;
  if (!lo) {
    for (const auto& [pid, keys] : table.cells)
      out.emplace(pid, make_series(pid, mode, spec, {}));
    return out;
  }

  const std::vector<TemporalKey> starts = bin_range(*lo, *hi, spec);
  std::vector<long long> totals(starts.size(), 0);
  for (const auto& [when, total] : denominators)
    totals[bin_index(starts, when, spec)] += total;

  for (const auto& [pid, keys] : table.cells) {
    FrequencySeries series = make_series(pid, mode, spec, starts);
    for (std::size_t i = 0; i < starts.size(); ++i)
      series.points[i].n = totals[i];
    for (const auto& [key, cell] : keys) {
      TemporalKey when = *TemporalKey::parse(key);
      SeriesPoint& p = series.points[bin_index(starts, when, spec)];
      p.f += mode == CountingMode::occurrences ? cell.occurrences
                                               : cell.documents;
    }
    out.emplace(pid, std::move(series));
  }
  return out;
}

std::string serialize_series(const std::map<int, FrequencySeries>& raw,
                             const std::map<int, FrequencySeries>& smoothed,
                             const std::map<int, std::string>& labels) {
  std::string out =
      "proverb\tbin_start\tbin_width\tcount\ttotal\tf_rel\tf_rel_smoothed\n";
  for (const auto& [pid, series] : raw) {
    auto lit = labels.find(pid);
    const std::string label =
        lit != labels.end() ? lit->second : std::to_string(pid);
    const FrequencySeries* smooth = nullptr;
    if (auto sit = smoothed.find(pid); sit != smoothed.end())
      smooth = &sit->second;
    for (std::size_t i = 0; i < series.points.size(); ++i) {
      const SeriesPoint& p = series.points[i];
      out += label;
      out += '\t';
      out += p.bin_start.to_string();
      out += '\t';
      out += series.bins.to_string();
      out += '\t';
      out += std::to_string(p.f);
      out += '\t';
      out += std::to_string(p.n);
      out += '\t';
      out += p.has_f_rel ? format_double(p.f_rel) : "nan";
      out += '\t';
      const SeriesPoint* sp =
          smooth && i < smooth->points.size() ? &smooth->points[i] : nullptr;
      out += sp && sp->has_f_rel ? format_double(sp->f_rel) : "nan";
      out += '\n';
    }
  }
  return out;
}

} // namespace paremio
