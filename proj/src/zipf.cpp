#include "paremio/zipf.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "paremio/errors.hpp"
#include "paremio/table_io.hpp"

namespace paremio {

RankTable rank_frequencies(const MatchTable& table,
                           const LexiconSet& lexicon) {
  RankTable rt;
  rt.corpus_id = table.corpus_id;
  for (const auto& [pid, keys] : table.cells) {
    long long total = table.total_occurrences(pid);
    if (total <= 0) continue;
    RankRow row;
    row.proverb_id = pid;
    row.frequency = total;
    if (const ProverbEntry* e = lexicon.find_by_id(pid)) row.label = e->key();
    else row.label = std::to_string(pid);
    rt.rows.push_back(std::move(row));
  }
  std::sort(rt.rows.begin(), rt.rows.end(),
            [](const RankRow& a, const RankRow& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              return a.proverb_id < b.proverb_id;
            });
  for (std::size_t i = 0; i < rt.rows.size(); ++i)
    rt.rows[i].rank = static_cast<int>(i + 1);
  return rt;
}

PowerLawFit fit_power_law(const RankTable& table, int range_lo, int range_hi) {
  if (range_lo < 1 || range_hi < range_lo)
    throw ConfigError("fit range must satisfy 1 <= lo <= hi");

  std::vector<double> xs, ys;
  for (const RankRow& row : table.rows) {
    if (row.rank < range_lo || row.rank > range_hi) continue;
    if (row.frequency <= 0)
      throw DataError("zero frequency at rank " + std::to_string(row.rank) +
                      "; log-log fit undefined");
    xs.push_back(std::log(double(row.rank)));
    ys.push_back(std::log(double(row.frequency)));
  }
  if (xs.size() < 3)
    throw DataError("fit range holds " + std::to_string(xs.size()) +
                    " usable points; need at least 3");

  const std::size_t n = xs.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = intercept + slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }

  PowerLawFit fit;
  fit.alpha = -slope;
  fit.c = std::exp(intercept);
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.range_lo = range_lo;
  fit.range_hi = range_hi;
  fit.points = static_cast<int>(n);
  return fit;
}

std::string export_loglog(const RankTable& table) {
  std::string out = "rank\tfrequency\tlog10_rank\tlog10_frequency\n";
  for (const RankRow& row : table.rows) {
    if (row.frequency <= 0) continue;
    out += std::to_string(row.rank);
    out += '\t';
    out += std::to_string(row.frequency);
    out += '\t';
    out += format_double(std::log10(double(row.rank)));
    out += '\t';
    out += format_double(std::log10(double(row.frequency)));
    out += '\n';
  }
  return out;
}

std::string serialize_rank_table(const RankTable& table) {
  std::string out = "rank\tproverb_id\tproverb\tcount\n";
  for (const RankRow& row : table.rows) {
    out += std::to_string(row.rank);
    out += '\t';
    out += std::to_string(row.proverb_id);
    out += '\t';
    out += row.label;
    out += '\t';
    out += std::to_string(row.frequency);
    out += '\n';
  }
  return out;
}

std::string serialize_fit(const PowerLawFit& fit) {
  nlohmann::json j;
  j["alpha"] = format_double(fit.alpha);
  j["c"] = format_double(fit.c);
  j["r_squared"] = format_double(fit.r_squared);
  j["fit_range"] = {fit.range_lo, fit.range_hi};
  j["points"] = fit.points;
  return j.dump(2) + "\n";
}

} // namespace paremio
