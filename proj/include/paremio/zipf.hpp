#pragma once

#include <string>
#include <vector>

#include "paremio/lexicon.hpp"
#include "paremio/matcher.hpp"

namespace paremio {

struct RankRow {
  int rank = 0; // 1-based, no gaps
  int proverb_id = 0;
  long long frequency = 0;
  std::string label; // normalized text
};

/// Rank-frequency table: frequencies non-increasing with rank. Proverbs
/// with zero matches are excluded.
struct RankTable {
  std::string corpus_id;
  std::vector<RankRow> rows;
};

/// Sorts total occurrence counts descending; ties keep lexicon (input)
/// order via the proverb id, which reproduces published tables and is
/// iteration-order independent.
RankTable rank_frequencies(const MatchTable& table, const LexiconSet& lexicon);

struct PowerLawFit {
  double alpha = 0.0; // scaling exponent of F(r) = c * r^-alpha
  double c = 0.0;
  double r_squared = 0.0;
  int range_lo = 0, range_hi = 0; // inclusive rank interval used
  int points = 0;
};

/// Least-squares line on (log rank, log frequency) over the inclusive rank
/// interval [range_lo, range_hi]. Needs at least 3 rows in range, all with
/// positive frequency.
PowerLawFit fit_power_law(const RankTable& table, int range_lo, int range_hi);

/// Delimited rows (rank, frequency, log10 rank, log10 frequency);
/// zero-frequency rows omitted.
std::string export_loglog(const RankTable& table);

std::string serialize_rank_table(const RankTable& table);
std::string serialize_fit(const PowerLawFit& fit);

} // namespace paremio
