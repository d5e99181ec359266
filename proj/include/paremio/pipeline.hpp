#pragma once

#include <filesystem>
#include <string>

namespace paremio {

/// Options shared by the CLI subcommands. Paths are validated by the
/// commands that use them.
struct RunConfig {
  std::filesystem::path lexicon;
  std::filesystem::path categories; // optional proverbial-expression sidecar
  std::filesystem::path corpus;     // manifest path
  std::filesystem::path out;
  std::string bin;                  // day|month|year|<k>y; empty = corpus default
  int window = 1;
  std::string mode = "occurrences"; // occurrences|presence
  int ngram_length = 0;             // 0 = manifest / inferred
  std::string fit_range;            // "A:B"; empty = full table
  std::string node_kind = "document";
  int top_k = 20;
  bool normalized = false;
  int workers = 0;                  // 0 = hardware concurrency
  std::filesystem::path totals;     // optional denominator table override
  std::size_t max_nodes = 50000;
};

// Subcommand bodies. Return process exit codes: 0 success, 1 data error,
// 2 configuration error (thrown ConfigError/DataError are mapped by the
// CLI wrapper; these return nonzero only for per-file ingest failures).
int cmd_lexicon_check(const RunConfig& config);
int cmd_match(const RunConfig& config);
int cmd_timeseries(const RunConfig& config);
int cmd_zipf(const RunConfig& config);
int cmd_network(const RunConfig& config);
int cmd_report(const RunConfig& config);

int effective_workers(int requested);

} // namespace paremio
