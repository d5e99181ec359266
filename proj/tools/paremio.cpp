#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "paremio/errors.hpp"
#include "paremio/log.hpp"
#include "paremio/pipeline.hpp"
#include "paremio/version.hpp"

namespace {

using paremio::RunConfig;

void add_common(CLI::App* cmd, RunConfig& config, bool needs_corpus) {
  cmd->add_option("--lexicon", config.lexicon, "Lexicon file (one phrase "
                  "per line, optional tab-separated category)")
      ->required();
  cmd->add_option("--categories", config.categories,
                  "Sidecar list of known proverbial expressions");
  if (needs_corpus) {
    cmd->add_option("--corpus", config.corpus, "Corpus manifest (JSON)")
        ->required();
    cmd->add_option("--out", config.out, "Output directory")->required();
    cmd->add_option("--workers", config.workers,
                    "Worker threads (0 = all cores)");
    cmd->add_option("--ngram-length", config.ngram_length,
                    "Pattern length for pre-aggregated n-gram corpora");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"paremio - proverb frequency, rank, and network analysis "
               "over text corpora"};
  app.set_version_flag("--version", PAREMIO_VERSION);
  app.require_subcommand(1);

  RunConfig config;
  std::function<int()> action;

  CLI::App* lexicon_check = app.add_subcommand(
      "lexicon-check", "Load and validate a lexicon, print statistics");
  add_common(lexicon_check, config, false);
  lexicon_check->callback([&] { action = [&] { return paremio::cmd_lexicon_check(config); }; });

  CLI::App* match = app.add_subcommand(
      "match", "Scan a corpus against the lexicon into match tables");
  add_common(match, config, true);
  match->callback([&] { action = [&] { return paremio::cmd_match(config); }; });

  CLI::App* timeseries = app.add_subcommand(
      "timeseries", "Binned, normalized, smoothed frequency series");
  add_common(timeseries, config, true);
  timeseries->add_option("--bin", config.bin,
                         "Bin width: day, month, year, or <k>y (e.g. 20y)");
  timeseries->add_option("--window", config.window,
                         "Centered rolling-average window in bins");
  timeseries->add_option("--mode", config.mode,
                         "Counting mode: occurrences or presence");
  timeseries->add_option("--totals", config.totals,
                         "Denominator table (bin<TAB>total) override");
  timeseries->callback([&] { action = [&] { return paremio::cmd_timeseries(config); }; });

  CLI::App* zipf = app.add_subcommand(
      "zipf", "Rank-frequency table and power-law fit");
  add_common(zipf, config, true);
  zipf->add_option("--fit-range", config.fit_range,
                   "Inclusive rank interval A:B for the log-log fit");
  zipf->callback([&] { action = [&] { return paremio::cmd_zipf(config); }; });

  CLI::App* network = app.add_subcommand(
      "network", "Shared-proverb co-occurrence network and centrality");
  add_common(network, config, true);
  network->add_option("--node-kind", config.node_kind,
                      "Project onto: document or author");
  network->add_option("--top", config.top_k, "Rows in the centrality report");
  network->add_flag("--normalized", config.normalized,
                    "Normalize betweenness by (N-1)(N-2)/2");
  network->add_option("--max-nodes", config.max_nodes,
                      "Abort above this node count (dense projection guard)");
  network->callback([&] { action = [&] { return paremio::cmd_network(config); }; });

  CLI::App* report = app.add_subcommand(
      "report", "Summarize the artifacts in an output directory");
  report->add_option("--out", config.out, "Output directory")->required();
  report->callback([&] { action = [&] { return paremio::cmd_report(config); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const paremio::ConfigError& e) {
    paremio::log_error(e.what());
    return 2;
  } catch (const paremio::DataError& e) {
    paremio::log_error(e.what());
    return 1;
  } catch (const std::exception& e) {
    paremio::log_error(e.what());
    return 1;
  }
}
