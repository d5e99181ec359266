// Matcher throughput harness: builds a 14k-pattern index over a synthetic
// lexicon and reports single-worker scan speed over a generated token
// stream. Informational; the documented target is 50 MB/s per worker.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "paremio/kernels.hpp"
#include "paremio/lexicon.hpp"
#include "paremio/matcher.hpp"

using namespace paremio;

int main(int argc, char** argv) {
  long target_mb = 20;
  if (argc > 1) target_mb = std::max(1L, std::atol(argv[1]));

  std::mt19937 rng(20240229);
  std::vector<std::string> vocabulary;
  for (int i = 0; i < 4000; ++i)
    vocabulary.push_back("word" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, vocabulary.size() - 1);
  std::uniform_int_distribution<int> pattern_len(2, 6);

  std::string source;
  for (int i = 0; i < 14000; ++i) {
    int n = pattern_len(rng);
    for (int t = 0; t < n; ++t) {
      if (t) source += ' ';
      source += vocabulary[pick(rng)];
    }
    source += '\n';
  }
  std::istringstream in(source);
  LexiconSet lex = load_lexicon(in, "bench");

  auto t0 = std::chrono::steady_clock::now();
  MatchIndex index = MatchIndex::build(lex);
  double build_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::printf("patterns            %zu\n", index.pattern_count());
  std::printf("automaton nodes     %zu\n", index.node_count());
  std::printf("build time          %.1f ms\n", build_ms);
  std::printf("kernel backend      %s\n", kernels::active_backend());

  // one reusable document of ~1 MB of token text, scanned repeatedly
  std::vector<std::string> doc;
  std::size_t doc_bytes = 0;
  while (doc_bytes < (1u << 20)) {
    const std::string& w = vocabulary[pick(rng)];
    doc_bytes += w.size() + 1;
    doc.push_back(w);
  }

  std::size_t scanned = 0, events = 0;
  t0 = std::chrono::steady_clock::now();
  while (scanned < std::size_t(target_mb) << 20) {
    events += index.scan(doc).size();
    scanned += doc_bytes;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("scanned             %.1f MB in %.2f s\n",
              double(scanned) / (1 << 20), secs);
  std::printf("throughput          %.1f MB/s (single worker)\n",
              double(scanned) / (1 << 20) / secs);
  std::printf("events              %zu\n", events);
  return 0;
}
