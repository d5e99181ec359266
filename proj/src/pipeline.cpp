#include "paremio/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "paremio/corpus.hpp"
#include "paremio/errors.hpp"
#include "paremio/lexicon.hpp"
#include "paremio/log.hpp"
#include "paremio/matcher.hpp"
#include "paremio/network.hpp"
#include "paremio/normalize.hpp"
#include "paremio/table_io.hpp"
#include "paremio/timeseries.hpp"
#include "paremio/version.hpp"
#include "paremio/zipf.hpp"

namespace paremio {

namespace fs = std::filesystem;

int effective_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

namespace {

constexpr const char* kMatchFile = "matches.tsv";
constexpr const char* kSummaryFile = "summary.tsv";
constexpr const char* kDocumentsFile = "documents.tsv";
constexpr const char* kBinTotalsFile = "bin_totals.tsv";
constexpr const char* kRunFile = "run.json";

std::string sanitize_field(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return s;
}

LexiconSet load_configured_lexicon(const RunConfig& config) {
  if (config.lexicon.empty())
    throw ConfigError("--lexicon is required");
  LexiconSet lex = load_lexicon(config.lexicon);
  if (!config.categories.empty()) {
    int marked = apply_category_sidecar(lex, config.categories);
    log_info("category sidecar marked " + std::to_string(marked) +
             " proverbial expressions");
  }
  return lex;
}

std::string hash_corpus_inputs(const RunConfig& config,
                               const CorpusManifest& manifest) {
  std::uint64_t h = fnv1a64(PAREMIO_VERSION);
  h = fnv1a64(read_file(config.lexicon), h);
  if (!config.categories.empty()) h = fnv1a64(read_file(config.categories), h);
  h = fnv1a64(read_file(config.corpus), h);
  for (const fs::path& file : manifest.resolve_files()) {
    h = fnv1a64(fs::relative(file, manifest.root).generic_string(), h);
    h = fnv1a64(read_file(file), h);
  }
  if (!manifest.metadata.empty() && fs::exists(manifest.metadata))
    h = fnv1a64(read_file(manifest.metadata), h);
  if (!manifest.totals.empty() && fs::exists(manifest.totals))
    h = fnv1a64(read_file(manifest.totals), h);
  h = fnv1a64("ngram_length=" + std::to_string(config.ngram_length), h);
  return hash_hex(h);
}

fs::path cache_root(const RunConfig& config) {
  if (const char* env = std::getenv("PAREMIO_CACHE_DIR"); env && *env)
    return fs::path(env);
  return config.out / ".paremio-cache";
}

std::string serialize_documents(const std::vector<DocumentRecord>& docs) {
  std::string out = "doc_id\ttemporal_key\tauthor\ttitle\n";
  for (const DocumentRecord& d : docs) {
    out += sanitize_field(d.doc_id);
    out += '\t';
    out += d.when ? d.when->to_string() : "";
    out += '\t';
    out += sanitize_field(d.author);
    out += '\t';
    out += sanitize_field(d.title);
    out += '\n';
  }
  return out;
}

std::string serialize_bin_totals(const std::map<TemporalKey, long long>& t) {
  std::string out = "bin\ttotal\n";
  for (const auto& [bin, total] : t) {
    out += bin.to_string();
    out += '\t';
    out += std::to_string(total);
    out += '\n';
  }
  return out;
}

std::string serialize_summary(const MatchTable& table,
                              const LexiconSet& lexicon) {
  std::string out =
      "proverb_id\tproverb\traw_text\tlength\tcategory\t"
      "total_occurrences\tdocument_frequency\n";
  for (const auto& [pid, keys] : table.cells) {
    const ProverbEntry* e = lexicon.find_by_id(pid);
    out += std::to_string(pid);
    out += '\t';
    out += e ? e->key() : "";
    out += '\t';
    out += e ? sanitize_field(e->raw_text) : "";
    out += '\t';
    out += std::to_string(e ? e->length : 0);
    out += '\t';
    out += e ? category_name(e->category) : "unknown";
    out += '\t';
    out += std::to_string(table.total_occurrences(pid));
    out += '\t';
    out += std::to_string(table.document_frequency(pid));
    out += '\n';
  }
  return out;
}

// Scans or joins the corpus and fills every output file's content.
// Returned map: file name -> bytes.
std::map<std::string, std::string> compute_match_outputs(
    const RunConfig& config, const LexiconSet& lexicon,
    const CorpusManifest& manifest, const std::string& content_hash) {
  IngestReport report;
  MatchTable table;
  std::map<std::string, std::string> files;

  if (manifest.kind == CorpusKind::plaintext ||
      manifest.kind == CorpusKind::news_xml) {
    std::vector<DocumentRecord> docs =
        manifest.kind == CorpusKind::plaintext
            ? ingest_plaintext_corpus(manifest, &report)
            : ingest_news_xml(manifest, &report);
    MatchIndex index = MatchIndex::build(lexicon);
    table = scan_corpus(index, docs, manifest.corpus_id,
                        effective_workers(config.workers));
    files[kDocumentsFile] = serialize_documents(docs);
  } else {
    std::vector<NgramObservation> observations =
        manifest.kind == CorpusKind::ngram_tsv
            ? ingest_ngram_tsv(manifest, &report)
            : ingest_daily_ngram_feed(manifest, &report);
    int n = config.ngram_length > 0 ? config.ngram_length
                                    : manifest.ngram_length;
    if (n > 0) {
      // keep only observations of the requested length before the join
      std::erase_if(observations, [&](const NgramObservation& o) {
        return int(o.tokens.size()) != n;
      });
    }
    table = match_preaggregated(lexicon, observations, manifest.corpus_id, n);

    std::map<TemporalKey, long long> totals;
    if (!manifest.totals.empty()) totals = load_totals_table(manifest.totals);
    else totals = feed_period_totals(observations);
    if (!totals.empty()) files[kBinTotalsFile] = serialize_bin_totals(totals);
  }

  files[kMatchFile] = serialize_match_table(table);
  files[kSummaryFile] = serialize_summary(table, lexicon);

  nlohmann::json run;
  run["tool_version"] = PAREMIO_VERSION;
  run["corpus_id"] = manifest.corpus_id;
  run["key_kind"] =
      table.key_kind == TableKeyKind::document ? "document" : "bin";
  run["content_hash"] = content_hash;
  run["lexicon_hash"] = hash_hex(fnv1a64(read_file(config.lexicon)));
  run["corpus_hash"] = hash_hex(fnv1a64(read_file(config.corpus)));
  run["ngram_length"] = config.ngram_length;
  run["scanned_documents"] = table.scanned_documents;
  run["matched_proverbs"] = table.cells.size();
  run["ingest_errors"] = report.errors;
  files[kRunFile] = run.dump(2) + "\n";
  return files;
}

int ingest_error_count(const nlohmann::json& run) {
  auto it = run.find("ingest_errors");
  return it != run.end() && it->is_array() ? int(it->size()) : 0;
}

std::optional<nlohmann::json> read_run_file(const fs::path& out_dir) {
  fs::path run_path = out_dir / kRunFile;
  if (!fs::exists(run_path)) return std::nullopt;
  try {
    return nlohmann::json::parse(read_file(run_path));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Produces (or reuses) the match artifacts in config.out. Returns the
// number of per-file ingest errors recorded.
int ensure_match_files(const RunConfig& config) {
  if (config.corpus.empty()) throw ConfigError("--corpus is required");
  if (config.out.empty()) throw ConfigError("--out is required");
  if (!fs::exists(config.corpus))
    throw ConfigError("corpus manifest does not exist: " +
                      config.corpus.string());
  fs::create_directories(config.out);

  LexiconSet lexicon = load_configured_lexicon(config);
  CorpusManifest manifest = CorpusManifest::load(config.corpus);
  const std::string content_hash = hash_corpus_inputs(config, manifest);

  // current outputs win over everything
  if (auto run = read_run_file(config.out)) {
    if (run->value("content_hash", "") == content_hash) {
      log_info("match outputs current (hash " + content_hash +
               "), no rescan");
      return ingest_error_count(*run);
    }
    log_info("stale match outputs (hash mismatch), rescanning");
  }

  // then the shared cache
  const fs::path entry = cache_root(config) / content_hash;
  if (fs::exists(entry / kRunFile)) {
    log_info("cache hit " + content_hash + ", no rescan");
    for (const auto& f : fs::directory_iterator(entry))
      fs::copy_file(f.path(), config.out / f.path().filename(),
                    fs::copy_options::overwrite_existing);
    auto run = read_run_file(config.out);
    return run ? ingest_error_count(*run) : 0;
  }

  auto files = compute_match_outputs(config, lexicon, manifest, content_hash);
  for (const auto& [name, bytes] : files)
    write_file(config.out / name, bytes);
  fs::create_directories(entry);
  for (const auto& [name, bytes] : files)
    if (name != kRunFile) write_file(entry / name, bytes);
  write_file(entry / kRunFile, files.at(kRunFile)); // marker written last

  return ingest_error_count(nlohmann::json::parse(files.at(kRunFile)));
}

struct LoadedMatch {
  MatchTable table;
  std::vector<DocTime> doc_times;
  std::map<std::string, std::string> doc_authors;
  std::map<TemporalKey, long long> bin_totals;
};

LoadedMatch load_match_files(const RunConfig& config) {
  auto run = read_run_file(config.out);
  if (!run) throw DataError("missing " + std::string(kRunFile) + " in " +
                            config.out.string());
  LoadedMatch loaded;
  TableKeyKind kind = run->value("key_kind", "document") == "bin"
                          ? TableKeyKind::bin
                          : TableKeyKind::document;
  loaded.table = parse_match_table(read_file(config.out / kMatchFile),
                                   run->value("corpus_id", ""), kind);
  loaded.table.scanned_documents = run->value("scanned_documents", 0LL);

  fs::path docs_path = config.out / kDocumentsFile;
  if (fs::exists(docs_path)) {
    std::string content = read_file(docs_path);
    std::size_t pos = 0;
    bool header = true;
    while (pos < content.size()) {
      std::size_t eol = content.find('\n', pos);
      if (eol == std::string::npos) eol = content.size();
      std::string_view line(content.data() + pos, eol - pos);
      pos = eol + 1;
      if (header) { header = false; continue; }
      if (line.empty()) continue;
      auto f = split_fields(line, '\t');
      if (f.size() < 4) continue;
      DocTime dt;
      dt.doc_id = std::string(f[0]);
      if (!f[1].empty()) dt.when = TemporalKey::parse(f[1]);
      loaded.doc_times.push_back(dt);
      if (!f[2].empty())
        loaded.doc_authors.emplace(std::string(f[0]), std::string(f[2]));
    }
  }

  fs::path totals_path = config.out / kBinTotalsFile;
  if (fs::exists(totals_path)) loaded.bin_totals = load_totals_table(totals_path);
  return loaded;
}

std::map<int, std::string> label_map(const LexiconSet& lexicon) {
  std::map<int, std::string> labels;
  for (const ProverbEntry& e : lexicon.entries()) labels[e.id] = e.key();
  return labels;
}

BinSpec resolve_bin_spec(const RunConfig& config, const LoadedMatch& loaded) {
  std::string bin = config.bin;
  if (bin.empty()) {
    // default to the finest width the corpus supports
    bool day_res = false;
    for (const DocTime& d : loaded.doc_times)
      if (d.when && d.when->res == Resolution::day) day_res = true;
    if (loaded.table.key_kind == TableKeyKind::bin) {
      for (const auto& [pid, keys] : loaded.table.cells)
        for (const auto& [key, cell] : keys)
          if (auto k = TemporalKey::parse(key); k && k->res == Resolution::day)
            day_res = true;
      for (const auto& [k, v] : loaded.bin_totals)
        if (k.res == Resolution::day) day_res = true;
    }
    bin = day_res ? "day" : "year";
  }
  auto spec = BinSpec::parse(bin);
  if (!spec) throw ConfigError("invalid --bin '" + bin + "'");
  return *spec;
}

} // namespace

int cmd_lexicon_check(const RunConfig& config) {
  LexiconSet lexicon = load_configured_lexicon(config);
  std::map<int, int> by_length;
  std::map<std::string, int> by_category;
  for (const ProverbEntry& e : lexicon.entries()) {
    ++by_length[e.length];
    ++by_category[category_name(e.category)];
  }
  std::cout << "entries\t" << lexicon.size() << "\n";
  std::cout << "merged_collisions\t" << lexicon.collision_count() << "\n";
  for (const auto& [len, count] : by_length)
    std::cout << "length_" << len << "\t" << count << "\n";
  for (const auto& [cat, count] : by_category)
    std::cout << "category_" << cat << "\t" << count << "\n";
  return 0;
}

int cmd_match(const RunConfig& config) {
  int errors = ensure_match_files(config);
  if (errors > 0) {
    log_error(std::to_string(errors) +
              " corpus file(s) failed to ingest (recorded in run.json)");
    return 1;
  }
  return 0;
}

int cmd_timeseries(const RunConfig& config) {
  int errors = ensure_match_files(config);
  LexiconSet lexicon = load_configured_lexicon(config);
  LoadedMatch loaded = load_match_files(config);
  BinSpec spec = resolve_bin_spec(config, loaded);

  auto mode = parse_counting_mode(config.mode);
  if (!mode) throw ConfigError("invalid --mode '" + config.mode + "'");
  if (config.window < 1) throw ConfigError("--window must be >= 1");

  std::map<int, FrequencySeries> series;
  if (loaded.table.key_kind == TableKeyKind::document) {
    series = bin_counts(loaded.table, loaded.doc_times, spec, *mode);
  } else {
    std::map<TemporalKey, long long> denominators = loaded.bin_totals;
    if (!config.totals.empty()) denominators = load_totals_table(config.totals);
    series = ngram_series(loaded.table, denominators, spec, *mode);
  }

  std::map<int, FrequencySeries> rel, smoothed;
  for (auto& [pid, s] : series) {
    FrequencySeries r = relative_frequency(std::move(s));
    smoothed.emplace(pid, rolling_average(r, config.window));
    rel.emplace(pid, std::move(r));
  }
  write_file(config.out / "series.tsv",
             serialize_series(rel, smoothed, label_map(lexicon)));
  return errors > 0 ? 1 : 0;
}

int cmd_zipf(const RunConfig& config) {
  int errors = ensure_match_files(config);
  LexiconSet lexicon = load_configured_lexicon(config);
  LoadedMatch loaded = load_match_files(config);

  RankTable ranks = rank_frequencies(loaded.table, lexicon);
  write_file(config.out / "rank.tsv", serialize_rank_table(ranks));
  write_file(config.out / "loglog.tsv", export_loglog(ranks));

  int lo = 1, hi = int(ranks.rows.size());
  bool explicit_range = !config.fit_range.empty();
  if (explicit_range) {
    auto colon = config.fit_range.find(':');
    auto parse_i = [](std::string_view s, int& v) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && p == s.data() + s.size();
    };
    if (colon == std::string::npos ||
        !parse_i(std::string_view(config.fit_range).substr(0, colon), lo) ||
        !parse_i(std::string_view(config.fit_range).substr(colon + 1), hi))
      throw ConfigError("invalid --fit-range '" + config.fit_range +
                        "', expected A:B");
  }
  try {
    PowerLawFit fit = fit_power_law(ranks, lo, hi);
    write_file(config.out / "fit.json", serialize_fit(fit));
    std::cout << "alpha\t" << format_double(fit.alpha) << "\n"
              << "c\t" << format_double(fit.c) << "\n"
              << "r_squared\t" << format_double(fit.r_squared) << "\n"
              << "points\t" << fit.points << "\n";
  } catch (const Error&) {
    if (explicit_range) throw;
    log_warn("rank table too small for a default fit, skipped (pass "
             "--fit-range to force)");
  }
  return errors > 0 ? 1 : 0;
}

int cmd_network(const RunConfig& config) {
  int errors = ensure_match_files(config);
  LoadedMatch loaded = load_match_files(config);
  if (loaded.table.key_kind != TableKeyKind::document)
    throw DataError("network requires a document corpus (bin-keyed match "
                    "tables have no documents to project)");

  NodeKind kind;
  if (config.node_kind == "document") kind = NodeKind::document;
  else if (config.node_kind == "author") kind = NodeKind::author;
  else throw ConfigError("invalid --node-kind '" + config.node_kind + "'");

  if (config.top_k <= 0) throw ConfigError("--top must be positive");
  ProjectionGraph graph = build_cooccurrence_graph(
      loaded.table, kind, loaded.doc_authors, config.max_nodes);
  std::vector<double> scores = betweenness(graph, config.normalized,
                                           effective_workers(config.workers));
  std::vector<CentralNode> top =
      top_central_nodes(graph, scores, config.top_k);

  write_file(config.out / "edges.tsv", serialize_edges(graph));
  write_file(config.out / "centrality.tsv", serialize_centrality(top));
  return errors > 0 ? 1 : 0;
}

int cmd_report(const RunConfig& config) {
  auto run = read_run_file(config.out);
  if (!run)
    throw ConfigError("no " + std::string(kRunFile) + " in " +
                      config.out.string() + "; run match first");
  std::cout << "corpus_id\t" << run->value("corpus_id", "?") << "\n";
  std::cout << "tool_version\t" << run->value("tool_version", "?") << "\n";
  std::cout << "key_kind\t" << run->value("key_kind", "?") << "\n";
  std::cout << "scanned_documents\t"
            << run->value("scanned_documents", 0LL) << "\n";
  std::cout << "matched_proverbs\t" << run->value("matched_proverbs", 0ULL)
            << "\n";
  std::cout << "ingest_errors\t" << ingest_error_count(*run) << "\n";

  fs::path rank_path = config.out / "rank.tsv";
  if (fs::exists(rank_path)) {
    std::string content = read_file(rank_path);
    std::size_t shown = 0, pos = content.find('\n');
    std::cout << "top_ranked:\n";
    while (pos != std::string::npos && shown < 10) {
      std::size_t eol = content.find('\n', pos + 1);
      if (eol == std::string::npos) break;
      std::cout << "  " << content.substr(pos + 1, eol - pos - 1) << "\n";
      pos = eol;
      ++shown;
    }
  }
  fs::path fit_path = config.out / "fit.json";
  if (fs::exists(fit_path)) std::cout << "fit:\n" << read_file(fit_path);
  fs::path central_path = config.out / "centrality.tsv";
  if (fs::exists(central_path)) {
    std::string content = read_file(central_path);
    std::cout << "centrality:\n" << content;
  }
  return 0;
}

} // namespace paremio
