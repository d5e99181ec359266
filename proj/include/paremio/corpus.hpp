#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paremio/dates.hpp"

namespace paremio {

/// One document from a document-level corpus, already normalized.
struct DocumentRecord {
  std::string doc_id;
  std::string corpus_id;
  std::optional<TemporalKey> when;
  std::string author;
  std::string title;
  std::vector<std::string> tokens;
  bool missing_date_flagged = false;
};

/// One row from a pre-aggregated n-gram corpus.
struct NgramObservation {
  std::vector<std::string> tokens;
  TemporalKey when;
  long long occurrence_count = 0;
  std::optional<long long> document_count;
  std::optional<long long> rank;
  std::optional<long long> total_in_period;
};

enum class CorpusKind { plaintext, news_xml, ngram_tsv, daily_feed };

/// Corpus manifest (JSON): corpus_id, kind, file globs, date resolution,
/// and per-kind extras (metadata table for plaintext, totals table for
/// n-gram corpora, default n-gram length). Globs are resolved relative
/// to the manifest's directory and support '*' and '?' per path segment.
struct CorpusManifest {
  std::string corpus_id;
  CorpusKind kind = CorpusKind::plaintext;
  std::vector<std::string> file_globs;
  Resolution date_resolution = Resolution::year;
  std::filesystem::path root;
  std::filesystem::path metadata; // plaintext: doc_id/author/birth_year/title
  std::filesystem::path totals;   // optional bin -> denominator table
  int ngram_length = 0;           // 0 = unspecified

  static CorpusManifest load(const std::filesystem::path& file);

  /// Matching files, sorted by relative path; ingestion order and hashes
  /// are manifest-order-independent because of this.
  std::vector<std::filesystem::path> resolve_files() const;
};

/// Per-file ingestion failures; ingestion continues past them.
struct IngestReport {
  std::vector<std::string> errors;
};

// Plaintext books: one DocumentRecord per file, temporal key = author birth
// year from the metadata table when available. Documents without a birth
// year are still emitted (corpus totals include them; time series do not).
// A recognized "*** START OF/END OF ..." boilerplate sentinel pair is
// stripped when present.
std::vector<DocumentRecord> ingest_plaintext_corpus(const CorpusManifest& m,
                                                    IngestReport* report = nullptr);

// NITF-style news articles: temporal key = publication date, tokens from
// headline + body. Articles without a parseable date are emitted and
// flagged.
std::vector<DocumentRecord> ingest_news_xml(const CorpusManifest& m,
                                            IngestReport* report = nullptr);

// Year-level n-gram TSV: ngram <TAB> year <TAB> occurrences <TAB> documents.
std::vector<NgramObservation> ingest_ngram_tsv(const CorpusManifest& m,
                                               IngestReport* report = nullptr);

// Daily feed: date, ngram, count[, rank[, total]] (comma or tab separated).
// Case variants of the same n-gram on the same day are merged: counts sum,
// rank keeps the best (minimum), total keeps the maximum.
std::vector<NgramObservation> ingest_daily_ngram_feed(const CorpusManifest& m,
                                                      IngestReport* report = nullptr);

// Single-file parsers behind the manifest-level adapters.
DocumentRecord parse_plaintext_file(const std::filesystem::path& file,
                                    const std::string& doc_id,
                                    const std::string& corpus_id);
DocumentRecord parse_news_xml_file(const std::filesystem::path& file,
                                   const std::string& doc_id,
                                   const std::string& corpus_id);
std::vector<NgramObservation> parse_ngram_tsv_file(
    const std::filesystem::path& file, IngestReport* report);
std::vector<NgramObservation> parse_daily_feed_file(
    const std::filesystem::path& file, IngestReport* report);

/// Case-insensitive merge for daily-feed observations; occurrence mass is
/// conserved. Output sorted by (date, tokens).
std::vector<NgramObservation> merge_case_variants(
    std::vector<NgramObservation> observations);

/// Per-period totals found in a feed's optional total column.
std::map<TemporalKey, long long> feed_period_totals(
    const std::vector<NgramObservation>& observations);

/// Denominator table: bin <TAB> total, '#' comments allowed.
std::map<TemporalKey, long long> load_totals_table(
    const std::filesystem::path& path);

} // namespace paremio
