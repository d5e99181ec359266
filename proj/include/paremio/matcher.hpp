#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "paremio/corpus.hpp"
#include "paremio/lexicon.hpp"

namespace paremio {

/// One pattern occurrence: `position` is the token offset of the match
/// start; position + pattern length never exceeds the document length.
struct MatchEvent {
  int proverb_id = 0;
  std::size_t position = 0;

  friend bool operator==(const MatchEvent&, const MatchEvent&) = default;
  friend auto operator<=>(const MatchEvent&, const MatchEvent&) = default;
};

/// Token-level multi-pattern automaton (Aho-Corasick over token ids).
/// Matching is exact on token boundaries: [time, flies] cannot fire inside
/// the token "sometimes". Tokens that appear in no pattern short-circuit
/// to the root state. Immutable after build; shareable across threads.
class MatchIndex {
public:
  /// Deterministic construction; throws DataError on an empty lexicon.
  static MatchIndex build(const LexiconSet& lexicon);

  /// Every occurrence of every pattern, including overlapping and nested
  /// occurrences of distinct patterns; the same pattern is reported at
  /// every distinct start offset. Sorted by (position, proverb_id).
  std::vector<MatchEvent> scan(std::span<const std::string> tokens) const;

  std::size_t pattern_count() const { return pattern_count_; }
  std::size_t node_count() const { return nodes_.size(); }

private:
  struct Node {
    std::int32_t edges_begin = 0;
    std::int32_t edges_end = 0;
    std::int32_t fail = 0;
    std::int32_t out_link = 0; // nearest fail-ancestor holding a pattern
    std::int32_t pattern = -1; // proverb id ending here (at most one)
    std::int32_t depth = 0;    // equals pattern length on terminal nodes
  };

  std::int32_t edge_target(std::int32_t node, std::uint32_t token) const;

  std::unordered_map<std::string, std::uint32_t> vocab_;
  std::vector<Node> nodes_;
  std::vector<std::pair<std::uint32_t, std::int32_t>> edges_;
  std::size_t pattern_count_ = 0;
};

struct MatchCell {
  long long occurrences = 0;
  long long documents = 0; // presence count (or volume count for bin keys)
};

enum class TableKeyKind { document, bin };

/// Aggregated match counts keyed by (proverb, document) for scanned corpora
/// or (proverb, temporal bin) for pre-aggregated ones. Ordered maps keep
/// serialization canonical.
struct MatchTable {
  std::string corpus_id;
  TableKeyKind key_kind = TableKeyKind::document;
  long long scanned_documents = 0;
  std::map<int, std::map<std::string, MatchCell>> cells;

  void add(int proverb_id, const std::string& key, long long occurrences,
           long long documents);
  /// Elementwise addition; associative and commutative, so partition-
  /// independent.
  void merge(const MatchTable& other);

  long long total_occurrences(int proverb_id) const;
  long long document_frequency(int proverb_id) const;
};

/// Scans documents (optionally in parallel) into one MatchTable. The result
/// is identical for any worker count or document order. Throws DataError on
/// duplicate doc_ids, which would double count.
MatchTable scan_corpus(const MatchIndex& index,
                       std::span<const DocumentRecord> docs,
                       const std::string& corpus_id, int workers = 1);

/// Joins pre-aggregated observations against the lexicon's entries of
/// exactly `ngram_length` tokens (0 = take the length of the first
/// observation). Mixed-length observation streams are an error.
MatchTable match_preaggregated(const LexiconSet& lexicon,
                               std::span<const NgramObservation> observations,
                               const std::string& corpus_id,
                               int ngram_length = 0);

// Canonical delimited form (TSV with header); a versioned binary cache may
// wrap it but this layout is the interchange format.
std::string serialize_match_table(const MatchTable& table);
MatchTable parse_match_table(std::string_view tsv, std::string corpus_id,
                             TableKeyKind kind);

} // namespace paremio
