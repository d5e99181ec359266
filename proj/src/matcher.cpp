#include "paremio/matcher.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <deque>
#include <thread>
#include <unordered_set>

#include "paremio/errors.hpp"
#include "paremio/normalize.hpp"
#include "paremio/table_io.hpp"

namespace paremio {

MatchIndex MatchIndex::build(const LexiconSet& lexicon) {
  if (lexicon.empty())
    throw DataError("cannot build a match index from an empty lexicon");

  MatchIndex idx;
  idx.pattern_count_ = lexicon.size();

  // Build-time trie with ordered children, frozen to CSR afterwards.
  struct TrieNode {
    std::map<std::uint32_t, std::int32_t> children;
    std::int32_t pattern = -1;
    std::int32_t depth = 0;
  };
  std::vector<TrieNode> trie(1);

  for (const ProverbEntry& entry : lexicon.entries()) {
    std::int32_t node = 0;
    for (const std::string& token : entry.normalized_tokens) {
      auto [it, inserted] =
          idx.vocab_.emplace(token, static_cast<std::uint32_t>(idx.vocab_.size()));
      std::uint32_t tok = it->second;
      auto child = trie[node].children.find(tok);
      if (child == trie[node].children.end()) {
        trie.push_back(TrieNode{{}, -1, trie[node].depth + 1});
        child = trie[node].children.emplace(tok, std::int32_t(trie.size() - 1)).first;
      }
      node = child->second;
    }
    // dedup in the lexicon guarantees one pattern per terminal node
    trie[node].pattern = entry.id;
  }

  idx.nodes_.resize(trie.size());
  for (std::size_t i = 0; i < trie.size(); ++i) {
    Node& n = idx.nodes_[i];
    n.edges_begin = static_cast<std::int32_t>(idx.edges_.size());
    for (auto [tok, child] : trie[i].children) idx.edges_.emplace_back(tok, child);
    n.edges_end = static_cast<std::int32_t>(idx.edges_.size());
    n.pattern = trie[i].pattern;
    n.depth = trie[i].depth;
  }

  // BFS failure links; out_link skips straight to the nearest suffix node
  // that carries a pattern.
  std::deque<std::int32_t> queue;
  for (auto [tok, child] : trie[0].children) {
    idx.nodes_[child].fail = 0;
    idx.nodes_[child].out_link = 0;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    std::int32_t node = queue.front();
    queue.pop_front();
    for (auto [tok, child] : trie[node].children) {
      std::int32_t f = idx.nodes_[node].fail;
      while (f != 0 && idx.edge_target(f, tok) < 0) f = idx.nodes_[f].fail;
      std::int32_t target = idx.edge_target(f, tok);
      idx.nodes_[child].fail = (target >= 0 && target != child) ? target : 0;
      std::int32_t via = idx.nodes_[child].fail;
      idx.nodes_[child].out_link =
          idx.nodes_[via].pattern >= 0 ? via : idx.nodes_[via].out_link;
      queue.push_back(child);
    }
  }
  return idx;
}

std::int32_t MatchIndex::edge_target(std::int32_t node,
                                     std::uint32_t token) const {
  const auto* begin = edges_.data() + nodes_[node].edges_begin;
  const auto* end = edges_.data() + nodes_[node].edges_end;
  const auto* it = std::lower_bound(
      begin, end, token,
      [](const std::pair<std::uint32_t, std::int32_t>& e, std::uint32_t t) {
        return e.first < t;
      });
  return (it != end && it->first == token) ? it->second : -1;
}

std::vector<MatchEvent> MatchIndex::scan(
    std::span<const std::string> tokens) const {
  std::vector<MatchEvent> events;
  std::int32_t state = 0;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    auto vit = vocab_.find(tokens[pos]);
    if (vit == vocab_.end()) {
      state = 0; // token occurs in no pattern
      continue;
    }
    std::uint32_t tok = vit->second;
    std::int32_t next = edge_target(state, tok);
    while (next < 0 && state != 0) {
      state = nodes_[state].fail;
      next = edge_target(state, tok);
    }
    state = next >= 0 ? next : 0;

    std::int32_t n =
        nodes_[state].pattern >= 0 ? state : nodes_[state].out_link;
    while (n != 0) {
      events.push_back(
          {nodes_[n].pattern, pos + 1 - std::size_t(nodes_[n].depth)});
      n = nodes_[n].out_link;
    }
  }
  std::sort(events.begin(), events.end(),
            [](const MatchEvent& a, const MatchEvent& b) {
              return a.position != b.position ? a.position < b.position
                                              : a.proverb_id < b.proverb_id;
            });
  return events;
}

void MatchTable::add(int proverb_id, const std::string& key,
                     long long occurrences, long long documents) {
  MatchCell& cell = cells[proverb_id][key];
  cell.occurrences += occurrences;
  cell.documents += documents;
}

void MatchTable::merge(const MatchTable& other) {
  scanned_documents += other.scanned_documents;
  for (const auto& [pid, keys] : other.cells)
    for (const auto& [key, cell] : keys)
      add(pid, key, cell.occurrences, cell.documents);
}

long long MatchTable::total_occurrences(int proverb_id) const {
  auto it = cells.find(proverb_id);
  if (it == cells.end()) return 0;
  long long sum = 0;
  for (const auto& [key, cell] : it->second) sum += cell.occurrences;
  return sum;
}

long long MatchTable::document_frequency(int proverb_id) const {
  auto it = cells.find(proverb_id);
  if (it == cells.end()) return 0;
  long long sum = 0;
  for (const auto& [key, cell] : it->second) sum += cell.documents;
  return sum;
}

namespace {

void scan_into(const MatchIndex& index, const DocumentRecord& doc,
               MatchTable& table) {
  std::vector<MatchEvent> events = index.scan(doc.tokens);
  // events are sorted by proverb only after grouping; count per proverb
  std::map<int, long long> per_proverb;
  for (const MatchEvent& e : events) ++per_proverb[e.proverb_id];
  for (auto [pid, occ] : per_proverb) table.add(pid, doc.doc_id, occ, 1);
  ++table.scanned_documents;
}

} // namespace

MatchTable scan_corpus(const MatchIndex& index,
                       std::span<const DocumentRecord> docs,
                       const std::string& corpus_id, int workers) {
  {
    std::unordered_set<std::string_view> seen;
    for (const DocumentRecord& d : docs)
      if (!seen.insert(d.doc_id).second)
        throw DataError("duplicate doc_id '" + d.doc_id +
                        "' would double count");
  }

  MatchTable table;
  table.corpus_id = corpus_id;
  table.key_kind = TableKeyKind::document;

  workers = std::max(1, workers);
  if (workers == 1 || docs.size() < 2) {
    for (const DocumentRecord& doc : docs) scan_into(index, doc, table);
    return table;
  }

  std::atomic<std::size_t> next{0};
  std::vector<MatchTable> partials(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = next.fetch_add(1); i < docs.size();
           i = next.fetch_add(1))
        scan_into(index, docs[i], partials[std::size_t(w)]);
    });
  }
  for (std::thread& t : pool) t.join();
  // integer cells: merge order cannot affect the result
  for (const MatchTable& p : partials) table.merge(p);
  return table;
}

MatchTable match_preaggregated(const LexiconSet& lexicon,
                               std::span<const NgramObservation> observations,
                               const std::string& corpus_id,
                               int ngram_length) {
  MatchTable table;
  table.corpus_id = corpus_id;
  table.key_kind = TableKeyKind::bin;
  if (observations.empty()) return table;

  int n = ngram_length > 0 ? ngram_length
                           : static_cast<int>(observations.front().tokens.size());
  for (const NgramObservation& obs : observations)
    if (static_cast<int>(obs.tokens.size()) != n)
      throw DataError("mixed-length observation stream: expected " +
                      std::to_string(n) + "-grams, found a " +
                      std::to_string(obs.tokens.size()) + "-gram '" +
                      join_tokens(obs.tokens) + "'");

  LexiconSet filtered = filter_by_length(lexicon, n);
  for (const NgramObservation& obs : observations) {
    const ProverbEntry* entry = filtered.find_by_key(join_tokens(obs.tokens));
    if (!entry) continue;
    table.add(entry->id, obs.when.to_string(), obs.occurrence_count,
              obs.document_count.value_or(0));
  }
  return table;
}

std::string serialize_match_table(const MatchTable& table) {
  std::string out = "proverb_id\tkey\toccurrences\tdocuments\n";
  for (const auto& [pid, keys] : table.cells)
    for (const auto& [key, cell] : keys) {
      out += std::to_string(pid);
      out += '\t';
      out += key;
      out += '\t';
      out += std::to_string(cell.occurrences);
      out += '\t';
      out += std::to_string(cell.documents);
      out += '\n';
    }
  return out;
}

MatchTable parse_match_table(std::string_view tsv, std::string corpus_id,
                             TableKeyKind kind) {
  MatchTable table;
  table.corpus_id = std::move(corpus_id);
  table.key_kind = kind;
  std::size_t pos = 0;
  bool header = true;
  int line_no = 0;
  while (pos < tsv.size()) {
    std::size_t eol = tsv.find('\n', pos);
    if (eol == std::string_view::npos) eol = tsv.size();
    std::string_view line = tsv.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    auto f = split_fields(line, '\t');
    long long pid, occ, docs;
    auto ll = [](std::string_view s, long long& v) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && p == s.data() + s.size();
    };
    if (f.size() != 4 || !ll(f[0], pid) || !ll(f[2], occ) || !ll(f[3], docs))
      throw DataError("match table line " + std::to_string(line_no) +
                      ": malformed row");
    table.add(static_cast<int>(pid), std::string(f[1]), occ, docs);
  }
  return table;
}

} // namespace paremio
