#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "common/fixtures.hpp"
#include "common/oracles.hpp"
#include "paremio/errors.hpp"
#include "paremio/matcher.hpp"
#include "paremio/normalize.hpp"

using namespace paremio;

namespace {

LexiconSet lexicon_of(const std::vector<std::string>& phrases) {
  std::string source;
  for (const std::string& p : phrases) source += p + "\n";
  std::istringstream in(source);
  return load_lexicon(in, "inline");
}

DocumentRecord doc_of(const std::string& id,
                      const std::vector<std::string>& tokens) {
  DocumentRecord d;
  d.doc_id = id;
  d.tokens = tokens;
  return d;
}

std::vector<std::pair<int, std::vector<std::string>>> patterns_of(
    const LexiconSet& lex) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  for (const ProverbEntry& e : lex.entries())
    out.emplace_back(e.id, e.normalized_tokens);
  return out;
}

} // namespace

TEST_CASE("single pattern index matches exactly that sequence") {
  LexiconSet lex = lexicon_of({"never say never"});
  MatchIndex idx = MatchIndex::build(lex);
  CHECK(idx.scan(std::vector<std::string>{"never", "say", "never"}) ==
        std::vector<MatchEvent>{{0, 0}});
  CHECK(idx.scan(std::vector<std::string>{"never", "say", "die"}).empty());
  CHECK(idx.scan(std::vector<std::string>{"say", "never"}).empty());
}

TEST_CASE("suffix-nested patterns both fire") {
  LexiconSet lex = lexicon_of({"a b", "a b c"});
  MatchIndex idx = MatchIndex::build(lex);
  auto events = idx.scan(std::vector<std::string>{"a", "b", "c"});
  CHECK(events == std::vector<MatchEvent>{{0, 0}, {1, 0}});
}

TEST_CASE("every start offset of a repeating pattern counts") {
  LexiconSet lex = lexicon_of({"time flies"});
  MatchIndex idx = MatchIndex::build(lex);
  auto events =
      idx.scan(std::vector<std::string>{"time", "flies", "time", "flies"});
  CHECK(events == std::vector<MatchEvent>{{0, 0}, {0, 2}});

  LexiconSet nsn = lexicon_of({"never say never"});
  MatchIndex idx2 = MatchIndex::build(nsn);
  auto overlap = idx2.scan(
      std::vector<std::string>{"never", "say", "never", "say", "never"});
  CHECK(overlap == std::vector<MatchEvent>{{0, 0}, {0, 2}});
}

TEST_CASE("token boundaries are exact") {
  LexiconSet lex = lexicon_of({"time flies"});
  MatchIndex idx = MatchIndex::build(lex);
  CHECK(idx.scan(std::vector<std::string>{"sometimes", "flies"}).empty());
  CHECK(idx.scan(std::vector<std::string>{"time", "fliesaway"}).empty());
}

TEST_CASE("empty lexicon cannot build an index") {
  LexiconSet empty;
  CHECK_THROWS_AS(MatchIndex::build(empty), DataError);
}

TEST_CASE("automaton equals the sliding-window oracle on random inputs") {
  std::mt19937 rng(777001);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d",
                                             "e", "f", "g", "h"};
  std::uniform_int_distribution<std::size_t> tok(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> plen(1, 5);

  for (int trial = 0; trial < 20; ++trial) {
    // 30 random patterns (deduplicated by the lexicon loader)
    std::vector<std::string> phrases;
    for (int p = 0; p < 30; ++p) {
      std::string phrase;
      int n = plen(rng);
      for (int i = 0; i < n; ++i) {
        if (i) phrase += ' ';
        phrase += alphabet[tok(rng)];
      }
      phrases.push_back(phrase);
    }
    LexiconSet lex = lexicon_of(phrases);
    MatchIndex idx = MatchIndex::build(lex);
    auto pats = patterns_of(lex);

    std::vector<std::string> doc(200);
    for (auto& t : doc) t = alphabet[tok(rng)];

    auto got = idx.scan(doc);
    auto want = oracles::naive_match(pats, doc);
    REQUIRE(got == want);
  }
}

TEST_CASE("scan_corpus aggregates occurrences and document frequency") {
  LexiconSet lex = lexicon_of({"time flies"});
  MatchIndex idx = MatchIndex::build(lex);

  SUBCASE("two documents with one occurrence each") {
    std::vector<DocumentRecord> docs = {
        doc_of("a", {"time", "flies"}),
        doc_of("b", {"ah", "time", "flies"}),
    };
    MatchTable t = scan_corpus(idx, docs, "c");
    CHECK(t.total_occurrences(0) == 2);
    CHECK(t.document_frequency(0) == 2);
    CHECK(t.scanned_documents == 2);
  }

  SUBCASE("one document with two occurrences") {
    std::vector<DocumentRecord> docs = {
        doc_of("a", {"time", "flies", "time", "flies"})};
    MatchTable t = scan_corpus(idx, docs, "c");
    CHECK(t.total_occurrences(0) == 2);
    CHECK(t.document_frequency(0) == 1);
  }

  SUBCASE("duplicate doc ids are rejected") {
    std::vector<DocumentRecord> docs = {doc_of("a", {"x"}), doc_of("a", {"y"})};
    CHECK_THROWS_AS(scan_corpus(idx, docs, "c"), DataError);
  }
}

TEST_CASE("scan_corpus is order- and partition-invariant") {
  std::istringstream lexin(fixtures::fixture_lexicon_text());
  LexiconSet lex = load_lexicon(lexin, "fixture");
  MatchIndex idx = MatchIndex::build(lex);

  std::vector<DocumentRecord> docs;
  for (const fixtures::PlantedDoc& p : fixtures::gutenberg_plan())
    docs.push_back(doc_of(p.doc_id, normalize_text(p.text)));

  MatchTable serial = scan_corpus(idx, docs, "c", 1);
  std::string canonical = serialize_match_table(serial);

  std::vector<DocumentRecord> shuffled = docs;
  std::mt19937 rng(5);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(serialize_match_table(scan_corpus(idx, shuffled, "c", 1)) == canonical);
  CHECK(serialize_match_table(scan_corpus(idx, docs, "c", 2)) == canonical);
  CHECK(serialize_match_table(scan_corpus(idx, docs, "c", 8)) == canonical);
}

TEST_CASE("fixture corpus tallies match the hand counts") {
  std::istringstream lexin(fixtures::fixture_lexicon_text());
  LexiconSet lex = load_lexicon(lexin, "fixture");
  MatchIndex idx = MatchIndex::build(lex);

  // through the adapter, so d10's boilerplate sentinels are honored
  fixtures::TempDir tmp("tally");
  fixtures::write_gutenberg_fixture(tmp.path());
  CorpusManifest manifest = CorpusManifest::load(tmp.path() / "manifest.json");
  auto docs = ingest_plaintext_corpus(manifest, nullptr);
  MatchTable table = scan_corpus(idx, docs, "c");

  for (const auto& [phrase, expected] : fixtures::gutenberg_expected_totals()) {
    const ProverbEntry* e = lex.find_by_key(phrase);
    REQUIRE(e != nullptr);
    CHECK(table.total_occurrences(e->id) == expected.first);
    CHECK(table.document_frequency(e->id) == expected.second);
  }
}

TEST_CASE("adding a document never decreases counts") {
  std::istringstream lexin(fixtures::fixture_lexicon_text());
  LexiconSet lex = load_lexicon(lexin, "fixture");
  MatchIndex idx = MatchIndex::build(lex);

  std::vector<DocumentRecord> docs = {
      doc_of("a", {"time", "flies"}),
      doc_of("b", {"enough", "is", "enough"}),
  };
  MatchTable before = scan_corpus(idx, docs, "c");
  docs.push_back(doc_of("extra", {"time", "flies", "safety", "first"}));
  MatchTable after = scan_corpus(idx, docs, "c");
  for (const auto& [pid, keys] : before.cells) {
    CHECK(after.total_occurrences(pid) >= before.total_occurrences(pid));
    CHECK(after.document_frequency(pid) >= before.document_frequency(pid));
  }
}

TEST_CASE("normalization perturbations cannot change the table") {
  std::istringstream lexin(fixtures::fixture_lexicon_text());
  LexiconSet lex = load_lexicon(lexin, "fixture");
  MatchIndex idx = MatchIndex::build(lex);

  auto table_for = [&](const std::string& text) {
    std::vector<DocumentRecord> docs = {doc_of("a", normalize_text(text))};
    return serialize_match_table(scan_corpus(idx, docs, "c"));
  };
  CHECK(table_for("Time flies, enough is enough.") ==
        table_for("TIME FLIES -- enough!!! is... enough"));
  CHECK(table_for("never say never") == table_for("Never, say; NEVER?"));
}

TEST_CASE("pre-aggregated observations join by exact tokens") {
  LexiconSet lex = lexicon_of({"never say never", "time flies"});

  NgramObservation hit;
  hit.tokens = {"never", "say", "never"};
  hit.when = TemporalKey::of_year(1995);
  hit.occurrence_count = 412;
  hit.document_count = 300;

  NgramObservation miss;
  miss.tokens = {"say", "say", "say"};
  miss.when = TemporalKey::of_year(1995);
  miss.occurrence_count = 10;

  std::vector<NgramObservation> obs = {hit, miss};
  MatchTable t = match_preaggregated(lex, obs, "g", 3);
  CHECK(t.key_kind == TableKeyKind::bin);
  REQUIRE(t.cells.count(0) == 1);
  CHECK(t.cells.at(0).at("1995").occurrences == 412);
  CHECK(t.cells.at(0).at("1995").documents == 300);
  CHECK(t.cells.size() == 1); // the miss joins nothing

  NgramObservation wrong_len;
  wrong_len.tokens = {"time", "flies"};
  wrong_len.when = TemporalKey::of_year(1995);
  std::vector<NgramObservation> mixed = {hit, wrong_len};
  CHECK_THROWS_AS(match_preaggregated(lex, mixed, "g", 3), DataError);
}

TEST_CASE("generated observations join exactly the planted matches") {
  fixtures::TempDir tmp("join");
  fixtures::write_ngram_tsv_fixture(tmp.path(), 100);
  CorpusManifest manifest = CorpusManifest::load(tmp.path() / "manifest.json");
  auto obs = ingest_ngram_tsv(manifest, nullptr);
  REQUIRE(obs.size() == 100);

  LexiconSet lex = lexicon_of({"never say never", "enough is enough"});
  MatchTable t = match_preaggregated(lex, obs, "g", 3);
  // ngram indices 0 and 1 of every block of 10 are the planted matches
  long long planted = 0, joined = 0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    std::string key = join_tokens(obs[i].tokens);
    if (key == "never say never" || key == "enough is enough")
      planted += obs[i].occurrence_count;
  }
  for (const auto& [pid, keys] : t.cells)
    for (const auto& [bin, cell] : keys) joined += cell.occurrences;
  CHECK(planted == joined);
  CHECK(t.cells.size() == 2);
}

TEST_CASE("serialized table round-trips") {
  LexiconSet lex = lexicon_of({"time flies"});
  MatchIndex idx = MatchIndex::build(lex);
  std::vector<DocumentRecord> docs = {
      doc_of("a", {"time", "flies"}),
      doc_of("b", {"time", "flies", "time", "flies"})};
  MatchTable t = scan_corpus(idx, docs, "c");
  std::string tsv = serialize_match_table(t);
  MatchTable back = parse_match_table(tsv, "c", TableKeyKind::document);
  CHECK(serialize_match_table(back) == tsv);
}

TEST_CASE("large synthetic lexicon builds quickly") {
  std::string source;
  for (int i = 0; i < 14000; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "generated saying number %d x%d", i, i % 9);
    source += buf;
    source += '\n';
  }
  std::istringstream in(source);
  LexiconSet lex = load_lexicon(in, "big");
  REQUIRE(lex.size() == 14000);

  auto start = std::chrono::steady_clock::now();
  MatchIndex idx = MatchIndex::build(lex);
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  CHECK(idx.pattern_count() == 14000);
  CHECK(elapsed < 1000); // spec'd build budget: under a second
}
