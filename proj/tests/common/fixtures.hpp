#pragma once

// Deterministic synthetic corpora with hand-tallied plans. The tallies in
// the tests were computed from the literal texts below; change one and you
// must re-count.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

namespace fixtures {

namespace fs = std::filesystem;

class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("paremio_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(long(::getpid())));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

inline void put_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline fs::path data_dir() { return fs::path(PAREMIO_DATA_DIR); }

// ---------------------------------------------------------------------------
// Shared fixture lexicon: 8 entries, ids 0..7 in this order.

inline std::string fixture_lexicon_text() {
  return "# fixture lexicon\n"
         "Time flies.\n"
         "Never say never!\n"
         "Hold your tongue\tproverbial_expression\n"
         "The sooner the better\n"
         "Boys will be boys\n"
         "Enough is enough\n"
         "All's well that ends well\n"
         "Safety first\n";
}

inline fs::path write_fixture_lexicon(const fs::path& dir) {
  fs::path p = dir / "lexicon.txt";
  put_file(p, fixture_lexicon_text());
  return p;
}

// ---------------------------------------------------------------------------
// Gutenberg-style plaintext corpus: 20 documents, 16 with birth years in
// three 20-year bins (1780, 1800, 1820), 4 without.

struct PlantedDoc {
  const char* doc_id;
  int birth_year; // < 0 = none
  const char* author;
  const char* title;
  const char* text;
};

inline const std::vector<PlantedDoc>& gutenberg_plan() {
  // hand-tallied occurrence counts per doc are annotated on the right
  static const std::vector<PlantedDoc> plan = {
      {"d00.txt", 1782, "Abbott", "First", "Time flies when you read."}, // tf:1
      {"d01.txt", 1788, "Blake", "Second",
       "Never say never. NEVER, say! Time flies; time flies."}, // nsn:1 tf:2
      {"d02.txt", 1790, "Cole", "Third",
       "Hold your tongue, young man. Hold your tongue!"}, // hyt:2
      {"d03.txt", 1795, "Dryden", "Fourth",
       "They whispered: never say never say never."}, // nsn:2 (overlap)
      {"d04.txt", 1799, "Evans", "Fifth",
       "The sooner the better, as they say."}, // tstb:1
      {"d05.txt", 1801, "Frost", "Sixth",
       "Safety first! Safety first. safety first"}, // sf:3
      {"d06.txt", 1804, "Gaskell", "Seventh",
       "All's well that ends well."}, // awtew:1
      {"d07.txt", 1810, "Hardy", "Eighth",
       "Boys will be boys; the sooner the better."}, // bwbb:1 tstb:1
      {"d08.txt", 1815, "Irving", "Ninth",
       "Enough is enough. Time flies."}, // eie:1 tf:1
      {"d09.txt", 1819, "James", "Tenth",
       "Quite an ordinary chapter without sayings."}, // -
      {"d10.txt", 1822, "Keats", "Eleventh",
       "Frontmatter to be ignored, never say never.\n"
       "*** START OF THE PROJECT GUTENBERG EBOOK ELEVENTH ***\n"
       "Time flies.\n"
       "*** END OF THE PROJECT GUTENBERG EBOOK ELEVENTH ***\n"
       "License text to be ignored, hold your tongue.\n"}, // tf:1 (sentinels)
      {"d11.txt", 1825, "Lamb", "Twelfth",
       "enough is enough is enough"}, // eie:2 (self-overlap)
      {"d12.txt", 1830, "Meredith", "Thirteenth",
       "Hold your tongue."}, // hyt:1
      {"d13.txt", 1835, "Norris", "Fourteenth",
       "Nothing to see here."}, // -
      {"d14.txt", 1838, "Otis", "Fifteenth", "never say never"}, // nsn:1
      {"d15.txt", 1839, "Page", "Sixteenth", ""}, // empty body
      {"d16.txt", -1, "Quill", "Seventeenth",
       "Time flies. Time flies. Time flies."}, // tf:3, no year
      {"d17.txt", -1, "Reade", "Eighteenth",
       "Enough is enough!"}, // eie:1, no year
      {"d18.txt", -1, "Swift", "Nineteenth", "Safety first."}, // sf:1, no year
      {"d19.txt", -1, "Trent", "Twentieth",
       "boys will be boys"}, // bwbb:1, no year
  };
  return plan;
}

// Frozen corpus-wide tallies for the plan above, by normalized phrase:
// {total occurrences, documents containing it}.
inline const std::map<std::string, std::pair<long long, long long>>&
gutenberg_expected_totals() {
  static const std::map<std::string, std::pair<long long, long long>> t = {
      {"time flies", {8, 5}},
      {"never say never", {4, 3}},
      {"hold your tongue", {3, 2}},
      {"the sooner the better", {2, 2}},
      {"boys will be boys", {2, 2}},
      {"enough is enough", {4, 3}},
      {"alls well that ends well", {1, 1}},
      {"safety first", {4, 2}},
  };
  return t;
}

inline fs::path write_gutenberg_fixture(const fs::path& dir) {
  std::string meta = "doc_id\tauthor\tbirth_year\ttitle\n";
  for (const PlantedDoc& d : gutenberg_plan()) {
    put_file(dir / "docs" / d.doc_id, d.text);
    meta += std::string(d.doc_id) + "\t" + d.author + "\t" +
            (d.birth_year > 0 ? std::to_string(d.birth_year) : "") + "\t" +
            d.title + "\n";
  }
  // malformed row for a document that does not exist: loader must skip it
  meta += "zz.txt\tBroken\teighteen-oh-two\tOdd\n";
  put_file(dir / "meta.tsv", meta);
  put_file(dir / "manifest.json",
           "{\n"
           "  \"corpus_id\": \"gutenberg-fixture\",\n"
           "  \"kind\": \"plaintext\",\n"
           "  \"files\": [\"docs/*.txt\"],\n"
           "  \"date_resolution\": \"year\",\n"
           "  \"metadata\": \"meta.tsv\"\n"
           "}\n");
  return dir / "manifest.json";
}

// ---------------------------------------------------------------------------
// NITF-style news corpus: 50 articles across 1992-01 .. 1993-06.
//
// Article plan per month; the first article of every month carries one
// "Boys will be boys." in the body. Every 1993-03 article carries
// "Enough is enough." once; the first 1992-05 article carries it twice.

inline const std::array<int, 18>& news_month_plan() {
  static const std::array<int, 18> plan = {
      4, 3, 5, 2, 1, 3, 2, 4, 1, 2, 3, 4, // 1992 (34 articles)
      2, 1, 4, 3, 2, 4};                  // 1993-01 .. 1993-06 (16)
  return plan;
}

inline std::string news_article_xml(const std::string& date_compact,
                                    const std::string& headline,
                                    const std::string& body) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<nitf>\n"
         "  <head>\n"
         "    <pubdata date.publication=\"" + date_compact + "T000000\"/>\n"
         "  </head>\n"
         "  <body>\n"
         "    <body.head>\n"
         "      <hedline><hl1>" + headline + "</hl1></hedline>\n"
         "    </body.head>\n"
         "    <body.content>\n"
         "      <p>" + body + "</p>\n"
         "    </body.content>\n"
         "  </body>\n"
         "</nitf>\n";
}

inline fs::path write_news_fixture(const fs::path& dir) {
  const auto& plan = news_month_plan();
  int article_no = 0;
  for (std::size_t m = 0; m < plan.size(); ++m) {
    int year = m < 12 ? 1992 : 1993;
    int month = int(m < 12 ? m + 1 : m - 11);
    for (int a = 0; a < plan[m]; ++a) {
      char date[24], id[32];
      std::snprintf(date, sizeof date, "%04d%02d%02d", year, month,
                    3 + 4 * a);
      std::snprintf(id, sizeof id, "a%03d.xml", article_no++);
      std::string body = "Small town council met on Tuesday to discuss "
                         "the harvest and the weather.";
      if (a == 0) body += " Boys will be boys.";
      if (year == 1993 && month == 3) body += " Enough is enough.";
      if (year == 1992 && month == 5 && a == 0)
        body += " Enough is enough. Enough is enough.";
      put_file(dir / "articles" / id,
               news_article_xml(date, "Council notes", body));
    }
  }
  put_file(dir / "manifest.json",
           "{\n"
           "  \"corpus_id\": \"nyt-fixture\",\n"
           "  \"kind\": \"news_xml\",\n"
           "  \"files\": [\"articles/*.xml\"],\n"
           "  \"date_resolution\": \"day\"\n"
           "}\n");
  return dir / "manifest.json";
}

// ---------------------------------------------------------------------------
// Daily feed: 10 days, two 3-grams, three case variants each. Counts are
// linear in the day index so per-day sums are easy to verify; every line of
// a day carries the same period total. Rank column: best variant rank wins.

inline const std::vector<std::string>& feed_days() {
  static const std::vector<std::string> days = {
      "2010-06-01", "2010-06-02", "2010-06-03", "2010-06-04", "2010-06-05",
      "2010-06-06", "2010-06-07", "2010-06-08", "2010-06-09", "2010-06-10"};
  return days;
}

inline long long feed_expected_nsn(int day_index) { return 175 + 3 * day_index; }
inline long long feed_expected_eie(int day_index) { return 55 + 3 * day_index; }
inline long long feed_day_total(int day_index) {
  return 1000000 + 1000 * day_index;
}

inline fs::path write_feed_fixture(const fs::path& dir) {
  std::string feed;
  const auto& days = feed_days();
  for (int d = 0; d < int(days.size()); ++d) {
    long long total = feed_day_total(d);
    feed += days[d] + ", Never Say Never, " + std::to_string(100 + d) +
            ", 63, " + std::to_string(total) + "\n";
    feed += days[d] + ", never say never, " + std::to_string(50 + d) +
            ", 70, " + std::to_string(total) + "\n";
    feed += days[d] + ", NEVER SAY NEVER, " + std::to_string(25 + d) +
            ", 90, " + std::to_string(total) + "\n";
    feed += days[d] + ", Enough is Enough, " + std::to_string(40 + d) +
            ", 120, " + std::to_string(total) + "\n";
    feed += days[d] + ", enough is enough, " + std::to_string(10 + d) +
            ", 150, " + std::to_string(total) + "\n";
    feed += days[d] + ", ENOUGH IS ENOUGH, " + std::to_string(5 + d) +
            ", 200, " + std::to_string(total) + "\n";
  }
  put_file(dir / "feed.csv", feed);
  put_file(dir / "manifest.json",
           "{\n"
           "  \"corpus_id\": \"twitter-fixture\",\n"
           "  \"kind\": \"daily_feed\",\n"
           "  \"files\": [\"feed.csv\"],\n"
           "  \"date_resolution\": \"day\",\n"
           "  \"ngram_length\": 3\n"
           "}\n");
  return dir / "manifest.json";
}

// ---------------------------------------------------------------------------
// Year-level n-gram TSV in the simplified one-year-per-line layout.
// `lines` rows are generated; rows matching the fixture lexicon's 3-grams
// appear for ngram indices 0 and 1. Returns the sum of occurrence counts.

inline long long write_ngram_tsv_fixture(const fs::path& dir, int lines) {
  std::string tsv;
  long long total = 0;
  for (int i = 0; i < lines; ++i) {
    int year = 1990 + (i / 10) % 10;
    long long occ = 40 + (i * 7) % 400;
    long long docs = 1 + occ / 4;
    std::string ngram;
    switch (i % 10) {
      case 0: ngram = "never say never"; break;
      case 1: ngram = "Enough is Enough"; break; // case variant on purpose
      default: {
        char buf[48];
        std::snprintf(buf, sizeof buf, "filler phrase %c%d",
                      char('a' + i % 26), i % 7);
        ngram = buf;
        break;
      }
    }
    tsv += ngram + "\t" + std::to_string(year) + "\t" + std::to_string(occ) +
           "\t" + std::to_string(docs) + "\n";
    total += occ;
  }
  put_file(dir / "ngrams.tsv", tsv);

  std::string totals = "# volumes per year\n";
  for (int y = 1990; y <= 1999; ++y)
    totals += std::to_string(y) + "\t" + std::to_string(5000 + 11 * (y - 1990)) +
              "\n";
  put_file(dir / "totals.tsv", totals);
  put_file(dir / "manifest.json",
           "{\n"
           "  \"corpus_id\": \"google-fixture\",\n"
           "  \"kind\": \"ngram_tsv\",\n"
           "  \"files\": [\"ngrams.tsv\"],\n"
           "  \"date_resolution\": \"year\",\n"
           "  \"totals\": \"totals.tsv\",\n"
           "  \"ngram_length\": 3\n"
           "}\n");
  return total;
}

} // namespace fixtures
