#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "paremio/normalize.hpp"

using namespace paremio;
using tokens_t = std::vector<std::string>;

TEST_CASE("contractions collapse and case folds") {
  CHECK(normalize_text("All's well that ends well") ==
        tokens_t{"alls", "well", "that", "ends", "well"});
  CHECK(normalize_text("enough is enough!") ==
        tokens_t{"enough", "is", "enough"});
  CHECK(normalize_text("Time flies... TIME FLIES") ==
        tokens_t{"time", "flies", "time", "flies"});
}

TEST_CASE("punctuation is deleted, not replaced") {
  CHECK(normalize_text("mother-in-law") == tokens_t{"motherinlaw"});
  CHECK(normalize_text("don't") == tokens_t{"dont"});
  CHECK(normalize_text("a--b  c") == tokens_t{"ab", "c"});
  CHECK(normalize_text("!!! ... ???").empty());
  CHECK(normalize_text("").empty());
}

TEST_CASE("digits and mixed tokens survive") {
  CHECK(normalize_text("Catch-22 was published in 1961.") ==
        tokens_t{"catch22", "was", "published", "in", "1961"});
}

TEST_CASE("unicode punctuation and whitespace") {
  // curly apostrophe (U+2019) deletes like the ASCII one
  CHECK(normalize_text("All\xE2\x80\x99s well") == tokens_t{"alls", "well"});
  // em dash (U+2014) deletes, joining halves like a hyphen
  CHECK(normalize_text("well\xE2\x80\x94" "done") == tokens_t{"welldone"});
  // no-break space (U+00A0) separates
  CHECK(normalize_text("time\xC2\xA0" "flies") == tokens_t{"time", "flies"});
  // Latin-1 letters kept, uppercase folded
  CHECK(normalize_text("\xC3\x89mile Zola") ==
        tokens_t{"\xC3\xA9mile", "zola"});
  // malformed bytes delete like punctuation; tokens stay valid UTF-8
  CHECK(normalize_text("a\xFF b") == tokens_t{"a", "b"});
  CHECK(normalize_text("\xE2!\x80\x94x") == tokens_t{"x"});
}

TEST_CASE("idempotent at the string level") {
  const std::vector<std::string> samples = {
      "All's well that ends well",
      "  spaced   out\ttabs\nnewlines  ",
      "MiXeD CaSe with 123 numbers!",
      "curly \xE2\x80\x9Cquotes\xE2\x80\x9D and \xE2\x80\x98more\xE2\x80\x99",
      "\xC3\x89mile; c'est la vie \xE2\x80\x94 naturellement",
  };
  for (const std::string& s : samples) {
    tokens_t once = normalize_text(s);
    CHECK(normalize_text(join_tokens(once)) == once);
  }
}

TEST_CASE("idempotence holds on random ascii strings") {
  std::mt19937 rng(424242);
  const std::string alphabet =
      "abcXYZ 019-'!?.\t\n;:~@#$%^&*()[]{}<>/\\\"|_+=";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 80);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(alphabet[pick(rng)]);
    tokens_t once = normalize_text(s);
    CHECK(normalize_text(join_tokens(once)) == once);
    for (const std::string& tok : once) CHECK_FALSE(tok.empty());
  }
}

TEST_CASE("idempotence holds on arbitrary byte soup") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 64);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(char(byte(rng)));
    tokens_t once = normalize_text(s);
    CHECK(normalize_text(join_tokens(once)) == once);
  }
}

TEST_CASE("normalize_join matches tokens") {
  CHECK(normalize_join("Hold your tongue!") == "hold your tongue");
  CHECK(normalize_join("...") == "");
}
