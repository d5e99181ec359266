#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

namespace paremio {

enum class Category { proverb, proverbial_expression, unknown };

std::string category_name(Category c);

/// One lexicon item. `length` is the n in n-gram; `normalized_tokens` is
/// always exactly normalize_text(raw_text).
struct ProverbEntry {
  int id = 0;
  std::string raw_text;
  std::vector<std::string> normalized_tokens;
  int length = 0;
  Category category = Category::unknown;

  std::string key() const; // tokens joined by spaces
};

/// Deduplicated phrase lexicon. Immutable after load; safe to share
/// read-only across threads.
class LexiconSet {
public:
  const std::vector<ProverbEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Lookup by normalized key (tokens joined by single spaces).
  const ProverbEntry* find_by_key(const std::string& key) const;
  const ProverbEntry* find_by_id(int id) const;

  /// Lines merged into an earlier entry during load.
  int collision_count() const { return collisions_; }

  void add_entry(ProverbEntry entry); // keeps index_by_tokens a bijection
  void set_category(int id, Category c);
  void note_collision() { ++collisions_; }

private:
  std::vector<ProverbEntry> entries_; // ascending id
  std::unordered_map<std::string, std::size_t> index_;
  int collisions_ = 0;
};

// Lexicon file: UTF-8, one entry per line, optional tab-separated second
// column with category in {proverb, proverbial_expression}. Blank lines and
// lines starting with '#' are ignored. Lines whose normalization collides
// with an earlier entry are merged into it (first raw text wins, logged).
LexiconSet load_lexicon(std::istream& in, const std::string& source_name);
LexiconSet load_lexicon(const std::filesystem::path& path);

/// Marks entries matching the sidecar's normalized lines as proverbial
/// expressions. Returns how many entries were marked.
int apply_category_sidecar(LexiconSet& lexicon, std::istream& in);
int apply_category_sidecar(LexiconSet& lexicon,
                           const std::filesystem::path& path);

/// Subset with length == n; ids preserved.
LexiconSet filter_by_length(const LexiconSet& lexicon, int n);

} // namespace paremio
