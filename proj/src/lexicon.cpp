#include "paremio/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "paremio/errors.hpp"
#include "paremio/log.hpp"
#include "paremio/normalize.hpp"

namespace paremio {

std::string category_name(Category c) {
  switch (c) {
    case Category::proverb: return "proverb";
    case Category::proverbial_expression: return "proverbial_expression";
    case Category::unknown: return "unknown";
  }
  return "unknown";
}

std::string ProverbEntry::key() const { return join_tokens(normalized_tokens); }

const ProverbEntry* LexiconSet::find_by_key(const std::string& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const ProverbEntry* LexiconSet::find_by_id(int id) const {
  // entries_ is sorted by id
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const ProverbEntry& e, int v) { return e.id < v; });
  return (it != entries_.end() && it->id == id) ? &*it : nullptr;
}

void LexiconSet::add_entry(ProverbEntry entry) {
  index_.emplace(entry.key(), entries_.size());
  entries_.push_back(std::move(entry));
}

void LexiconSet::set_category(int id, Category c) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const ProverbEntry& e, int v) { return e.id < v; });
  if (it != entries_.end() && it->id == id) it->category = c;
}

namespace {

bool parse_category(std::string_view s, Category& out) {
  if (s == "proverb") { out = Category::proverb; return true; }
  if (s == "proverbial_expression") {
    out = Category::proverbial_expression;
    return true;
  }
  return false;
}

} // namespace

LexiconSet load_lexicon(std::istream& in, const std::string& source_name) {
  LexiconSet lex;
  std::string line;
  int line_no = 0;
  int next_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::string_view raw = line;
    Category cat = Category::unknown;
    if (auto tab = line.find('\t'); tab != std::string::npos) {
      raw = std::string_view(line).substr(0, tab);
      std::string_view cat_field = std::string_view(line).substr(tab + 1);
      if (!cat_field.empty() && !parse_category(cat_field, cat))
        log_warn(source_name + ":" + std::to_string(line_no) +
                 " unknown category '" + std::string(cat_field) +
                 "', treating as unknown");
    }

    auto tokens = normalize_text(raw);
    if (tokens.empty()) {
      log_warn(source_name + ":" + std::to_string(line_no) +
               " normalizes to nothing, skipped");
      continue;
    }
    std::string key = join_tokens(tokens);
    if (const ProverbEntry* prev = lex.find_by_key(key)) {
      log_warn(source_name + ":" + std::to_string(line_no) + " '" +
               std::string(raw) + "' collides with entry " +
               std::to_string(prev->id) + " ('" + prev->raw_text +
               "'), merged");
      lex.note_collision();
      continue;
    }
    ProverbEntry entry;
    entry.id = next_id++;
    entry.raw_text = std::string(raw);
    entry.length = static_cast<int>(tokens.size());
    entry.normalized_tokens = std::move(tokens);
    entry.category = cat;
    lex.add_entry(std::move(entry));
  }
  if (in.bad())
    throw DataError(source_name + ":" + std::to_string(line_no) +
                    " read failure");
  if (lex.empty())
    throw DataError(source_name + ": no valid lexicon entries");
  return lex;
}

LexiconSet load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open lexicon: " + path.string());
  return load_lexicon(in, path.filename().string());
}

int apply_category_sidecar(LexiconSet& lexicon, std::istream& in) {
  int marked = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string key = normalize_join(line);
    if (const ProverbEntry* e = lexicon.find_by_key(key)) {
      lexicon.set_category(e->id, Category::proverbial_expression);
      ++marked;
    }
  }
  return marked;
}

int apply_category_sidecar(LexiconSet& lexicon,
                           const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open category sidecar: " + path.string());
  return apply_category_sidecar(lexicon, in);
}

LexiconSet filter_by_length(const LexiconSet& lexicon, int n) {
  if (n < 1) throw ConfigError("filter_by_length: n must be >= 1");
  LexiconSet out;
  for (const ProverbEntry& e : lexicon.entries())
    if (e.length == n) out.add_entry(e);
  return out;
}

} // namespace paremio
