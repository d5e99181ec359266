#include "paremio/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "paremio/errors.hpp"
#include "paremio/log.hpp"
#include "paremio/normalize.hpp"
#include "paremio/table_io.hpp"

namespace paremio {

namespace fs = std::filesystem;

namespace {

void report_error(IngestReport* report, const std::string& msg) {
  log_warn(msg);
  if (report) report->errors.push_back(msg);
}

bool parse_ll(std::string_view s, long long& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool glob_match(std::string_view pattern, std::string_view name) {
  // '*' any run, '?' any single char; both within one path segment
  std::size_t p = 0, n = 0, star = std::string_view::npos, mark = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

void expand_glob(const fs::path& base, std::string_view pattern,
                 std::vector<fs::path>& out) {
  std::size_t slash = pattern.find('/');
  std::string_view head =
      slash == std::string_view::npos ? pattern : pattern.substr(0, slash);
  std::string_view rest =
      slash == std::string_view::npos ? std::string_view{} : pattern.substr(slash + 1);

  if (head.find('*') == std::string_view::npos &&
      head.find('?') == std::string_view::npos) {
    fs::path next = base / std::string(head);
    if (rest.empty()) {
      if (fs::is_regular_file(next)) out.push_back(next);
    } else if (fs::is_directory(next)) {
      expand_glob(next, rest, out);
    }
    return;
  }
  if (!fs::is_directory(base)) return;
  for (const auto& ent : fs::directory_iterator(base)) {
    std::string name = ent.path().filename().string();
    if (!glob_match(head, name)) continue;
    if (rest.empty()) {
      if (ent.is_regular_file()) out.push_back(ent.path());
    } else if (ent.is_directory()) {
      expand_glob(ent.path(), rest, out);
    }
  }
}

struct MetaRow {
  std::string author;
  std::optional<int> birth_year;
  std::string title;
};

std::map<std::string, MetaRow> load_metadata_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open metadata table: " + path.string());
  std::map<std::string, MetaRow> rows;
  std::string line;
  if (!std::getline(in, line))
    throw DataError("metadata table is empty: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_fields(line, '\t');
  auto col = [&](std::string_view name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  int c_doc = col("doc_id"), c_author = col("author"),
      c_birth = col("birth_year"), c_title = col("title");
  if (c_doc < 0)
    throw DataError("metadata table missing doc_id column: " + path.string());

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_fields(line, '\t');
    auto field = [&](int c) -> std::string_view {
      return (c >= 0 && c < static_cast<int>(f.size())) ? f[c]
                                                        : std::string_view{};
    };
    std::string doc_id(field(c_doc));
    if (doc_id.empty()) {
      log_warn(path.filename().string() + ":" + std::to_string(line_no) +
               " metadata row without doc_id, skipped");
      continue;
    }
    MetaRow row;
    row.author = std::string(field(c_author));
    row.title = std::string(field(c_title));
    std::string_view by = field(c_birth);
    if (!by.empty()) {
      long long y;
      if (parse_ll(by, y)) {
        row.birth_year = static_cast<int>(y);
      } else {
        log_warn(path.filename().string() + ":" + std::to_string(line_no) +
                 " malformed birth_year '" + std::string(by) +
                 "', row skipped");
        continue;
      }
    }
    rows[doc_id] = std::move(row);
  }
  return rows;
}

// Strips recognized boilerplate sentinels: text between a line starting
// "*** START OF" and one starting "*** END OF". Absent markers leave the
// body unchanged.
std::string_view strip_boilerplate(std::string_view body) {
  auto find_marker = [&](std::string_view marker,
                         std::size_t from) -> std::size_t {
    std::size_t pos = body.find(marker, from);
    while (pos != std::string_view::npos && pos != 0 &&
           body[pos - 1] != '\n')
      pos = body.find(marker, pos + 1);
    return pos;
  };
  std::size_t start = find_marker("*** START OF", 0);
  if (start != std::string_view::npos) {
    std::size_t eol = body.find('\n', start);
    if (eol != std::string_view::npos) body = body.substr(eol + 1);
  }
  std::size_t end = find_marker("*** END OF", 0);
  if (end != std::string_view::npos) body = body.substr(0, end);
  return body;
}

// --- minimal tolerant XML helpers (tag stripping only) ---

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view ent = s.substr(i + 1, semi - i - 1);
    if (ent == "amp") out.push_back('&');
    else if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (!ent.empty() && ent[0] == '#') {
      long long cp = 0;
      bool ok = ent.size() > 1 && ent[1] == 'x'
                    ? std::from_chars(ent.data() + 2, ent.data() + ent.size(),
                                      cp, 16).ec == std::errc()
                    : std::from_chars(ent.data() + 1, ent.data() + ent.size(),
                                      cp).ec == std::errc();
      if (ok && cp > 0 && cp < 0x110000) {
        // re-encode as UTF-8
        char32_t c = static_cast<char32_t>(cp);
        if (c < 0x80) out.push_back(char(c));
        else if (c < 0x800) {
          out.push_back(char(0xC0 | (c >> 6)));
          out.push_back(char(0x80 | (c & 0x3F)));
        } else if (c < 0x10000) {
          out.push_back(char(0xE0 | (c >> 12)));
          out.push_back(char(0x80 | ((c >> 6) & 0x3F)));
          out.push_back(char(0x80 | (c & 0x3F)));
        } else {
          out.push_back(char(0xF0 | (c >> 18)));
          out.push_back(char(0x80 | ((c >> 12) & 0x3F)));
          out.push_back(char(0x80 | ((c >> 6) & 0x3F)));
          out.push_back(char(0x80 | (c & 0x3F)));
        }
      }
    }
    i = semi + 1;
  }
  return out;
}

std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<') {
      std::size_t close = s.find('>', i);
      if (close == std::string_view::npos) break;
      out.push_back(' ');
      i = close + 1;
    } else {
      out.push_back(s[i++]);
    }
  }
  return decode_entities(out);
}

/// Inner text of the first <tag ...>...</tag> span, or nullopt.
std::optional<std::string_view> element_inner(std::string_view doc,
                                              std::string_view tag) {
  std::string open = "<" + std::string(tag);
  std::size_t pos = 0;
  while ((pos = doc.find(open, pos)) != std::string_view::npos) {
    std::size_t after = pos + open.size();
    if (after < doc.size() && (doc[after] == '>' || doc[after] == ' ' ||
                               doc[after] == '\t' || doc[after] == '\n')) {
      std::size_t start = doc.find('>', pos);
      if (start == std::string_view::npos) return std::nullopt;
      std::string close = "</" + std::string(tag) + ">";
      std::size_t end = doc.find(close, start + 1);
      if (end == std::string_view::npos) return std::nullopt;
      return doc.substr(start + 1, end - start - 1);
    }
    pos = after;
  }
  return std::nullopt;
}

std::optional<TemporalKey> find_publication_date(std::string_view doc) {
  // NITF: <pubdata date.publication="YYYYMMDD..."/>
  static constexpr std::string_view attr = "date.publication=\"";
  if (std::size_t pos = doc.find(attr); pos != std::string_view::npos) {
    std::string_view digits = doc.substr(pos + attr.size());
    if (digits.size() >= 8) {
      long long y, m, d;
      if (parse_ll(digits.substr(0, 4), y) && parse_ll(digits.substr(4, 2), m) &&
          parse_ll(digits.substr(6, 2), d) &&
          valid_date(int(y), int(m), int(d)))
        return TemporalKey::of_date(int(y), int(m), int(d));
    }
  }
  if (auto inner = element_inner(doc, "date"))
    return TemporalKey::parse(trim(*inner));
  return std::nullopt;
}

} // namespace

CorpusManifest CorpusManifest::load(const fs::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest " + file.string() + ": " + e.what());
  }
  auto require = [&](const char* field) -> const nlohmann::json& {
    if (!j.contains(field))
      throw ConfigError("manifest " + file.string() + ": missing field '" +
                        field + "'");
    return j.at(field);
  };

  CorpusManifest m;
  m.root = file.has_parent_path() ? file.parent_path() : fs::path(".");
  try {
    m.corpus_id = require("corpus_id").get<std::string>();
    std::string kind = require("kind").get<std::string>();
    if (kind == "plaintext") m.kind = CorpusKind::plaintext;
    else if (kind == "news_xml") m.kind = CorpusKind::news_xml;
    else if (kind == "ngram_tsv") m.kind = CorpusKind::ngram_tsv;
    else if (kind == "daily_feed") m.kind = CorpusKind::daily_feed;
    else
      throw ConfigError("manifest " + file.string() + ": field 'kind' has "
                        "unknown value '" + kind + "'");
    m.file_globs = require("files").get<std::vector<std::string>>();

    std::string default_res =
        (m.kind == CorpusKind::news_xml || m.kind == CorpusKind::daily_feed)
            ? "day"
            : "year";
    std::string res = j.value("date_resolution", default_res);
    if (res == "day") m.date_resolution = Resolution::day;
    else if (res == "year") m.date_resolution = Resolution::year;
    else
      throw ConfigError("manifest " + file.string() +
                        ": field 'date_resolution' must be 'day' or 'year'");

    if (j.contains("metadata"))
      m.metadata = m.root / j.at("metadata").get<std::string>();
    if (j.contains("totals"))
      m.totals = m.root / j.at("totals").get<std::string>();
    m.ngram_length = j.value("ngram_length", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest " + file.string() + ": " + e.what());
  }
  if (m.corpus_id.empty())
    throw ConfigError("manifest " + file.string() +
                      ": field 'corpus_id' is empty");
  if (m.file_globs.empty())
    throw ConfigError("manifest " + file.string() +
                      ": field 'files' is empty");
  return m;
}

std::vector<fs::path> CorpusManifest::resolve_files() const {
  std::vector<fs::path> out;
  for (const std::string& glob : file_globs) expand_glob(root, glob, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DocumentRecord parse_plaintext_file(const fs::path& file,
                                    const std::string& doc_id,
                                    const std::string& corpus_id) {
  std::string body = read_file(file);
  DocumentRecord rec;
  rec.doc_id = doc_id;
  rec.corpus_id = corpus_id;
  rec.tokens = normalize_text(strip_boilerplate(body));
  return rec;
}

std::vector<DocumentRecord> ingest_plaintext_corpus(const CorpusManifest& m,
                                                    IngestReport* report) {
  std::map<std::string, MetaRow> meta;
  if (!m.metadata.empty()) meta = load_metadata_table(m.metadata);

  std::vector<DocumentRecord> docs;
  for (const fs::path& file : m.resolve_files()) {
    std::string doc_id = file.filename().string();
    try {
      DocumentRecord rec = parse_plaintext_file(file, doc_id, m.corpus_id);
      if (auto it = meta.find(doc_id); it != meta.end()) {
        rec.author = it->second.author;
        rec.title = it->second.title;
        if (it->second.birth_year)
          rec.when = TemporalKey::of_year(*it->second.birth_year);
      }
      docs.push_back(std::move(rec));
    } catch (const Error& e) {
      report_error(report, "plaintext " + file.string() + ": " + e.what());
    }
  }
  return docs;
}

DocumentRecord parse_news_xml_file(const fs::path& file,
                                   const std::string& doc_id,
                                   const std::string& corpus_id) {
  std::string doc = read_file(file);
  if (doc.find('<') == std::string::npos)
    throw DataError("no XML markup found");

  DocumentRecord rec;
  rec.doc_id = doc_id;
  rec.corpus_id = corpus_id;
  rec.when = find_publication_date(doc);
  if (!rec.when) rec.missing_date_flagged = true;

  std::string headline;
  for (std::string_view tag : {"hl1", "hedline", "headline"}) {
    if (auto inner = element_inner(doc, tag)) {
      headline = strip_tags(*inner);
      break;
    }
  }
  rec.title = join_tokens(normalize_text(headline));

  std::string body;
  if (auto inner = element_inner(doc, "body.content")) body = strip_tags(*inner);
  else if (auto blk = element_inner(doc, "block")) body = strip_tags(*blk);

  rec.tokens = normalize_text(headline + " " + body);
  return rec;
}

std::vector<DocumentRecord> ingest_news_xml(const CorpusManifest& m,
                                            IngestReport* report) {
  std::vector<DocumentRecord> docs;
  for (const fs::path& file : m.resolve_files()) {
    std::string doc_id = file.filename().string();
    try {
      DocumentRecord rec = parse_news_xml_file(file, doc_id, m.corpus_id);
      if (rec.missing_date_flagged)
        log_warn("news " + file.string() + ": no publication date, record "
                 "kept without temporal key");
      docs.push_back(std::move(rec));
    } catch (const Error& e) {
      report_error(report, "news " + file.string() + ": " + e.what());
    }
  }
  return docs;
}

std::vector<NgramObservation> parse_ngram_tsv_file(const fs::path& file,
                                                   IngestReport* report) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open n-gram TSV: " + file.string());
  std::vector<NgramObservation> out;
  std::string line;
  int line_no = 0;
  auto where = [&] { return file.filename().string() + ":" + std::to_string(line_no); };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split_fields(line, '\t');
    if (f.size() != 4) {
      report_error(report, where() + " expected 4 tab-separated fields, "
                                     "line skipped");
      continue;
    }
    long long year, occ, docs;
    if (!parse_ll(f[1], year) || !parse_ll(f[2], occ) || !parse_ll(f[3], docs)) {
      report_error(report, where() + " non-integer numeric field, line skipped");
      continue;
    }
    if (occ < 0 || docs < 0) {
      report_error(report, where() + " negative count, line rejected");
      continue;
    }
    if (occ < docs) {
      report_error(report, where() + " occurrence count below document "
                                     "count, line rejected");
      continue;
    }
    NgramObservation obs;
    obs.tokens = normalize_text(f[0]);
    if (obs.tokens.empty()) continue; // all-punctuation ngram
    obs.when = TemporalKey::of_year(static_cast<int>(year));
    obs.occurrence_count = occ;
    obs.document_count = docs;
    out.push_back(std::move(obs));
  }
  return out;
}

std::vector<NgramObservation> ingest_ngram_tsv(const CorpusManifest& m,
                                               IngestReport* report) {
  std::vector<NgramObservation> out;
  for (const fs::path& file : m.resolve_files()) {
    try {
      auto part = parse_ngram_tsv_file(file, report);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    } catch (const Error& e) {
      report_error(report, "ngram_tsv " + file.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<NgramObservation> parse_daily_feed_file(const fs::path& file,
                                                    IngestReport* report) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open daily feed: " + file.string());
  std::vector<NgramObservation> out;
  std::string line;
  int line_no = 0;
  auto where = [&] { return file.filename().string() + ":" + std::to_string(line_no); };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    char delim = line.find('\t') != std::string::npos ? '\t' : ',';
    auto f = split_fields(line, delim);
    if (f.size() < 3 || f.size() > 5) {
      report_error(report, where() + " expected 3-5 fields, line skipped");
      continue;
    }
    auto date = TemporalKey::parse(trim(f[0]));
    if (!date || date->res != Resolution::day) {
      report_error(report, where() + " invalid date '" +
                               std::string(trim(f[0])) + "', line skipped");
      continue;
    }
    long long count;
    if (!parse_ll(trim(f[2]), count) || count < 0) {
      report_error(report, where() + " bad count field, line skipped");
      continue;
    }
    NgramObservation obs;
    obs.tokens = normalize_text(f[1]);
    if (obs.tokens.empty()) continue;
    obs.when = *date;
    obs.occurrence_count = count;
    long long v;
    if (f.size() >= 4 && !trim(f[3]).empty()) {
      if (parse_ll(trim(f[3]), v) && v >= 1) obs.rank = v;
      else {
        report_error(report, where() + " bad rank field, line skipped");
        continue;
      }
    }
    if (f.size() == 5 && !trim(f[4]).empty()) {
      if (parse_ll(trim(f[4]), v) && v >= 0) obs.total_in_period = v;
      else {
        report_error(report, where() + " bad total field, line skipped");
        continue;
      }
    }
    out.push_back(std::move(obs));
  }
  return out;
}

std::vector<NgramObservation> merge_case_variants(
    std::vector<NgramObservation> observations) {
  std::map<std::pair<TemporalKey, std::string>, NgramObservation> merged;
  for (NgramObservation& obs : observations) {
    std::string key = join_tokens(obs.tokens);
    auto it = merged.find({obs.when, key});
    if (it == merged.end()) {
      merged.emplace(std::make_pair(obs.when, std::move(key)),
                     std::move(obs));
      continue;
    }
    NgramObservation& acc = it->second;
    acc.occurrence_count += obs.occurrence_count;
    if (obs.document_count)
      acc.document_count = acc.document_count
                               ? *acc.document_count + *obs.document_count
                               : *obs.document_count;
    if (obs.rank && (!acc.rank || *obs.rank < *acc.rank)) acc.rank = obs.rank;
    if (obs.total_in_period &&
        (!acc.total_in_period || *obs.total_in_period > *acc.total_in_period))
      acc.total_in_period = obs.total_in_period;
  }
  std::vector<NgramObservation> out;
  out.reserve(merged.size());
  for (auto& [key, obs] : merged) out.push_back(std::move(obs));
  return out;
}

std::vector<NgramObservation> ingest_daily_ngram_feed(const CorpusManifest& m,
                                                      IngestReport* report) {
  std::vector<NgramObservation> out;
  for (const fs::path& file : m.resolve_files()) {
    try {
      auto part = parse_daily_feed_file(file, report);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    } catch (const Error& e) {
      report_error(report, "daily_feed " + file.string() + ": " + e.what());
    }
  }
  return merge_case_variants(std::move(out));
}

std::map<TemporalKey, long long> feed_period_totals(
    const std::vector<NgramObservation>& observations) {
  std::map<TemporalKey, long long> totals;
  for (const NgramObservation& obs : observations) {
    if (!obs.total_in_period) continue;
    auto [it, inserted] = totals.emplace(obs.when, *obs.total_in_period);
    if (!inserted && *obs.total_in_period > it->second)
      it->second = *obs.total_in_period;
  }
  return totals;
}

std::map<TemporalKey, long long> load_totals_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open totals table: " + path.string());
  std::map<TemporalKey, long long> totals;
  std::string line;
  int line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split_fields(line, '\t');
    long long total;
    std::optional<TemporalKey> bin;
    if (f.size() == 2) bin = TemporalKey::parse(trim(f[0]));
    if (!bin || !parse_ll(trim(f[1]), total) || total < 0) {
      if (!saw_data && f.size() == 2) continue; // header row
      throw DataError("totals table " + path.string() + ":" +
                      std::to_string(line_no) + " malformed row");
    }
    saw_data = true;
    totals[*bin] = total;
  }
  return totals;
}

} // namespace paremio
