#include "paremio/normalize.hpp"

#include <cstdint>

#include "paremio/kernels.hpp"

namespace paremio {

namespace {

enum class Cls { keep, separator, erase };

bool is_unicode_space(std::uint32_t cp) {
  return cp == 0x00A0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

// Classification for code points above 0x7F. Letters and number characters
// stay token members; punctuation and symbols are erased like ASCII
// punctuation.
Cls classify_high(std::uint32_t cp) {
  if (is_unicode_space(cp)) return Cls::separator;
  if (cp >= 0x00A1 && cp <= 0x00BF) {
    switch (cp) {
      case 0x00AA: case 0x00B2: case 0x00B3: case 0x00B5:
      case 0x00B9: case 0x00BA:
        return Cls::keep; // ordinal letters, superscripts, micro sign
      default:
        return Cls::erase;
    }
  }
  if (cp == 0x00AD) return Cls::erase;                  // soft hyphen
  if (cp == 0x00D7 || cp == 0x00F7) return Cls::erase;  // multiply, divide
  if (cp >= 0x2000 && cp <= 0x206F) return Cls::erase;  // general punctuation
  return Cls::keep;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(char(cp));
  } else if (cp < 0x800) {
    out.push_back(char(0xC0 | (cp >> 6)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(char(0xE0 | (cp >> 12)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(char(0xF0 | (cp >> 18)));
    out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  }
}

// Decodes one code point at i; advances i. Malformed sequences yield the
// single raw byte with `malformed` set.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i,
                          bool& malformed) {
  malformed = false;
  unsigned char c0 = static_cast<unsigned char>(s[i]);
  if (c0 < 0x80) { ++i; return c0; }
  int extra;
  std::uint32_t cp;
  if ((c0 & 0xE0) == 0xC0) { extra = 1; cp = c0 & 0x1F; }
  else if ((c0 & 0xF0) == 0xE0) { extra = 2; cp = c0 & 0x0F; }
  else if ((c0 & 0xF8) == 0xF0) { extra = 3; cp = c0 & 0x07; }
  else { malformed = true; ++i; return c0; }
  if (i + extra >= s.size()) {
    malformed = true; ++i; return c0;
  }
  for (int k = 1; k <= extra; ++k) {
    unsigned char cc = static_cast<unsigned char>(s[i + k]);
    if ((cc & 0xC0) != 0x80) { malformed = true; ++i; return c0; }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += 1 + extra;
  return cp;
}

// Full code-point pass for inputs containing non-ASCII bytes.
std::vector<std::string> normalize_unicode(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    bool malformed;
    std::uint32_t cp = decode_utf8(raw, i, malformed);
    if (malformed) continue; // dropped: keeps output valid UTF-8, so
                             // re-normalizing tokens is a fixed point
    if (cp < 0x80) {
      unsigned char c = static_cast<unsigned char>(cp);
      unsigned char folded;
      kernels::ascii_fold_scalar(&c, 1, &folded);
      if (folded == ' ') flush();
      else if (folded != 0) cur.push_back(char(folded));
      continue;
    }
    switch (classify_high(cp)) {
      case Cls::separator:
        flush();
        break;
      case Cls::erase:
        break;
      case Cls::keep:
        if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7)
          cp += 0x20; // Latin-1 simple lowercase
        append_utf8(cur, cp);
        break;
    }
  }
  flush();
  return tokens;
}

} // namespace

std::vector<std::string> normalize_text(std::string_view raw) {
  std::string folded(raw.size(), '\0');
  bool any_high = kernels::ascii_fold(
      reinterpret_cast<const unsigned char*>(raw.data()), raw.size(),
      reinterpret_cast<unsigned char*>(folded.data()));
  if (any_high)
    return normalize_unicode(raw);

  std::vector<std::string> tokens;
  std::string cur;
  for (char c : folded) {
    if (c == ' ') {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
    } else if (c != '\0') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::string normalize_join(std::string_view raw) {
  return join_tokens(normalize_text(raw));
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

} // namespace paremio
