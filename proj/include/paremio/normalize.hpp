#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace paremio {

// Shared normalization: the single tokenization used for the lexicon and
// for every corpus, so phrase lookups always compare like with like.
//
// Rules:
//   - ASCII letters are lowercased; digits kept.
//   - Whitespace (ASCII and Unicode space characters) separates tokens.
//   - Every other ASCII character is deleted outright, joining whatever it
//     separated: "All's" -> "alls", "mother-in-law" -> "motherinlaw".
//     Hyphen joining is a deliberate policy choice; see README.
//   - Non-ASCII letters are kept as token characters (Latin-1 uppercase is
//     lowercased); Unicode punctuation, including curly quotes and dashes,
//     is deleted like its ASCII counterparts. Malformed UTF-8 bytes are
//     deleted too, keeping every token valid UTF-8.
//
// normalize_text is idempotent at the string level: re-normalizing the
// space-joined token output reproduces the same tokens.

/// Tokenize one text. An all-punctuation input yields an empty vector.
std::vector<std::string> normalize_text(std::string_view raw);

/// Tokens joined by single spaces; the canonical key for a phrase.
std::string normalize_join(std::string_view raw);

std::string join_tokens(const std::vector<std::string>& tokens);

} // namespace paremio
