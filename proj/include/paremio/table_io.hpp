#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace paremio {

/// Fixed-precision float serialization used by every exporter: 9 significant
/// digits, so outputs are byte-reproducible across runs and platforms.
/// NaN serializes as "nan" (undefined points are emitted, not dropped).
std::string format_double(double v);

std::vector<std::string_view> split_fields(std::string_view line, char delim);
std::string join_fields(const std::vector<std::string>& fields, char delim);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Content hash for cache keys (FNV-1a, 64-bit).
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 1469598103934665603ull);
std::string hash_hex(std::uint64_t h);

} // namespace paremio
