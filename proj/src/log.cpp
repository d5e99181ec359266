#include "paremio/log.hpp"

#include <cstdio>

namespace paremio {

namespace {
void emit(const char* level, std::string_view msg) {
  std::fprintf(stderr, "paremio %s %.*s\n", level, int(msg.size()),
               msg.data());
}
} // namespace

void log_info(std::string_view msg) { emit("info", msg); }
void log_warn(std::string_view msg) { emit("warn", msg); }
void log_error(std::string_view msg) { emit("error", msg); }

} // namespace paremio
