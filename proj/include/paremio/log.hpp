#pragma once

#include <string_view>

namespace paremio {

// Diagnostics go to stderr; data goes to stdout or files.
void log_info(std::string_view msg);
void log_warn(std::string_view msg);
void log_error(std::string_view msg);

} // namespace paremio
