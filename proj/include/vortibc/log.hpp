#pragma once

#include <string>

namespace vortibc {

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Quiet = 3 };

// Process-wide threshold; messages go to stderr.
void set_log_level(LogLevel level);
LogLevel log_level();
void log(LogLevel level, const std::string& msg);

}  // namespace vortibc
