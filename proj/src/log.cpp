#include "vortibc/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace vortibc {

namespace {
std::atomic<int> g_level{static_cast<int>(LogLevel::Warn)};
std::mutex g_mutex;
}  // namespace

void set_log_level(LogLevel level) { g_level = static_cast<int>(level); }
LogLevel log_level() { return static_cast<LogLevel>(g_level.load()); }

void log(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) < g_level.load()) return;
  static const char* tags[] = {"debug", "info", "warn"};
  std::lock_guard<std::mutex> lock(g_mutex);
  std::cerr << "[" << tags[static_cast<int>(level)] << "] " << msg << "\n";
}

}  // namespace vortibc
