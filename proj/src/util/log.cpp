#include "vrid/util/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace vrid::log {
namespace {

std::atomic<Level> g_level{Level::Info};
std::mutex g_mutex;

void emit(Level at, std::string_view tag, std::string_view message) {
  if (at < g_level.load(std::memory_order_relaxed)) return;
  std::lock_guard lock(g_mutex);
  std::clog << "[vrid " << tag << "] " << message << '\n';
}

}  // namespace

void set_level(Level level) noexcept { g_level.store(level, std::memory_order_relaxed); }
Level level() noexcept { return g_level.load(std::memory_order_relaxed); }

void debug(std::string_view message) { emit(Level::Debug, "debug", message); }
void info(std::string_view message) { emit(Level::Info, "info", message); }
void warning(std::string_view message) { emit(Level::Warning, "warn", message); }
void error(std::string_view message) { emit(Level::Error, "error", message); }

}  // namespace vrid::log
