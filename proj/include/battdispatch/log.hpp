#pragma once

#include <cstdio>
#include <string>

// Minimal stderr logger. Level comes from BATTDISPATCH_LOG
// (error|warn|info|debug), default warn.

namespace battd::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level threshold();

void emit(Level lvl, const std::string& msg);

inline void error(const std::string& m) { emit(Level::error, m); }
inline void warn(const std::string& m) { emit(Level::warn, m); }
inline void info(const std::string& m) { emit(Level::info, m); }
inline void debug(const std::string& m) { emit(Level::debug, m); }

}  // namespace battd::log
