#include "battdispatch/log.hpp"

#include <cstdlib>
#include <cstring>

namespace battd::log {

Level threshold() {
    static Level lvl = [] {
        const char* env = std::getenv("BATTDISPATCH_LOG");
        if (!env) return Level::warn;
        if (!std::strcmp(env, "error")) return Level::error;
        if (!std::strcmp(env, "warn")) return Level::warn;
        if (!std::strcmp(env, "info")) return Level::info;
        if (!std::strcmp(env, "debug")) return Level::debug;
        return Level::warn;
    }();
    return lvl;
}

void emit(Level lvl, const std::string& msg) {
    if (static_cast<int>(lvl) > static_cast<int>(threshold())) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "[battdispatch] %s: %s\n", names[static_cast<int>(lvl)], msg.c_str());
}

}  // namespace battd::log
