#pragma once

// Minimal stderr logger filtered by the REIDLAB_LOG environment variable
// (error | warn | info | debug; default warn).

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace reidlab::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

inline Level threshold() {
    static const Level level = [] {
        const char* env = std::getenv("REIDLAB_LOG");
        if (env == nullptr) return Level::warn;
        const std::string value(env);
        if (value == "error") return Level::error;
        if (value == "warn") return Level::warn;
        if (value == "info") return Level::info;
        if (value == "debug") return Level::debug;
        return Level::warn;
    }();
    return level;
}

template <typename... Args>
void emit(Level level, const char* tag, Args&&... args) {
    if (level > threshold()) return;
    std::ostringstream line;
    line << "[" << tag << "] ";
    (line << ... << args);
    std::cerr << line.str() << "\n";
}

template <typename... Args>
void error(Args&&... args) {
    emit(Level::error, "error", std::forward<Args>(args)...);
}
template <typename... Args>
void warn(Args&&... args) {
    emit(Level::warn, "warn", std::forward<Args>(args)...);
}
template <typename... Args>
void info(Args&&... args) {
    emit(Level::info, "info", std::forward<Args>(args)...);
}
template <typename... Args>
void debug(Args&&... args) {
    emit(Level::debug, "debug", std::forward<Args>(args)...);
}

}  // namespace reidlab::log
