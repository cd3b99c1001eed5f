#pragma once

#include <sstream>
#include <string>

namespace wl::log {

enum class level : int { off = 0, warn = 1, info = 2, debug = 3 };

// Global level, parsed once from the WEYL_LATTICE_LOG environment variable
// ("off", "warn", "info", "debug"; default "off").
level threshold();

void emit(level lv, const std::string& msg);

template <typename... Args>
void write(level lv, Args&&... args) {
    if (static_cast<int>(lv) > static_cast<int>(threshold())) return;
    std::ostringstream os;
    (os << ... << args);
    emit(lv, os.str());
}

template <typename... Args> void warn(Args&&... args) { write(level::warn, args...); }
template <typename... Args> void info(Args&&... args) { write(level::info, args...); }
template <typename... Args> void debug(Args&&... args) { write(level::debug, args...); }

} // namespace wl::log
