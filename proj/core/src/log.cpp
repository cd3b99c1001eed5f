#include "wl/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace wl::log {

level threshold() {
    static const level lv = [] {
        const char* env = std::getenv("WEYL_LATTICE_LOG");
        if (!env) return level::off;
        if (std::strcmp(env, "warn") == 0) return level::warn;
        if (std::strcmp(env, "info") == 0) return level::info;
        if (std::strcmp(env, "debug") == 0) return level::debug;
        return level::off;
    }();
    return lv;
}

void emit(level lv, const std::string& msg) {
    static std::mutex mu;
    const char* tag = lv == level::warn ? "warn" : lv == level::info ? "info" : "debug";
    std::lock_guard<std::mutex> lock(mu);
    std::fprintf(stderr, "[weyl-lattice %s] %s\n", tag, msg.c_str());
}

} // namespace wl::log
