#include "equitheta/errors.hpp"

#include <atomic>
#include <cstdlib>

namespace equitheta {

namespace {

std::uint64_t initial_cap() {
    if (const char* env = std::getenv("EQUITHETA_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 10'000'000ULL;
}

std::atomic<std::uint64_t>& cap_storage() {
    static std::atomic<std::uint64_t> cap{initial_cap()};
    return cap;
}

}  // namespace

std::uint64_t enumeration_cap() { return cap_storage().load(); }

void set_enumeration_cap(std::uint64_t cap) { cap_storage().store(cap); }

}  // namespace equitheta
