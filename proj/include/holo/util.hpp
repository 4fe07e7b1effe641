#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>

namespace holo {

// FNV-1a 64-bit over raw bytes.
inline std::uint64_t fnv1a_bytes(const void* data, std::size_t n,
                                 std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a_mix(std::uint64_t value, std::uint64_t seed) {
    return fnv1a_bytes(&value, sizeof value, seed);
}

inline std::uint64_t fnv1a_mix(double value, std::uint64_t seed) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof bits);
    return fnv1a_mix(bits, seed);
}

inline std::uint64_t fnv1a_mix(int value, std::uint64_t seed) {
    return fnv1a_mix(static_cast<std::uint64_t>(value), seed);
}

// Decimal formatting shared by every emitted series. Twelve significant
// digits survive a decimal -> binary64 -> decimal round trip unchanged, so
// parsing an emitted file and re-emitting it reproduces the bytes.
inline std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Exact binary64 round trip; used for cache keys.
inline std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

// x^n for small non-negative integer n.
inline double ipow(double x, int n) {
    double r = 1.0;
    for (; n > 0; --n) r *= x;
    return r;
}

}  // namespace detail
}  // namespace holo
