#pragma once

#include <cstdint>
#include <random>

namespace qosp {

// splitmix64 finalizer; used to derive independent per-task seeds from a
// master seed so that parallel and serial execution see identical streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) {
    return mix_seed(master ^ mix_seed(a));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return mix_seed(derive_seed(master, a) ^ mix_seed(b + 0x632be59bd9b4e019ULL));
}

// Uniform double in [0,1) from the top 53 bits. std::mt19937_64 output is
// pinned by the standard; std::uniform_real_distribution is not, so we map
// bits ourselves to keep files byte-identical across toolchains.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

}  // namespace qosp
