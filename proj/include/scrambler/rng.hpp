#ifndef SCRAMBLER_RNG_HPP
#define SCRAMBLER_RNG_HPP

#include <cstdint>
#include <random>

namespace scrambler {

// splitmix64 finalizer; the stream-derivation scheme below is part of the
// determinism contract, so it must stay stable.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace stream_tag {
constexpr std::uint64_t even_window = 1;
constexpr std::uint64_t candidates = 2;
constexpr std::uint64_t validator = 3;
constexpr std::uint64_t generic = 4;
}  // namespace stream_tag

// Independent generator for (master seed, purpose, index). Trials and
// per-family samplers each get their own stream so parallel fan-out cannot
// change results.
inline std::mt19937_64 seeded_stream(std::uint64_t master, std::uint64_t purpose,
                                     std::uint64_t index = 0) {
    std::uint64_t s = mix64(master ^ (0xd1b54a32d192ed03ULL * (purpose + 1)));
    s = mix64(s ^ (0x8cb92ba72f3d8dd7ULL * (index + 1)));
    return std::mt19937_64(s);
}

// uniform double in [0,1) with 53 random bits; avoids the
// implementation-defined std::generate_canonical / distribution adapters.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// uniform in [lo, hi)
inline double uniform_in(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

}  // namespace scrambler

#endif
