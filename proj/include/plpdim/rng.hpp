#pragma once

#include <cstdint>
#include <random>

namespace plpdim::rng {

// SplitMix64 finalizer; used to turn (root seed, stream index) into a
// well-mixed 64-bit state for an independent substream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(splitmix64(root) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

// One engine per (root, stream index); parallel loops give each index its
// own substream so results do not depend on the degree of parallelism.
inline std::mt19937_64 engine(std::uint64_t root, std::uint64_t stream = 0) {
    return std::mt19937_64(derive_stream(root, stream));
}

}  // namespace plpdim::rng
