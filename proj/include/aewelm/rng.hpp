#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aewelm {

// splitmix64 finalizer; used to mix seed material.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// All randomness in the library fans out from a single root seed through
// this function: each randomized stage draws seed = derive_seed(root, tag,
// index). Rerunning any stage with the same root seed reproduces it exactly.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stage_tag, std::uint64_t index);

// Ensemble members reseed per (round, retry); kept separate from the string
// overload so the retry loop is cheap.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t round, std::uint64_t retry) {
    return mix64(root ^ mix64(round + 1) ^ mix64((retry + 1) << 32));
}

// mt19937_64 with hand-rolled value mappings. The engine's bit stream is
// pinned by the standard; the distribution mappings below are ours, so
// results are identical across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // unbiased integer in [0, n), rejection sampling
    std::uint64_t uniform_int(std::uint64_t n);

    // Box-Muller, deterministic
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace aewelm
