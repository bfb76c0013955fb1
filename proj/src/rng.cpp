#include "aewelm/rng.hpp"

#include <cmath>

namespace aewelm {

std::uint64_t derive_seed(std::uint64_t root, std::string_view stage_tag, std::uint64_t index) {
    // FNV-1a over the tag, then splitmix the combination.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : stage_tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(root ^ mix64(h) ^ mix64(index + 1));
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t threshold = (0ULL - n) % n;
    for (;;) {
        std::uint64_t x = next_u64();
        if (x >= threshold) return x % n;
    }
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace aewelm
