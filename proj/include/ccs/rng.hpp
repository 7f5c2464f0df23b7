#ifndef CCS_RNG_HPP
#define CCS_RNG_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ccs {

// splitmix64 step; used both as a standalone mixer and to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic combination of a base seed with stream tags. Every RNG
// stream in the project is derived this way, so results are independent
// of thread scheduling.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2));
    std::uint64_t m = splitmix64(s);
    s ^= b + 0x2545f4914f6cdd1dull;
    return m ^ splitmix64(s);
}

inline std::uint64_t seed_of(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = master;
    for (std::uint64_t p : parts) s = mix_seed(s, p);
    return s;
}

inline std::uint64_t double_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

// Seeded generator with explicit value mappings (no std::*_distribution,
// whose output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log argument.
    double uniform01_open0() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    // Standard normal via Box-Muller (one value per pair of uniforms).
    double normal() {
        const double u1 = uniform01_open0();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Standard normal conditioned on being nonzero (a zero draw has
    // vanishing probability but the callers require it).
    double nonzero_normal() {
        double v;
        do {
            v = normal();
        } while (v == 0.0);
        return v;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace ccs

#endif // CCS_RNG_HPP
