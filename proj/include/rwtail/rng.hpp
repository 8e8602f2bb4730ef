#ifndef RWTAIL_RNG_HPP
#define RWTAIL_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>

namespace rwtail {

// 64-bit finalizer from SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-mode random stream keyed by (seed, worker, replicate).
//
// Every replicate of a Monte Carlo run opens its own Stream, so the draws of
// replicate r on worker w depend only on (seed, w, r). Satisfies
// UniformRandomBitGenerator, so the std distributions can consume it.
class Stream {
public:
    using result_type = std::uint64_t;

    Stream(std::uint64_t seed, std::uint64_t worker, std::uint64_t counter) noexcept
        : state_(mix64(mix64(mix64(seed ^ 0x6a09e667f3bcc908ULL) ^ (worker * 0x9e3779b97f4a7c15ULL + 1)) ^
                       (counter * 0xd1342543de82ef95ULL + 0x3c6ef372fe94f82bULL))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform on the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_(*this); }

    double gamma(double shape) {
        std::gamma_distribution<double> g(shape, 1.0);
        return g(*this);
    }

private:
    std::uint64_t state_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace rwtail

#endif
