#ifndef RWTAIL_AGGREGATION_HPP
#define RWTAIL_AGGREGATION_HPP

#include "rwtail/dependence.hpp"
#include "rwtail/kernels.hpp"
#include "rwtail/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rwtail {

// Upper order statistics x_(1) >= ... >= x_(n), all positive.
class OrderedSample {
public:
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    friend OrderedSample order_stats(std::span<const double> x);
    std::vector<double> values_;
};

// Stable descending sort; throws DomainError on empty input or a nonpositive entry.
OrderedSample order_stats(std::span<const double> x);

// sum_{i<k} c[i] * x_(i+1). Negative weights are accepted.
double lc(const OrderedSample& x, std::span<const double> c, std::size_t k);
double lc(std::span<const double> descending, std::span<const double> c, std::size_t k);

// One draw of L(C), split into the C_1 X_(1) factor and the remainder.
struct LcDraw {
    double lc = 0.0;
    double top = 0.0;   // X_(1)
    double c1 = 0.0;    // C_1
    double rest = 0.0;  // sum_{i>=2} C_i X_(i)
};

// Per-worker sampler of L(C): risks first, then all k weights, from one stream.
class LcSampler {
public:
    explicit LcSampler(const Scenario& scenario);

    LcDraw draw(Stream& s);

    // State of the last draw.
    std::span<const double> ordered() const noexcept { return x_; }
    std::span<const double> weights() const noexcept { return c_; }

private:
    const Scenario* scenario_;
    std::vector<double> x_;
    std::vector<double> c_;
};

// n i.i.d. realizations of L(C) from a single stream.
std::vector<double> sample_lc(const Scenario& scenario, Stream& s, std::size_t n);

// n realizations using the blocked (seed, worker, replicate) streams.
std::vector<double> sample_lc(const Scenario& scenario, std::uint64_t n, std::uint64_t seed, unsigned workers,
                              Execution exec = Execution::Parallel);

} // namespace rwtail

#endif
