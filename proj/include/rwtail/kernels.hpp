#ifndef RWTAIL_KERNELS_HPP
#define RWTAIL_KERNELS_HPP

// Replicate loops shared by every Monte Carlo estimator.
//
// N replicates are split into `workers` contiguous blocks. Replicate r of
// block w draws from Stream(seed, w, r), and per-block accumulators are merged
// in block order. The OpenMP path and the serial reference path therefore
// produce bit-identical results for the same (seed, workers, N).

#include "rwtail/rng.hpp"

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rwtail {

enum class Execution { Parallel, SerialReference };

struct Block {
    std::uint64_t begin = 0;
    std::uint64_t count = 0;
};

inline Block block_of(std::uint64_t n, unsigned workers, unsigned w) noexcept {
    const std::uint64_t base = n / workers;
    const std::uint64_t extra = n % workers;
    Block b;
    b.begin = w * base + (w < extra ? w : extra);
    b.count = base + (w < extra ? 1 : 0);
    return b;
}

unsigned default_workers() noexcept;

// Running first and second moments of a fixed-width vector of replicate values.
class Moments {
public:
    explicit Moments(std::size_t dim = 1) : dim_(dim), sum_(dim, 0.0), cross_(dim * dim, 0.0), nonzero_(dim, 0) {}

    void add(std::span<const double> v) noexcept {
        ++count_;
        for (std::size_t i = 0; i < dim_; ++i) {
            sum_[i] += v[i];
            if (v[i] != 0.0) {
                ++nonzero_[i];
            }
            for (std::size_t j = 0; j <= i; ++j) {
                cross_[i * dim_ + j] += v[i] * v[j];
            }
        }
    }

    void merge(const Moments& o) noexcept {
        count_ += o.count_;
        for (std::size_t i = 0; i < dim_; ++i) {
            sum_[i] += o.sum_[i];
            nonzero_[i] += o.nonzero_[i];
        }
        for (std::size_t i = 0; i < cross_.size(); ++i) {
            cross_[i] += o.cross_[i];
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t nonzero(std::size_t i) const noexcept { return nonzero_[i]; }
    double sum(std::size_t i) const noexcept { return sum_[i]; }
    double sum_sq(std::size_t i) const noexcept { return cross_[i * dim_ + i]; }
    double mean(std::size_t i) const noexcept { return sum_[i] / static_cast<double>(count_); }

    // Unbiased sample covariance.
    double covariance(std::size_t i, std::size_t j) const noexcept {
        if (count_ < 2) {
            return 0.0;
        }
        const std::size_t a = i > j ? i : j;
        const std::size_t b = i > j ? j : i;
        const double n = static_cast<double>(count_);
        const double c = (cross_[a * dim_ + b] - sum_[a] * sum_[b] / n) / (n - 1.0);
        return (i == j && c < 0.0) ? 0.0 : c;
    }

private:
    std::size_t dim_;
    std::uint64_t count_ = 0;
    std::vector<double> sum_;
    std::vector<double> cross_;
    std::vector<std::uint64_t> nonzero_;
};

namespace detail {

template <class Body>
void run_blocks(unsigned workers, Execution exec, Body&& body) {
    std::vector<std::exception_ptr> errors(workers);
    auto guarded = [&](unsigned w) {
        try {
            body(w);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (exec == Execution::Parallel) {
        const int nw = static_cast<int>(workers);
#pragma omp parallel for schedule(static, 1) num_threads(nw)
        for (int w = 0; w < nw; ++w) {
            guarded(static_cast<unsigned>(w));
        }
    } else {
        for (unsigned w = 0; w < workers; ++w) {
            guarded(w);
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace detail

// Accumulates `dim` values per replicate. `make_drawer()` is called once per
// worker and must return a callable (Stream&, std::span<double>) -> void
// holding that worker's scratch space.
template <class MakeDrawer>
Moments accumulate_replicates(std::uint64_t n, std::uint64_t seed, unsigned workers, std::size_t dim,
                              Execution exec, MakeDrawer&& make_drawer) {
    if (workers == 0) {
        workers = 1;
    }
    std::vector<Moments> parts(workers, Moments(dim));
    detail::run_blocks(workers, exec, [&](unsigned w) {
        auto draw = make_drawer();
        std::vector<double> values(dim);
        const Block b = block_of(n, workers, w);
        for (std::uint64_t r = 0; r < b.count; ++r) {
            Stream s(seed, w, r);
            draw(s, std::span<double>(values));
            parts[w].add(values);
        }
    });
    Moments total(dim);
    for (const auto& p : parts) {
        total.merge(p);
    }
    return total;
}

// Stores one value per replicate, in replicate order.
template <class MakeDrawer>
std::vector<double> collect_replicates(std::uint64_t n, std::uint64_t seed, unsigned workers, Execution exec,
                                       MakeDrawer&& make_drawer) {
    if (workers == 0) {
        workers = 1;
    }
    std::vector<double> out(n);
    detail::run_blocks(workers, exec, [&](unsigned w) {
        auto draw = make_drawer();
        double value = 0.0;
        const Block b = block_of(n, workers, w);
        for (std::uint64_t r = 0; r < b.count; ++r) {
            Stream s(seed, w, r);
            draw(s, std::span<double>(&value, 1));
            out[b.begin + r] = value;
        }
    });
    return out;
}

} // namespace rwtail

#endif
