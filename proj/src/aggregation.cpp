#include "rwtail/aggregation.hpp"

#include "rwtail/error.hpp"

#include <algorithm>
#include <functional>

namespace rwtail {

OrderedSample order_stats(std::span<const double> x) {
    if (x.empty()) {
        throw DomainError("order statistics of an empty sample");
    }
    for (double v : x) {
        if (!(v > 0.0)) {
            throw DomainError("order statistics require positive entries");
        }
    }
    OrderedSample out;
    out.values_.assign(x.begin(), x.end());
    std::stable_sort(out.values_.begin(), out.values_.end(), std::greater<>());
    return out;
}

double lc(std::span<const double> descending, std::span<const double> c, std::size_t k) {
    if (k > descending.size()) {
        throw DomainError("k exceeds the number of order statistics");
    }
    if (c.size() < k) {
        throw DomainError("fewer weights than k");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += c[i] * descending[i];
    }
    return acc;
}

double lc(const OrderedSample& x, std::span<const double> c, std::size_t k) { return lc(x.values(), c, k); }

LcSampler::LcSampler(const Scenario& scenario)
    : scenario_(&scenario), x_(scenario.n()), c_(scenario.k()) {}

LcDraw LcSampler::draw(Stream& s) {
    sample_risks(*scenario_, s, x_);
    std::sort(x_.begin(), x_.end(), std::greater<>());
    scenario_->weights().sample(s, c_);
    LcDraw d;
    d.top = x_[0];
    d.c1 = c_[0];
    for (std::size_t i = 1; i < c_.size(); ++i) {
        d.rest += c_[i] * x_[i];
    }
    d.lc = d.c1 * d.top + d.rest;
    return d;
}

std::vector<double> sample_lc(const Scenario& scenario, Stream& s, std::size_t n) {
    LcSampler sampler(scenario);
    std::vector<double> out(n);
    for (auto& v : out) {
        v = sampler.draw(s).lc;
    }
    return out;
}

std::vector<double> sample_lc(const Scenario& scenario, std::uint64_t n, std::uint64_t seed, unsigned workers,
                              Execution exec) {
    return collect_replicates(n, seed, workers, exec, [&scenario] {
        return [sampler = LcSampler(scenario)](Stream& s, std::span<double> out) mutable {
            out[0] = sampler.draw(s).lc;
        };
    });
}

} // namespace rwtail
