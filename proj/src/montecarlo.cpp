#include "rwtail/montecarlo.hpp"

#include "rwtail/aggregation.hpp"
#include "rwtail/error.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rwtail {

namespace {

constexpr std::uint64_t kMinCrudeSamples = 1000;
constexpr std::uint64_t kExactIntervalBelow = 10;

void check_config(const McConfig& cfg) {
    if (cfg.samples < 2) {
        throw DomainError("Monte Carlo needs at least 2 samples");
    }
}

TailEstimate base_estimate(Method method, const McConfig& cfg, const Moments& m) {
    TailEstimate e;
    e.method = method;
    e.seed = cfg.seed;
    e.workers = std::max(1u, cfg.workers);
    e.n_samples = m.count();
    e.nonzero = m.nonzero(0);
    return e;
}

TailEstimate binary_estimate(Method method, const McConfig& cfg, const Moments& m) {
    TailEstimate e = base_estimate(method, cfg, m);
    const double n = static_cast<double>(m.count());
    e.point = static_cast<double>(e.nonzero) / n;
    e.std_error = std::sqrt(e.point * (1.0 - e.point) / n);
    if (e.nonzero < kExactIntervalBelow) {
        e.ci95 = clopper_pearson(e.nonzero, m.count());
    } else {
        e.ci95 = {std::max(0.0, e.point - kZ95 * e.std_error), std::min(1.0, e.point + kZ95 * e.std_error)};
    }
    return e;
}

TailEstimate mean_estimate(Method method, const McConfig& cfg, const Moments& m) {
    TailEstimate e = base_estimate(method, cfg, m);
    e.point = m.mean(0);
    e.std_error = std::sqrt(m.covariance(0, 0) / static_cast<double>(m.count()));
    e.ci95 = {std::max(0.0, e.point - kZ95 * e.std_error), e.point + kZ95 * e.std_error};
    e.ci95.lo = std::min(e.ci95.lo, e.point);
    return e;
}

void require_independent_weights(const Scenario& scenario, const char* who) {
    if (!scenario.weights().independent()) {
        throw UnsupportedError(std::string(who) + " requires weights independent of each other and of the risks");
    }
}

// P(C_1 > (t - rest) / top), the C_1-smoothed exceedance indicator.
double conditional_exceedance(const WeightModel& c1, const LcDraw& d, double t) {
    if (d.rest >= t) {
        return 1.0;
    }
    return std::clamp(c1.tail((t - d.rest) / d.top), 0.0, 1.0);
}

} // namespace

const char* to_string(Method m) {
    switch (m) {
    case Method::Crude: return "crude";
    case Method::ConditionalC1: return "conditional";
    case Method::ImportancePareto: return "is";
    }
    return "?";
}

Interval clopper_pearson(std::uint64_t x, std::uint64_t n, double level) {
    if (n == 0 || x > n) {
        throw DomainError("Clopper-Pearson interval needs 0 <= x <= n, n > 0");
    }
    const double a = 1.0 - level;
    const double xd = static_cast<double>(x);
    const double nd = static_cast<double>(n);
    Interval ci;
    ci.lo = x == 0 ? 0.0 : boost::math::ibeta_inv(xd, nd - xd + 1.0, a / 2.0);
    ci.hi = x == n ? 1.0 : boost::math::ibeta_inv(xd + 1.0, nd - xd, 1.0 - a / 2.0);
    return ci;
}

TailEstimate crude(const Scenario& scenario, double t, const McConfig& cfg) {
    check_config(cfg);
    if (cfg.samples < kMinCrudeSamples) {
        throw DomainError("crude estimator needs at least 1000 samples");
    }
    const Moments m = accumulate_replicates(cfg.samples, cfg.seed, cfg.workers, 1, cfg.execution, [&] {
        return [sampler = LcSampler(scenario), t](Stream& s, std::span<double> out) mutable {
            out[0] = sampler.draw(s).lc > t ? 1.0 : 0.0;
        };
    });
    return binary_estimate(Method::Crude, cfg, m);
}

TailEstimate conditional_c1(const Scenario& scenario, double t, const McConfig& cfg) {
    check_config(cfg);
    require_independent_weights(scenario, "conditional_c1");
    const WeightModel& c1 = scenario.weights()[0];
    const Moments m = accumulate_replicates(cfg.samples, cfg.seed, cfg.workers, 1, cfg.execution, [&] {
        return [sampler = LcSampler(scenario), &c1, t](Stream& s, std::span<double> out) mutable {
            out[0] = conditional_exceedance(c1, sampler.draw(s), t);
        };
    });
    return mean_estimate(Method::ConditionalC1, cfg, m);
}

TailEstimate importance_pareto(const Scenario& scenario, double t, const McConfig& cfg,
                               std::optional<double> proposal_index) {
    check_config(cfg);
    if (!scenario.independent_risks()) {
        throw UnsupportedError("importance_pareto requires independent risks (no copula)");
    }
    std::vector<Pareto> laws;
    double min_alpha = std::numeric_limits<double>::infinity();
    for (const auto& m : scenario.marginals()) {
        const auto* p = std::get_if<Pareto>(&m.params());
        if (p == nullptr) {
            throw UnsupportedError("importance_pareto requires Pareto marginals; got " + m.describe());
        }
        laws.push_back(*p);
        min_alpha = std::min(min_alpha, p->alpha);
    }
    const double proposal = proposal_index.value_or(laws.front().alpha / 2.0);
    if (!(proposal > 0.0) || !(proposal < min_alpha)) {
        throw DomainError("importance proposal index must lie in (0, min alpha)");
    }
    const std::size_t n = laws.size();
    const WeightVectorSpec& weights = scenario.weights();
    const std::size_t k = scenario.k();
    const Moments m = accumulate_replicates(cfg.samples, cfg.seed, cfg.workers, 1, cfg.execution, [&] {
        return [&, x = std::vector<double>(n), c = std::vector<double>(k)](Stream& s,
                                                                             std::span<double> out) mutable {
            double log_lr = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double u = s.uniform();
                x[i] = laws[i].scale * std::exp(-std::log(u) / proposal);
                log_lr += std::log(laws[i].alpha / proposal) +
                          (laws[i].alpha - proposal) * (std::log(laws[i].scale) - std::log(x[i]));
            }
            std::sort(x.begin(), x.end(), std::greater<>());
            weights.sample(s, c);
            out[0] = lc(std::span<const double>(x), c, k) > t ? std::exp(log_lr) : 0.0;
        };
    });
    TailEstimate e = mean_estimate(Method::ImportancePareto, cfg, m);
    const double sum_sq = m.sum_sq(0);
    e.ess = sum_sq > 0.0 ? m.sum(0) * m.sum(0) / sum_sq : 0.0;
    return e;
}

TailEstimate estimate(Method method, const Scenario& scenario, double t, const McConfig& cfg) {
    switch (method) {
    case Method::Crude: return crude(scenario, t, cfg);
    case Method::ConditionalC1: return conditional_c1(scenario, t, cfg);
    case Method::ImportancePareto: return importance_pareto(scenario, t, cfg);
    }
    throw UnsupportedError("unknown estimation method");
}

std::vector<double> geometric_grid(double from, double to, std::size_t points) {
    if (!(from > 0.0) || !(to >= from) || points == 0 || !std::isfinite(to)) {
        throw DomainError("geometric grid requires 0 < from <= to < inf and points >= 1");
    }
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = from;
        return grid;
    }
    const double lf = std::log(from);
    const double step = (std::log(to) - lf) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = std::exp(lf + step * static_cast<double>(i));
    }
    grid.front() = from;
    grid.back() = to;
    return grid;
}

std::vector<CurveRow> tail_curve(const Scenario& scenario, const DiagnosticsConfig& diag, Method method,
                                 const McConfig& cfg) {
    std::vector<CurveRow> rows;
    rows.reserve(diag.t_grid.size());
    for (double t : diag.t_grid) {
        CurveRow row;
        row.t = t;
        row.estimate = estimate(method, scenario, t, cfg);
        try {
            ApproxReport a = approx(scenario, t);
            row.approx = a.value;
            row.caveats = std::move(a.caveats);
        } catch (const DomainError& e) {
            row.approx = std::numeric_limits<double>::quiet_NaN();
            row.caveats.emplace_back(e.what());
        }
        row.ratio = row.estimate.point / row.approx;
        row.ratio_ci = {row.estimate.ci95.lo / row.approx, row.estimate.ci95.hi / row.approx};
        rows.push_back(std::move(row));
    }
    return rows;
}

SumFormReport sum_form_check(const Scenario& scenario, double t, const McConfig& cfg) {
    check_config(cfg);
    require_independent_weights(scenario, "sum_form_check");
    const std::size_t k = scenario.k();
    const WeightVectorSpec& weights = scenario.weights();
    // Columns: k per-index terms, their sum, the L(C) exceedance.
    const std::size_t dim = k + 2;
    const Moments m = accumulate_replicates(cfg.samples, cfg.seed, cfg.workers, dim, cfg.execution, [&] {
        return [sampler = LcSampler(scenario), &weights, k, t](Stream& s, std::span<double> out) mutable {
            const LcDraw d = sampler.draw(s);
            const auto x = sampler.ordered();
            double sum = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                out[i] = weights[i].tail(t / x[i]);
                sum += out[i];
            }
            out[k] = sum;
            out[k + 1] = conditional_exceedance(weights[0], d, t);
        };
    });
    const double n = static_cast<double>(m.count());
    SumFormReport r;
    r.t = t;
    r.n_samples = m.count();
    r.sum = m.mean(k);
    r.sum_std_error = std::sqrt(m.covariance(k, k) / n);
    r.lc_tail = m.mean(k + 1);
    r.lc_std_error = std::sqrt(m.covariance(k + 1, k + 1) / n);
    for (std::size_t i = 0; i < k; ++i) {
        SumFormTerm term;
        term.estimate = m.mean(i);
        term.std_error = std::sqrt(m.covariance(i, i) / n);
        term.share = r.sum > 0.0 ? term.estimate / r.sum : 0.0;
        r.terms.push_back(term);
    }
    if (r.lc_tail > 0.0) {
        r.ratio = r.sum / r.lc_tail;
        // Delta method on the paired columns.
        const double var = (m.covariance(k, k) - 2.0 * r.ratio * m.covariance(k, k + 1) +
                            r.ratio * r.ratio * m.covariance(k + 1, k + 1)) /
                           (n * r.lc_tail * r.lc_tail);
        const double se = std::sqrt(std::max(var, 0.0));
        r.ratio_ci = {r.ratio - kZ95 * se, r.ratio + kZ95 * se};
    } else {
        r.ratio = std::numeric_limits<double>::quiet_NaN();
        r.ratio_ci = {r.ratio, r.ratio};
    }
    return r;
}

} // namespace rwtail
