#include "rwtail/riskmeasures.hpp"

#include "rwtail/error.hpp"
#include "rwtail/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace rwtail {

namespace {

constexpr double kRootRelTol = 1e-13;

// Root in t of log_f(t) = target for log_f decreasing. Bisection on log t.
double solve_decreasing(const std::function<double(double)>& log_f, double target, double start, double floor) {
    double lo = std::max(start, floor);
    double hi = lo;
    auto value = [&](double t) { return log_f(t) - target; };
    int guard = 0;
    while (value(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 2000 || !std::isfinite(hi)) {
            throw NumericError("could not bracket the quantile from above", hi);
        }
    }
    guard = 0;
    while (lo == hi || value(lo) < 0.0) {
        hi = lo;
        const double next = std::max(lo * 0.5, floor);
        if (next == lo || ++guard > 2000) {
            throw NumericError("could not bracket the quantile from below", lo);
        }
        lo = next;
    }
    double a = std::log(lo);
    double b = std::log(hi);
    for (int it = 0; it < 400 && std::exp(b) - std::exp(a) > kRootRelTol * std::exp(b); ++it) {
        const double m = 0.5 * (a + b);
        if (value(std::exp(m)) > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    return std::exp(0.5 * (a + b));
}

void check_p(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw DomainError("risk level p must lie in (0, 1)");
    }
}

double sample_index(std::size_t n, double p) {
    return std::ceil(p * static_cast<double>(n - 1) - 1e-9);
}

std::vector<double> sorted_checked(std::span<const double> samples, double p, double min_tail_samples) {
    check_p(p);
    if (samples.empty() || static_cast<double>(samples.size()) < min_tail_samples / (1.0 - p)) {
        throw SampleSizeError("need at least " + std::to_string(min_tail_samples / (1.0 - p)) +
                              " samples for level p");
    }
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

double scale_mixture_quantile(const WeightModel& weight, const MarginalModel& marginal, double p) {
    check_p(p);
    const double start = weight.endpoint() * marginal.tail_quantile(1.0 - p);
    const double floor = std::max(marginal.lower_endpoint() * 1e-12, 1e-300);
    return solve_decreasing(
        [&](double t) { return oracles::log_scale_mixture_tail(weight, marginal, t); }, std::log1p(-p),
        start, floor);
}

VarReport var_asymptotic(const Scenario& scenario, double p, RiskOptions opts) {
    check_p(p);
    VarReport r;
    r.p = p;
    r.below_guard = p < opts.guard;
    if (r.below_guard) {
        r.caveats.push_back("p below asymptotic regime guard");
    }
    const MarginalModel& x1 = scenario.marginals().front();
    const WeightModel& c1 = scenario.weights()[0];
    const double omega = c1.endpoint();
    double floor = 1e-300;
    if (scenario.mda_class() == MdaClass::Gumbel) {
        // approx needs t / omega above the auxiliary threshold.
        const double th = x1.auxiliary_threshold();
        floor = std::isfinite(th) ? omega * std::max(th, 0.0) * (1.0 + 1e-9) + 1e-300 : 1e-300;
    }
    ApproxOptions ao;
    ao.enforce_bulk_guard = false;
    const double start = std::max(omega * x1.tail_quantile(1.0 - p), floor);
    r.value = solve_decreasing([&](double t) { return approx(scenario, t, ao).log_value; }, std::log1p(-p),
                               start, floor);
    r.formula = approx(scenario, r.value, ao).formula;
    if (scenario.mda_class() == MdaClass::Gumbel) {
        r.var_c1x1 = scale_mixture_quantile(c1, x1, p);
    }
    return r;
}

EsReport es_asymptotic(const Scenario& scenario, double p, RiskOptions opts) {
    if (scenario.mda_class() != MdaClass::Gumbel) {
        throw UnsupportedError("asymptotic ES is only provided in the Gumbel MDA; use es_empirical");
    }
    EsReport e;
    e.var = var_asymptotic(scenario, p, opts);
    e.p = p;
    e.value = e.var.value;
    e.tag = "first-order ES≈VaR (Gumbel MDA)";
    return e;
}

double var_empirical(std::span<const double> samples, double p, double min_tail_samples) {
    const auto s = sorted_checked(samples, p, min_tail_samples);
    return s[static_cast<std::size_t>(sample_index(s.size(), p))];
}

double es_empirical(std::span<const double> samples, double p, double min_tail_samples) {
    const auto s = sorted_checked(samples, p, min_tail_samples);
    const double var = s[static_cast<std::size_t>(sample_index(s.size(), p))];
    const auto first = std::upper_bound(s.begin(), s.end(), var);
    if (first == s.end()) {
        return var;
    }
    double sum = 0.0;
    for (auto it = first; it != s.end(); ++it) {
        sum += *it;
    }
    return sum / static_cast<double>(s.end() - first);
}

} // namespace rwtail
