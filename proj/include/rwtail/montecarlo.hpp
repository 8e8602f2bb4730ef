#ifndef RWTAIL_MONTECARLO_HPP
#define RWTAIL_MONTECARLO_HPP

#include "rwtail/asymptotics.hpp"
#include "rwtail/dependence.hpp"
#include "rwtail/kernels.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rwtail {

enum class Method { Crude, ConditionalC1, ImportancePareto };

const char* to_string(Method m);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Exact (Clopper-Pearson) two-sided binomial interval for x successes in n trials.
Interval clopper_pearson(std::uint64_t x, std::uint64_t n, double level = 0.95);

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    Execution execution = Execution::Parallel;
};

struct TailEstimate {
    double point = 0.0;
    double std_error = 0.0;
    Interval ci95;
    std::uint64_t n_samples = 0;
    std::uint64_t nonzero = 0;  // replicates with a positive contribution
    Method method = Method::Crude;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::optional<double> ess;  // importance sampling only
};

// Indicator average of 1{L(C) > t}. Exact binomial interval below 10 exceedances.
TailEstimate crude(const Scenario& scenario, double t, const McConfig& cfg);

// Average of P(C_1 > (t - sum_{i>=2} C_i X_(i)) / X_(1) | rest). Needs independent weights.
TailEstimate conditional_c1(const Scenario& scenario, double t, const McConfig& cfg);

// Independent Pareto risks drawn from Pareto(proposal_index, s_i), reweighted by
// the exact likelihood ratio. Default proposal index is alpha_1 / 2.
TailEstimate importance_pareto(const Scenario& scenario, double t, const McConfig& cfg,
                               std::optional<double> proposal_index = std::nullopt);

TailEstimate estimate(Method method, const Scenario& scenario, double t, const McConfig& cfg);

std::vector<double> geometric_grid(double from, double to, std::size_t points);

// Geometric grid spanning P(X_1 > t) from 1e-3 down to 1e-9, 8 points.
std::vector<double> default_t_grid(const Scenario& scenario);

struct DiagnosticsConfig {
    std::vector<double> t_grid;
    double L_default = 1.0;
    std::map<std::pair<std::size_t, std::size_t>, double> L_pairs;  // zero-based (i, j), i < j
    std::vector<double> x_values{0.5, 1.0, 2.0};
    double decay_fraction = 0.1;  // final ratio must fall below this fraction of the first

    double L(std::size_t i, std::size_t j) const;
    void validate() const;
};

struct CurveRow {
    double t = 0.0;
    TailEstimate estimate;
    double approx = 0.0;  // NaN when the approximation was refused
    double ratio = 0.0;
    Interval ratio_ci;
    std::vector<std::string> caveats;
};

// Monte Carlo estimate against approx(scenario, t) along cfg.t_grid.
std::vector<CurveRow> tail_curve(const Scenario& scenario, const DiagnosticsConfig& diag, Method method,
                                 const McConfig& cfg);

enum class Verdict { ConsistentWithZero, NonVanishing };

const char* to_string(Verdict v);

struct ConditionSeries {
    std::string condition;  // "frechet_joint", "gumbel_joint_x" or "gumbel_joint_L"
    std::size_t i = 0;      // zero-based risk indices
    std::size_t j = 0;
    std::optional<double> x;
    std::vector<double> t;
    std::vector<double> ratio;
    Verdict verdict = Verdict::ConsistentWithZero;
};

struct ConditionReport {
    MdaClass mda = MdaClass::Frechet;
    std::vector<ConditionSeries> series;
    bool vacuous = false;
    bool all_consistent() const;
};

// Joint-tail ratios of the asymptotic-independence conditions along the t-grid.
//
// Frechet: P(C~ X_i > t, C~ X_j > t) / P(X_1 > t) over pairs with lambda_i,
// lambda_j > 0, C~ = max_{i>=2} C_i (1 when k = 1).
// Gumbel: P(C* X_i > t, C* X_j > a(t) x) / P(C_1 X_1 > t) for i != j and each x,
// and P(C* X_i > L a(t), C* X_j > L a(t)) / P(C_1 X_1 > t), C* = max_i C_i.
// Pair probabilities are exact given the weight maximum (Gaussian-copula orthant
// by quadrature); the expectation over the maximum uses its exact cdf.
ConditionReport check_conditions(const Scenario& scenario, const DiagnosticsConfig& diag);

struct SumFormTerm {
    double estimate = 0.0;
    double std_error = 0.0;
    double share = 0.0;  // of the sum
};

struct SumFormReport {
    double t = 0.0;
    std::vector<SumFormTerm> terms;  // P(C_i X_(i) > t), i = 1..k
    double sum = 0.0;
    double sum_std_error = 0.0;
    double lc_tail = 0.0;  // P(L(C) > t)
    double lc_std_error = 0.0;
    double ratio = 0.0;  // sum / lc_tail
    Interval ratio_ci;
    std::uint64_t n_samples = 0;
};

// Per-index tails P(C_i X_(i) > t), their sum and P(L(C) > t) on shared draws,
// each smoothed by conditioning on the risks (weights must be independent).
SumFormReport sum_form_check(const Scenario& scenario, double t, const McConfig& cfg);

} // namespace rwtail

#endif
