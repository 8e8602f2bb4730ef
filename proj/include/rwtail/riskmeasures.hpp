#ifndef RWTAIL_RISKMEASURES_HPP
#define RWTAIL_RISKMEASURES_HPP

#include "rwtail/asymptotics.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rwtail {

struct RiskOptions {
    double guard = 0.99;  // below this p the first-order value is flagged
};

struct VarReport {
    double p = 0.0;
    double value = 0.0;       // root of approx(t) = 1 - p
    bool below_guard = false;
    // Gumbel only: quantile of C_1 X_1 by quadrature inversion.
    std::optional<double> var_c1x1;
    Formula formula = Formula::FrechetMain;
    std::vector<std::string> caveats;
};

struct EsReport {
    double p = 0.0;
    double value = 0.0;
    std::string tag;
    VarReport var;
};

VarReport var_asymptotic(const Scenario& scenario, double p, RiskOptions opts = {});

// Gumbel scenarios only; returns the VaR value tagged as a first-order shortcut.
EsReport es_asymptotic(const Scenario& scenario, double p, RiskOptions opts = {});

// Quantile of C X with C, X independent: root of scale_mixture_tail(C, X, t) = 1 - p.
double scale_mixture_quantile(const WeightModel& weight, const MarginalModel& marginal, double p);

// Higher order statistic: 0-based index ceil(p (N - 1)) of the sorted sample.
// Requires N >= min_tail_samples / (1 - p).
double var_empirical(std::span<const double> samples, double p, double min_tail_samples = 10.0);

// Mean of the samples strictly above var_empirical (the VaR itself if none).
double es_empirical(std::span<const double> samples, double p, double min_tail_samples = 10.0);

} // namespace rwtail

#endif
