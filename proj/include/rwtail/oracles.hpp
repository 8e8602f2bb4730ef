#ifndef RWTAIL_ORACLES_HPP
#define RWTAIL_ORACLES_HPP

// Independent numerical reference values. Nothing here calls the asymptotic
// formulas; tests compare the two routes.

#include "rwtail/marginals.hpp"
#include "rwtail/weights.hpp"

#include <functional>
#include <span>
#include <vector>

namespace rwtail::oracles {

// Exact P(C X > t) for independent C and X by adaptive Gauss-Kronrod quadrature.
//
// Atoms of C are summed exactly. The continuous part is integrated in
// u = -log P(C > c), which turns the near-endpoint boundary layer of width
// ~a(t)/t into an O(1)-wide bump, and the integrand is scaled by
// P(X > t / upper) so tiny probabilities keep full relative precision.
// Throws NumericError when the error estimate exceeds rel_tol.
double log_scale_mixture_tail(const WeightModel& weight, const MarginalModel& marginal, double t,
                              double rel_tol = 1e-9);
double scale_mixture_tail(const WeightModel& weight, const MarginalModel& marginal, double t,
                          double rel_tol = 1e-9);

struct TrendReport {
    std::vector<double> ratios;
    bool monotone = false;  // |ratio - target| nonincreasing along the grid
    bool trending = false;  // last ratio closer to target than the first
    double final_value = 0.0;
};

// Ratios f(t)/g(t) along an increasing grid, judged against `target`.
TrendReport ratio_limit(const std::function<double(double)>& f, const std::function<double(double)>& g,
                        std::span<const double> t_grid, double target = 1.0);

// Brute-force max over theta of min(sin theta, rho sin theta + sqrt(1-rho^2) cos theta)
// by repeated 10^4-point grid zooms.
double grid_max_min(double rho);

// E[B^order] for B ~ Beta(a, b) by tanh-sinh quadrature of the density.
double beta_moment_numeric(double a, double b, double order);

struct BonferroniBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// First two Bonferroni bounds on P(max X_i > t) for independent risks.
BonferroniBounds bonferroni_bounds(std::span<const MarginalModel> marginals, double t);

// log P(Z_1 > a, Z_2 > b) for a standard bivariate normal with correlation rho.
double log_bivariate_normal_upper(double a, double b, double rho);

} // namespace rwtail::oracles

#endif
