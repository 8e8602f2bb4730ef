#ifndef RWTAIL_ASYMPTOTICS_HPP
#define RWTAIL_ASYMPTOTICS_HPP

#include "rwtail/dependence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rwtail {

enum class Formula { FrechetMain, GumbelModelA, GumbelModelB, Breiman };

const char* to_string(Formula f);

// First-order approximations are refused when P(X_1 > t) exceeds the first
// threshold and carry a caveat above the second.
inline constexpr double kBulkRefuseTail = 1e-2;
inline constexpr double kBulkCaveatTail = 1e-4;

struct ApproxReport {
    double t = 0.0;
    double value = 0.0;
    double log_value = 0.0;
    Formula formula = Formula::FrechetMain;
    std::optional<double> alpha;
    std::optional<double> gamma;
    double omega = 1.0;
    std::optional<double> p;
    double lambda_tilde = 1.0;
    std::optional<double> moment;     // E[C_1^alpha]
    std::optional<double> auxiliary;  // a_1(t) = omega a(t / omega)
    std::vector<std::string> caveats;
};

struct ApproxOptions {
    bool enforce_bulk_guard = true;
};

// E[C^alpha] P(X > t) for regularly varying X.
double breiman_tail(const WeightModel& weight, const MarginalModel& marginal, double t);
double log_breiman_tail(const WeightModel& weight, const MarginalModel& marginal, double t);

// p P(X > s / omega) for a weight with an atom at its endpoint and Gumbel X.
double scaled_tail_model_a(const WeightModel& weight, const MarginalModel& marginal, double s);
double log_scaled_tail_model_a(const WeightModel& weight, const MarginalModel& marginal, double s);

// Gamma(gamma + 1) P(C > omega - omega a(t)/t) P(X > t) with t = s / omega.
double scaled_tail_model_b(const WeightModel& weight, const MarginalModel& marginal, double s);
double log_scaled_tail_model_b(const WeightModel& weight, const MarginalModel& marginal, double s);

// P(L(C) > t) ~ P(X_1 > t) E[C_1^alpha] lambda_tilde.
ApproxReport frechet_lc_approx(const Scenario& scenario, double t, ApproxOptions opts = {});

// P(L(C) > t) ~ lambda_tilde P(C_1 X_1 > t), with P(C_1 X_1 > t) from the Model A/B scaled tail.
ApproxReport gumbel_lc_approx(const Scenario& scenario, double t, ApproxOptions opts = {});

// Dispatch on the scenario's MDA class.
ApproxReport approx(const Scenario& scenario, double t, ApproxOptions opts = {});

} // namespace rwtail

#endif
