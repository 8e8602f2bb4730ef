#ifndef RWTAIL_MARGINALS_HPP
#define RWTAIL_MARGINALS_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rwtail {

// Parameter sets of the supported marginal families. All have unbounded support.
struct Pareto {
    double alpha;  // regular-variation index
    double scale;  // lower endpoint
};

struct LogNormal {
    double mu;
    double sigma;
};

// P(X > t) = exp(-rate * t^shape), shape in (0, 1].
struct Weibullian {
    double rate;
    double shape;
};

struct Exponential {
    double rate;
};

using MarginalParams = std::variant<Pareto, LogNormal, Weibullian, Exponential>;

enum class Family { Pareto, LogNormal, Weibullian, Exponential };

// Maximum domain of attraction. Bounded-support (Weibull) laws are not modelled.
enum class MdaClass { Frechet, Gumbel };

const char* to_string(Family f);
const char* to_string(MdaClass c);

// Immutable parametric law of a single positive risk.
//
// Tail probabilities are evaluated in log-space; `tail` exponentiates at the
// boundary, so use `log_tail` when values below ~1e-308 matter.
class MarginalModel {
public:
    explicit MarginalModel(MarginalParams params);

    static MarginalModel pareto(double alpha, double scale);
    static MarginalModel lognormal(double mu, double sigma);
    static MarginalModel weibullian(double rate, double shape);
    static MarginalModel exponential(double rate);

    const MarginalParams& params() const noexcept { return params_; }
    Family family() const noexcept;
    MdaClass mda_class() const noexcept;
    std::string describe() const;

    double lower_endpoint() const noexcept;

    double log_tail(double t) const;
    double tail(double t) const;
    double cdf(double t) const;

    // Inverse of the cdf, p in (0, 1).
    double quantile(double p) const;
    // Inverse of the survival function, q in (0, 1].
    double tail_quantile(double q) const;
    double log_tail_quantile(double log_q) const;

    // Transform of a standard normal score preserving the upper tail exactly:
    // returns x with P(X > x) = P(Z > z).
    double from_normal(double z) const;
    // Normal score of x, the inverse of from_normal.
    double to_normal(double x) const;

    // Gumbel auxiliary function a(t); throws UnsupportedError for Frechet laws
    // and DomainError at or below auxiliary_threshold().
    double auxiliary(double t) const;
    double auxiliary_threshold() const;

    // Regular-variation index; empty for Gumbel laws.
    std::optional<double> rv_index() const noexcept;

private:
    MarginalParams params_;
};

struct LambdaWeights {
    std::vector<double> lambda;  // lambda[0] == 1
    double lambda_tilde = 0.0;
};

// Tail-equivalence constants lim P(X_i > t) / P(X_1 > t) relative to models[0].
// Throws InvalidOrderingError when some X_i has a heavier tail than X_1.
LambdaWeights lambda_weights(std::span<const MarginalModel> models);

} // namespace rwtail

#endif
