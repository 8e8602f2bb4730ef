#ifndef RWTAIL_DEPENDENCE_HPP
#define RWTAIL_DEPENDENCE_HPP

#include "rwtail/marginals.hpp"
#include "rwtail/rng.hpp"
#include "rwtail/weights.hpp"

#include <optional>
#include <span>
#include <vector>

namespace rwtail {

// Lower-triangular Cholesky factor, row-major packed.
class LowerFactor {
public:
    LowerFactor(std::size_t n, std::vector<double> packed);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return j > i ? 0.0 : packed_[i * (i + 1) / 2 + j];
    }

    // z <- L z, in place.
    void apply(std::span<double> z) const noexcept;

private:
    std::size_t n_;
    std::vector<double> packed_;
};

class CorrelationMatrix {
public:
    explicit CorrelationMatrix(std::vector<std::vector<double>> rows);

    static CorrelationMatrix identity(std::size_t n);
    static CorrelationMatrix equicorrelated(std::size_t n, double rho);

    std::size_t size() const noexcept { return rows_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    bool is_identity() const noexcept;

    // Cholesky factorization; throws ValidationError naming the first failing property.
    LowerFactor validate() const;

private:
    std::vector<std::vector<double>> rows_;
};

// One experiment: n risks with a Gaussian copula (or independence) and k weights.
//
// Construction validates everything the estimators and approximations rely on:
// 1 <= k <= n, the first marginal is the heaviest (lambda weights exist), a
// single MDA class across marginals, and a positive-definite correlation.
class Scenario {
public:
    Scenario(std::size_t k, std::vector<MarginalModel> marginals, std::optional<CorrelationMatrix> correlation,
             WeightVectorSpec weights);

    std::size_t n() const noexcept { return marginals_.size(); }
    std::size_t k() const noexcept { return k_; }
    const std::vector<MarginalModel>& marginals() const noexcept { return marginals_; }
    const std::optional<CorrelationMatrix>& correlation() const noexcept { return correlation_; }
    // Factor of a non-identity correlation; empty for independent risks.
    const std::optional<LowerFactor>& factor() const noexcept { return factor_; }
    bool independent_risks() const noexcept { return !factor_.has_value(); }
    const WeightVectorSpec& weights() const noexcept { return weights_; }
    const LambdaWeights& lambda() const noexcept { return lambda_; }
    MdaClass mda_class() const noexcept { return mda_; }

private:
    std::size_t k_;
    std::vector<MarginalModel> marginals_;
    std::optional<CorrelationMatrix> correlation_;
    std::optional<LowerFactor> factor_;
    WeightVectorSpec weights_;
    LambdaWeights lambda_;
    MdaClass mda_;
};

// One joint draw of (X_1, ..., X_n) into out (size n).
void sample_risks(const Scenario& scenario, Stream& s, std::span<double> out);

// max over theta of min(sin theta, rho sin theta + sqrt(1 - rho^2) cos theta):
// the log-scale joint-tail constant of a correlated lognormal pair.
double eta(double rho);

} // namespace rwtail

#endif
