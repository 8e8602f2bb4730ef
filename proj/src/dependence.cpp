#include "rwtail/dependence.hpp"

#include "rwtail/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rwtail {

namespace {

std::string entry(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

double eta_objective(double theta, double rho, double rho_c) {
    const double s = std::sin(theta);
    return std::min(s, rho * s + rho_c * std::cos(theta));
}

} // namespace

LowerFactor::LowerFactor(std::size_t n, std::vector<double> packed) : n_(n), packed_(std::move(packed)) {}

void LowerFactor::apply(std::span<double> z) const noexcept {
    // Row i only reads z[0..i], so walking rows bottom-up works in place.
    for (std::size_t i = n_; i-- > 0;) {
        const double* row = packed_.data() + i * (i + 1) / 2;
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            acc += row[j] * z[j];
        }
        z[i] = acc;
    }
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {}

CorrelationMatrix CorrelationMatrix::identity(std::size_t n) { return equicorrelated(n, 0.0); }

CorrelationMatrix CorrelationMatrix::equicorrelated(std::size_t n, double rho) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, rho));
    for (std::size_t i = 0; i < n; ++i) {
        rows[i][i] = 1.0;
    }
    return CorrelationMatrix(std::move(rows));
}

bool CorrelationMatrix::is_identity() const noexcept {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = 0; j < rows_[i].size(); ++j) {
            if (rows_[i][j] != (i == j ? 1.0 : 0.0)) {
                return false;
            }
        }
    }
    return true;
}

LowerFactor CorrelationMatrix::validate() const {
    const std::size_t n = rows_.size();
    if (n == 0) {
        throw ValidationError("correlation matrix is empty");
    }
    for (const auto& row : rows_) {
        if (row.size() != n) {
            throw ValidationError("correlation matrix is not square");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rows_[i][i] != 1.0) {
            throw ValidationError("correlation matrix diagonal entry " + entry(i, i) + " is not 1");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rows_[i][j] != rows_[j][i]) {
                throw ValidationError("correlation matrix is not symmetric at " + entry(i, j));
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(std::abs(rows_[i][j]) < 1.0)) {
                throw ValidationError("correlation " + entry(i, j) + " must lie in (-1,1)");
            }
        }
    }
    std::vector<double> packed(n * (n + 1) / 2, 0.0);
    auto at = [&packed](std::size_t i, std::size_t j) -> double& { return packed[i * (i + 1) / 2 + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = rows_[i][j];
            for (std::size_t m = 0; m < j; ++m) {
                sum -= at(i, m) * at(j, m);
            }
            if (i == j) {
                if (!(sum > 0.0)) {
                    throw ValidationError("correlation matrix is not positive definite (pivot " +
                                          std::to_string(i + 1) + ")");
                }
                at(i, i) = std::sqrt(sum);
            } else {
                at(i, j) = sum / at(j, j);
            }
        }
    }
    return LowerFactor(n, std::move(packed));
}

Scenario::Scenario(std::size_t k, std::vector<MarginalModel> marginals, std::optional<CorrelationMatrix> correlation,
                   WeightVectorSpec weights)
    : k_(k),
      marginals_(std::move(marginals)),
      correlation_(std::move(correlation)),
      weights_(std::move(weights)) {
    if (marginals_.empty()) {
        throw ValidationError("scenario needs at least one marginal");
    }
    if (k_ < 1 || k_ > marginals_.size()) {
        throw ValidationError("k must satisfy 1 <= k <= n");
    }
    if (weights_.size() != k_) {
        throw ValidationError("weights must have exactly k = " + std::to_string(k_) + " entries");
    }
    mda_ = marginals_.front().mda_class();
    for (const auto& m : marginals_) {
        if (m.mda_class() != mda_) {
            throw ValidationError("mixed Frechet/Gumbel portfolios are not supported");
        }
    }
    lambda_ = lambda_weights(marginals_);
    if (correlation_) {
        if (correlation_->size() != marginals_.size()) {
            throw ValidationError("correlation matrix size does not match n");
        }
        LowerFactor f = correlation_->validate();
        if (!correlation_->is_identity()) {
            factor_ = std::move(f);
        }
    }
}

void sample_risks(const Scenario& scenario, Stream& s, std::span<double> out) {
    const auto& marginals = scenario.marginals();
    const std::size_t n = marginals.size();
    if (const auto& factor = scenario.factor()) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = s.normal();
        }
        factor->apply(out.first(n));
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = marginals[i].from_normal(out[i]);
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (marginals[i].family() == Family::LogNormal) {
            out[i] = marginals[i].from_normal(s.normal());
        } else {
            out[i] = marginals[i].tail_quantile(s.uniform());
        }
    }
}

double eta(double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw DomainError("eta requires |rho| < 1");
    }
    const double rho_c = std::sqrt(1.0 - rho * rho);
    constexpr int kGrid = 10000;
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    const double h = kTwoPi / kGrid;
    int best = 0;
    double best_value = eta_objective(0.0, rho, rho_c);
    for (int i = 1; i <= kGrid; ++i) {
        const double v = eta_objective(i * h, rho, rho_c);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    // Golden-section refinement on the bracketing cells; the objective is
    // unimodal there (minimum of two sinusoids around their crossing).
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = (best - 1) * h;
    double b = (best + 1) * h;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = eta_objective(c, rho, rho_c);
    double fd = eta_objective(d, rho, rho_c);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = eta_objective(c, rho, rho_c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = eta_objective(d, rho, rho_c);
        }
    }
    return std::max({best_value, fc, fd});
}

} // namespace rwtail
