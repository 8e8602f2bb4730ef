#include "rwtail/normal.hpp"

#include "rwtail/error.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>

namespace rwtail::normal {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;

// Asymptotic series of the Mills ratio, used once erfc underflows.
double log_tail_asymptotic(double z) {
    const double w = 1.0 / (z * z);
    // 1 - 1/z^2 + 3/z^4 - 15/z^6 + ...
    double term = 1.0;
    double series = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -(2.0 * k - 1.0) * w;
        series += term;
    }
    return -0.5 * z * z - std::log(z) - kLogSqrt2Pi + std::log(series);
}
} // namespace

double log_pdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

double log_tail(double z) {
    if (std::isnan(z)) {
        return z;
    }
    if (z == std::numeric_limits<double>::infinity()) {
        return -std::numeric_limits<double>::infinity();
    }
    if (z < 0.0) {
        return std::log1p(-0.5 * boost::math::erfc(-z / kSqrt2));
    }
    if (z < 30.0) {
        return std::log(0.5 * boost::math::erfc(z / kSqrt2));
    }
    return log_tail_asymptotic(z);
}

double tail(double z) { return std::exp(log_tail(z)); }

double tail_inverse(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("normal tail inverse requires q in (0,1)");
    }
    return kSqrt2 * boost::math::erfc_inv(2.0 * q);
}

double tail_inverse_log(double log_q) {
    if (!(log_q < 0.0)) {
        throw DomainError("normal tail inverse requires log q < 0");
    }
    if (log_q > -700.0) {
        return tail_inverse(std::exp(log_q));
    }
    // Newton on log_tail(z) = log_q; log_tail is concave so iterates converge from above.
    double z = std::sqrt(-2.0 * log_q);
    for (int it = 0; it < 100; ++it) {
        const double f = log_tail(z) - log_q;
        const double hazard = std::exp(log_pdf(z) - log_tail(z));
        const double step = f / hazard;
        z += step;
        if (std::abs(step) <= 1e-15 * std::abs(z)) {
            break;
        }
    }
    return z;
}

} // namespace rwtail::normal
