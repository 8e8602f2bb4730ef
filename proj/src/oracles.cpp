#include "rwtail/oracles.hpp"

#include "rwtail/error.hpp"
#include "rwtail/normal.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rwtail::oracles {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

struct PanelSum {
    double value = 0.0;
    double error = 0.0;
};

// Integrates f over [0, inf) panel by panel, given that |f(u)| <= bound * e^{-u}.
template <class F>
PanelSum integrate_exp_bounded(F&& f, double bound, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    PanelSum out;
    constexpr double kMaxU = 745.0;
    // Below ~1e-14 the Kronrod estimate is roundoff; asking for more only recurses.
    const double panel_tol = std::max(rel_tol * 1e-3, 1e-14);
    for (double u = 0.0; u < kMaxU; u += 1.0) {
        double err = 0.0;
        double v = 0.0;
        if (u == 0.0) {
            // u^(alpha/a)-type behaviour at 0 when c -> 0
            boost::math::quadrature::tanh_sinh<double> ts;
            double l1 = 0.0;
            v = ts.integrate(f, 0.0, 1.0, panel_tol, &err, &l1);
        } else {
            v = gauss_kronrod<double, 31>::integrate(f, u, u + 1.0, 15, panel_tol, &err);
        }
        out.value += v;
        out.error += err;
        if (out.value > 0.0 && bound * std::exp(-(u + 1.0)) <= panel_tol * out.value) {
            break;
        }
    }
    return out;
}

double objective(double theta, double rho, double rho_c) {
    const double s = std::sin(theta);
    return std::min(s, rho * s + rho_c * std::cos(theta));
}

} // namespace

double log_scale_mixture_tail(const WeightModel& weight, const MarginalModel& marginal, double t,
                              double rel_tol) {
    double log_total = kNegInf;
    for (const auto& atom : weight.atoms()) {
        if (atom.location > 0.0 && atom.mass > 0.0) {
            log_total = log_add(log_total, std::log(atom.mass) + marginal.log_tail(t / atom.location));
        }
    }
    const auto part = weight.continuous_part();
    if (!part) {
        return log_total;
    }
    const double ref = marginal.log_tail(t / part->upper);
    if (ref == kNegInf) {
        return log_total;
    }
    const bool uniform = part->a == 1.0 && part->b == 1.0;
    // Weight level whose upper tail is e^{-u}; 1 - gap cancels badly near u = 0.
    auto level = [&](double u) {
        const double p = -std::expm1(-u);
        if (uniform) {
            return p;
        }
        return u < 1.0 ? boost::math::ibeta_inv(part->a, part->b, p)
                       : boost::math::ibetac_inv(part->a, part->b, std::exp(-u));
    };
    auto integrand = [&](double u) {
        const double c = part->upper * level(u);
        if (!(c > 0.0)) {
            return 0.0;
        }
        return std::exp(marginal.log_tail(t / c) - ref - u);
    };
    const PanelSum ps = integrate_exp_bounded(integrand, 1.0, rel_tol);
    if (ps.value > 0.0 && ps.error > rel_tol * ps.value) {
        throw NumericError("scale-mixture quadrature did not reach the requested tolerance",
                           ps.error / ps.value);
    }
    if (!(ps.value > 0.0)) {
        return log_total;
    }
    return log_add(log_total, std::log(part->mass) + ref + std::log(ps.value));
}

double scale_mixture_tail(const WeightModel& weight, const MarginalModel& marginal, double t, double rel_tol) {
    return std::exp(log_scale_mixture_tail(weight, marginal, t, rel_tol));
}

TrendReport ratio_limit(const std::function<double(double)>& f, const std::function<double(double)>& g,
                        std::span<const double> t_grid, double target) {
    TrendReport out;
    for (double t : t_grid) {
        const double fv = f(t);
        const double gv = g(t);
        if (!(fv > 0.0) || !(gv > 0.0)) {
            throw DomainError("ratio_limit requires positive values on the grid");
        }
        out.ratios.push_back(fv / gv);
    }
    if (out.ratios.empty()) {
        return out;
    }
    out.monotone = true;
    for (std::size_t i = 1; i < out.ratios.size(); ++i) {
        const double prev = std::abs(out.ratios[i - 1] - target);
        const double cur = std::abs(out.ratios[i] - target);
        if (cur > prev * (1.0 + 1e-12) + 1e-15) {
            out.monotone = false;
        }
    }
    const double first = std::abs(out.ratios.front() - target);
    const double last = std::abs(out.ratios.back() - target);
    out.trending = last < first || last <= 1e-12 * std::max(1.0, std::abs(target));
    out.final_value = out.ratios.back();
    return out;
}

double grid_max_min(double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw DomainError("grid_max_min requires |rho| < 1");
    }
    const double rho_c = std::sqrt(1.0 - rho * rho);
    constexpr int kPoints = 10000;
    double lo = 0.0;
    double hi = 2.0 * std::numbers::pi;
    double best_value = -2.0;
    for (int level = 0; level < 4; ++level) {
        const double h = (hi - lo) / kPoints;
        double best_theta = lo;
        for (int i = 0; i <= kPoints; ++i) {
            const double theta = lo + i * h;
            const double v = objective(theta, rho, rho_c);
            if (v > best_value) {
                best_value = v;
                best_theta = theta;
            }
        }
        lo = best_theta - h;
        hi = best_theta + h;
    }
    return best_value;
}

double beta_moment_numeric(double a, double b, double order) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double log_norm = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    auto density = [&](double c) {
        if (c <= 0.0 || c >= 1.0) return 0.0;
        return std::exp((a - 1.0 + order) * std::log(c) + (b - 1.0) * std::log1p(-c) - log_norm);
    };
    return integrator.integrate(density, 0.0, 1.0);
}

BonferroniBounds bonferroni_bounds(std::span<const MarginalModel> marginals, double t) {
    BonferroniBounds out;
    double pairs = 0.0;
    for (std::size_t i = 0; i < marginals.size(); ++i) {
        const double ti = marginals[i].tail(t);
        out.upper += ti;
        for (std::size_t j = i + 1; j < marginals.size(); ++j) {
            pairs += ti * marginals[j].tail(t);
        }
    }
    out.lower = out.upper - pairs;
    return out;
}

double log_bivariate_normal_upper(double a, double b, double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw DomainError("bivariate normal requires |rho| < 1");
    }
    if (a == kNegInf) return normal::log_tail(b);
    if (b == kNegInf) return normal::log_tail(a);
    const double s = std::sqrt(1.0 - rho * rho);
    // log of phi(z) * P(Z_2 > b | Z_1 = z), concave in z.
    auto g = [&](double z) { return normal::log_pdf(z) + normal::log_tail((b - rho * z) / s); };
    // Locate the peak on [a, inf) by golden section.
    double lo = a;
    double hi = std::max(a, 0.0) + std::abs(b) + 40.0;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double gc = g(c);
    double gd = g(d);
    while (hi - lo > 1e-9) {
        if (gc > gd) {
            hi = d;
            d = c;
            gd = gc;
            c = hi - invphi * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + invphi * (hi - lo);
            gd = g(d);
        }
    }
    const double peak = std::max(a, 0.5 * (lo + hi));
    const double gmax = std::max(g(peak), g(a));
    if (gmax == kNegInf) {
        return kNegInf;
    }
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double z) { return std::exp(g(z) - gmax); };
    constexpr double kWidth = 0.5;
    double total = 0.0;
    for (double z = a; z < a + 200.0; z += kWidth) {
        const double v = gauss_kronrod<double, 31>::integrate(f, z, z + kWidth, 15, 1e-12);
        total += v;
        if (z + kWidth > peak && f(z + kWidth) < 1e-18 && v <= 1e-16 * total) {
            break;
        }
    }
    return gmax + std::log(total);
}

} // namespace rwtail::oracles
