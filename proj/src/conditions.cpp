#include "rwtail/error.hpp"
#include "rwtail/montecarlo.hpp"
#include "rwtail/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rwtail {

unsigned default_workers() noexcept {
#ifdef _OPENMP
    const int n = omp_get_num_procs();
    return n > 0 ? static_cast<unsigned>(n) : 1u;
#else
    const unsigned n = std::thread::hardware_concurrency();
    return n > 0 ? n : 1u;
#endif
}

const char* to_string(Verdict v) {
    return v == Verdict::ConsistentWithZero ? "consistent-with-→0" : "non-vanishing";
}

double DiagnosticsConfig::L(std::size_t i, std::size_t j) const {
    const auto it = L_pairs.find({std::min(i, j), std::max(i, j)});
    return it == L_pairs.end() ? L_default : it->second;
}

void DiagnosticsConfig::validate() const {
    if (t_grid.empty()) {
        throw ValidationError("diagnostics t_grid is empty");
    }
    for (std::size_t m = 0; m < t_grid.size(); ++m) {
        if (!(t_grid[m] > 0.0) || !std::isfinite(t_grid[m])) {
            throw ValidationError("diagnostics t_grid must be positive and finite");
        }
        if (m > 0 && !(t_grid[m] > t_grid[m - 1])) {
            throw ValidationError("diagnostics t_grid must be increasing");
        }
    }
    if (!(L_default > 0.0)) {
        throw ValidationError("diagnostics L default must be positive");
    }
    for (const auto& [ij, v] : L_pairs) {
        if (ij.first >= ij.second) {
            throw ValidationError("diagnostics L pairs need i < j");
        }
        if (!(v > 0.0)) {
            throw ValidationError("diagnostics L values must be positive");
        }
    }
    for (double x : x_values) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw ValidationError("diagnostics x_values must be positive");
        }
    }
    if (!(decay_fraction > 0.0) || !(decay_fraction < 1.0)) {
        throw ValidationError("diagnostics decay fraction must lie in (0, 1)");
    }
}

bool ConditionReport::all_consistent() const {
    return std::all_of(series.begin(), series.end(),
                       [](const ConditionSeries& s) { return s.verdict == Verdict::ConsistentWithZero; });
}

std::vector<double> default_t_grid(const Scenario& scenario) {
    const MarginalModel& x1 = scenario.marginals().front();
    return geometric_grid(x1.tail_quantile(1e-3), x1.tail_quantile(1e-9), 8);
}

namespace {

// Law of max_{i in S} C_i for independent components: F = prod F_i.
class MaxLaw {
public:
    MaxLaw(const WeightVectorSpec& w, std::size_t first) {
        for (std::size_t i = first; i < w.size(); ++i) {
            parts_.push_back(&w[i]);
        }
        build_grid();
    }

    bool degenerate_one() const noexcept { return parts_.empty(); }

    // E[g(M)]; g nondecreasing with g(0) = 0. Continuous mass uses the
    // trapezoid in dF, jumps at grid points take g at the jump.
    double expect(const std::function<double(double)>& g) const {
        if (parts_.empty()) {
            return g(1.0);
        }
        double total = 0.0;
        double f_prev = cdf(grid_.front());
        double g_prev = g(grid_.front());
        for (std::size_t m = 1; m < grid_.size(); ++m) {
            const double c = grid_[m];
            const double f_left = cdf(std::nextafter(c, 0.0));
            const double f = cdf(c);
            const double gc = g(c);
            total += 0.5 * (g_prev + gc) * std::max(0.0, f_left - f_prev) + gc * std::max(0.0, f - f_left);
            f_prev = f;
            g_prev = gc;
        }
        return total;
    }

private:
    double cdf(double c) const {
        double f = 1.0;
        for (const auto* p : parts_) {
            f *= p->cdf(c);
        }
        return f;
    }

    void build_grid() {
        double upper = 0.0;
        for (const auto* p : parts_) {
            upper = std::max(upper, p->endpoint());
            for (const auto& a : p->atoms()) {
                grid_.push_back(a.location);
            }
            grid_.push_back(p->endpoint());
        }
        grid_.push_back(0.0);
        constexpr int kUniformCells = 200;
        for (int m = 1; m <= kUniformCells; ++m) {
            grid_.push_back(upper * m / kUniformCells);
        }
        // Refinement toward the endpoint: 16 cells per halving of the gap.
        for (int m = 1; m <= 16 * 48; ++m) {
            grid_.push_back(upper * (1.0 - std::exp2(-m / 16.0)));
        }
        for (const auto* p : parts_) {
            const double w = p->endpoint();
            if (w < upper) {
                for (int m = 1; m <= 16 * 48; ++m) {
                    grid_.push_back(w * (1.0 - std::exp2(-m / 16.0)));
                }
            }
        }
        std::sort(grid_.begin(), grid_.end());
        grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());
    }

    std::vector<const WeightModel*> parts_;
    std::vector<double> grid_;
};

class PairProbability {
public:
    explicit PairProbability(const Scenario& s) : s_(s) {}

    // P(X_i > u, X_j > v).
    double operator()(std::size_t i, std::size_t j, double u, double v) const {
        const MarginalModel& xi = s_.marginals()[i];
        const MarginalModel& xj = s_.marginals()[j];
        const double ti = xi.tail(u);
        const double tj = xj.tail(v);
        if (ti <= 0.0 || tj <= 0.0) {
            return 0.0;
        }
        if (ti >= 1.0 || tj >= 1.0) {
            return std::min(ti, tj);
        }
        if (s_.independent_risks()) {
            return ti * tj;
        }
        const double rho = (*s_.correlation())(i, j);
        return std::exp(oracles::log_bivariate_normal_upper(xi.to_normal(u), xj.to_normal(v), rho));
    }

    // Pairs with identical laws and correlation share every ratio.
    std::string key(std::size_t i, std::size_t j) const {
        std::ostringstream os;
        os.precision(17);
        os << s_.marginals()[i].describe() << '|' << s_.marginals()[j].describe() << '|'
           << (s_.independent_risks() ? 0.0 : (*s_.correlation())(i, j));
        return os.str();
    }

private:
    const Scenario& s_;
};

Verdict judge(const std::vector<double>& r, double decay) {
    if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) {
        return Verdict::ConsistentWithZero;
    }
    for (std::size_t m = 1; m < r.size(); ++m) {
        if (!(r[m] < r[m - 1]) && !(r[m] == 0.0 && r[m - 1] == 0.0)) {
            return Verdict::NonVanishing;
        }
    }
    return r.back() <= decay * r.front() ? Verdict::ConsistentWithZero : Verdict::NonVanishing;
}

} // namespace

ConditionReport check_conditions(const Scenario& scenario, const DiagnosticsConfig& diag) {
    diag.validate();
    ConditionReport report;
    report.mda = scenario.mda_class();
    const std::size_t n = scenario.n();
    if (n == 1) {
        report.vacuous = true;
        return report;
    }
    if (!scenario.weights().independent()) {
        throw UnsupportedError("condition checks need independent weights");
    }
    const PairProbability pair(scenario);
    const MarginalModel& x1 = scenario.marginals().front();
    const std::vector<double>& grid = diag.t_grid;

    // Memoised series: identical (law_i, law_j, rho, condition, x) give identical ratios.
    std::map<std::string, std::vector<double>> memo;
    auto series = [&](const std::string& key, const std::function<std::vector<double>()>& compute) {
        auto it = memo.find(key);
        if (it == memo.end()) {
            it = memo.emplace(key, compute()).first;
        }
        return it->second;
    };
    auto push = [&](const char* cond, std::size_t i, std::size_t j, std::optional<double> x, std::vector<double> r) {
        ConditionSeries s;
        s.condition = cond;
        s.i = i;
        s.j = j;
        s.x = x;
        s.t = grid;
        s.verdict = judge(r, diag.decay_fraction);
        s.ratio = std::move(r);
        report.series.push_back(std::move(s));
    };

    if (report.mda == MdaClass::Frechet) {
        // C~ = max_{i>=2} C_i; pairs i < j with lambda_i, lambda_j > 0.
        const MaxLaw c_tilde(scenario.weights(), 1);
        const auto& lambda = scenario.lambda().lambda;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!(lambda[i] > 0.0) || !(lambda[j] > 0.0)) {
                    continue;
                }
                push("frechet_joint", i, j, std::nullopt, series("frechet_joint|" + pair.key(i, j), [&] {
                         std::vector<double> r;
                         for (double t : grid) {
                             const double num = c_tilde.expect([&](double c) {
                                 return c > 0.0 ? pair(i, j, t / c, t / c) : 0.0;
                             });
                             r.push_back(num / x1.tail(t));
                         }
                         return r;
                     }));
            }
        }
        return report;
    }

    const MaxLaw c_star(scenario.weights(), 0);
    std::vector<double> denom;
    std::vector<double> aux;
    for (double t : grid) {
        denom.push_back(oracles::scale_mixture_tail(scenario.weights()[0], x1, t));
        aux.push_back(x1.auxiliary(t));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            for (double x : diag.x_values) {
                std::ostringstream key;
                key.precision(17);
                key << "gumbel_joint_x|" << pair.key(i, j) << '|' << x;
                push("gumbel_joint_x", i, j, x, series(key.str(), [&] {
                         std::vector<double> r;
                         for (std::size_t m = 0; m < grid.size(); ++m) {
                             const double t = grid[m];
                             const double v = aux[m] * x;
                             const double num = c_star.expect([&](double c) {
                                 return c > 0.0 ? pair(i, j, t / c, v / c) : 0.0;
                             });
                             r.push_back(num / denom[m]);
                         }
                         return r;
                     }));
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double L = diag.L(i, j);
            std::ostringstream key;
            key.precision(17);
            key << "gumbel_joint_L|" << pair.key(i, j) << '|' << L;
            push("gumbel_joint_L", i, j, std::nullopt, series(key.str(), [&] {
                     std::vector<double> r;
                     for (std::size_t m = 0; m < grid.size(); ++m) {
                         const double v = L * aux[m];
                         const double num = c_star.expect([&](double c) {
                             return c > 0.0 ? pair(i, j, v / c, v / c) : 0.0;
                         });
                         r.push_back(num / denom[m]);
                     }
                     return r;
                 }));
        }
    }
    return report;
}

} // namespace rwtail
