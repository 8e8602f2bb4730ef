#include "rwtail/marginals.hpp"

#include "rwtail/error.hpp"
#include "rwtail/normal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rwtail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void validate(const MarginalParams& params) {
    std::visit(overloaded{
                   [](const Pareto& p) {
                       if (!positive_finite(p.alpha) || !positive_finite(p.scale)) {
                           throw ValidationError("Pareto requires alpha > 0 and scale > 0");
                       }
                   },
                   [](const LogNormal& p) {
                       if (!std::isfinite(p.mu) || !positive_finite(p.sigma)) {
                           throw ValidationError("LogNormal requires finite mu and sigma > 0");
                       }
                   },
                   [](const Weibullian& p) {
                       if (!positive_finite(p.rate) || !(p.shape > 0.0 && p.shape <= 1.0)) {
                           throw ValidationError("Weibullian requires rate > 0 and shape in (0,1]");
                       }
                   },
                   [](const Exponential& p) {
                       if (!positive_finite(p.rate)) {
                           throw ValidationError("Exponential requires rate > 0");
                       }
                   },
               },
               params);
}

// Tail classes ordered from heaviest to lightest. Exponential is Weibullian with shape 1.
int tail_rank(const MarginalModel& m) {
    switch (m.family()) {
    case Family::Pareto: return 0;
    case Family::LogNormal: return 1;
    case Family::Weibullian:
    case Family::Exponential: return 2;
    }
    return 3;
}

Weibullian as_weibullian(const MarginalModel& m) {
    if (const auto* e = std::get_if<Exponential>(&m.params())) {
        return {e->rate, 1.0};
    }
    return std::get<Weibullian>(m.params());
}

[[noreturn]] void heavier(const MarginalModel& ref, const MarginalModel& other, std::size_t i) {
    throw InvalidOrderingError("marginal " + std::to_string(i + 1) + " (" + other.describe() +
                               ") has a heavier tail than marginal 1 (" + ref.describe() + ")");
}

// lim P(other > t) / P(ref > t).
double tail_ratio_limit(const MarginalModel& ref, const MarginalModel& other, std::size_t i) {
    const int r0 = tail_rank(ref);
    const int r1 = tail_rank(other);
    if (r1 > r0) {
        return 0.0;
    }
    if (r1 < r0) {
        heavier(ref, other, i);
    }
    switch (r0) {
    case 0: {
        const auto& a = std::get<Pareto>(ref.params());
        const auto& b = std::get<Pareto>(other.params());
        if (b.alpha > a.alpha) return 0.0;
        if (b.alpha < a.alpha) heavier(ref, other, i);
        return std::pow(b.scale / a.scale, a.alpha);
    }
    case 1: {
        const auto& a = std::get<LogNormal>(ref.params());
        const auto& b = std::get<LogNormal>(other.params());
        if (b.sigma < a.sigma) return 0.0;
        if (b.sigma > a.sigma) heavier(ref, other, i);
        if (b.mu < a.mu) return 0.0;
        if (b.mu > a.mu) heavier(ref, other, i);
        return 1.0;
    }
    default: {
        const Weibullian a = as_weibullian(ref);
        const Weibullian b = as_weibullian(other);
        if (b.shape > a.shape) return 0.0;
        if (b.shape < a.shape) heavier(ref, other, i);
        if (b.rate > a.rate) return 0.0;
        if (b.rate < a.rate) heavier(ref, other, i);
        return 1.0;
    }
    }
}

} // namespace

const char* to_string(Family f) {
    switch (f) {
    case Family::Pareto: return "pareto";
    case Family::LogNormal: return "lognormal";
    case Family::Weibullian: return "weibullian";
    case Family::Exponential: return "exponential";
    }
    return "?";
}

const char* to_string(MdaClass c) { return c == MdaClass::Frechet ? "frechet" : "gumbel"; }

MarginalModel::MarginalModel(MarginalParams params) : params_(params) { validate(params_); }

MarginalModel MarginalModel::pareto(double alpha, double scale) { return MarginalModel(Pareto{alpha, scale}); }
MarginalModel MarginalModel::lognormal(double mu, double sigma) { return MarginalModel(LogNormal{mu, sigma}); }
MarginalModel MarginalModel::weibullian(double rate, double shape) {
    return MarginalModel(Weibullian{rate, shape});
}
MarginalModel MarginalModel::exponential(double rate) { return MarginalModel(Exponential{rate}); }

Family MarginalModel::family() const noexcept { return static_cast<Family>(params_.index()); }

MdaClass MarginalModel::mda_class() const noexcept {
    return family() == Family::Pareto ? MdaClass::Frechet : MdaClass::Gumbel;
}

std::string MarginalModel::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Pareto& p) { os << "Pareto(alpha=" << p.alpha << ", scale=" << p.scale << ")"; },
                   [&](const LogNormal& p) { os << "LogNormal(mu=" << p.mu << ", sigma=" << p.sigma << ")"; },
                   [&](const Weibullian& p) {
                       os << "Weibullian(rate=" << p.rate << ", shape=" << p.shape << ")";
                   },
                   [&](const Exponential& p) { os << "Exponential(rate=" << p.rate << ")"; },
               },
               params_);
    return os.str();
}

double MarginalModel::lower_endpoint() const noexcept {
    if (const auto* p = std::get_if<Pareto>(&params_)) {
        return p->scale;
    }
    return 0.0;
}

double MarginalModel::log_tail(double t) const {
    if (std::isnan(t)) {
        throw DomainError("tail evaluated at NaN");
    }
    if (t <= lower_endpoint()) {
        return 0.0;
    }
    if (t == kInf) {
        return -kInf;
    }
    return std::visit(overloaded{
                          [t](const Pareto& p) { return p.alpha * (std::log(p.scale) - std::log(t)); },
                          [t](const LogNormal& p) { return normal::log_tail((std::log(t) - p.mu) / p.sigma); },
                          [t](const Weibullian& p) { return -p.rate * std::pow(t, p.shape); },
                          [t](const Exponential& p) { return -p.rate * t; },
                      },
                      params_);
}

double MarginalModel::tail(double t) const { return std::exp(log_tail(t)); }

double MarginalModel::cdf(double t) const { return -std::expm1(log_tail(t)); }

double MarginalModel::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("quantile requires p in (0,1)");
    }
    return log_tail_quantile(std::log1p(-p));
}

double MarginalModel::tail_quantile(double q) const {
    if (!(q > 0.0 && q <= 1.0)) {
        throw DomainError("tail quantile requires q in (0,1]");
    }
    return log_tail_quantile(std::log(q));
}

double MarginalModel::log_tail_quantile(double log_q) const {
    if (!(log_q <= 0.0) || std::isnan(log_q)) {
        throw DomainError("tail quantile requires log q <= 0");
    }
    if (log_q == 0.0) {
        return lower_endpoint();
    }
    if (log_q == -kInf) {
        return kInf;
    }
    return std::visit(overloaded{
                          [log_q](const Pareto& p) { return p.scale * std::exp(-log_q / p.alpha); },
                          [log_q](const LogNormal& p) {
                              return std::exp(p.mu + p.sigma * normal::tail_inverse_log(log_q));
                          },
                          [log_q](const Weibullian& p) { return std::pow(-log_q / p.rate, 1.0 / p.shape); },
                          [log_q](const Exponential& p) { return -log_q / p.rate; },
                      },
                      params_);
}

double MarginalModel::from_normal(double z) const {
    if (const auto* p = std::get_if<LogNormal>(&params_)) {
        return std::exp(p->mu + p->sigma * z);
    }
    return log_tail_quantile(normal::log_tail(z));
}

double MarginalModel::to_normal(double x) const {
    if (const auto* p = std::get_if<LogNormal>(&params_)) {
        return x <= 0.0 ? -kInf : (std::log(x) - p->mu) / p->sigma;
    }
    const double lq = log_tail(x);
    return lq == 0.0 ? -kInf : normal::tail_inverse_log(lq);
}

double MarginalModel::auxiliary_threshold() const {
    return std::visit(overloaded{
                          [](const Pareto&) -> double {
                              throw UnsupportedError("auxiliary function is defined for Gumbel-MDA laws only");
                          },
                          [](const LogNormal& p) { return std::exp(p.mu); },
                          [](const Weibullian&) { return 0.0; },
                          [](const Exponential&) { return -kInf; },
                      },
                      params_);
}

double MarginalModel::auxiliary(double t) const {
    const double threshold = auxiliary_threshold();
    if (!(t > threshold) || !std::isfinite(t)) {
        throw DomainError("auxiliary function evaluated at or below its validity threshold");
    }
    return std::visit(overloaded{
                          [](const Pareto&) { return 0.0; },
                          [t](const LogNormal& p) { return p.sigma * p.sigma * t / (std::log(t) - p.mu); },
                          [t](const Weibullian& p) { return std::pow(t, 1.0 - p.shape) / (p.rate * p.shape); },
                          [](const Exponential& p) { return 1.0 / p.rate; },
                      },
                      params_);
}

std::optional<double> MarginalModel::rv_index() const noexcept {
    if (const auto* p = std::get_if<Pareto>(&params_)) {
        return p->alpha;
    }
    return std::nullopt;
}

LambdaWeights lambda_weights(std::span<const MarginalModel> models) {
    if (models.empty()) {
        throw ValidationError("lambda weights need at least one marginal");
    }
    LambdaWeights out;
    out.lambda.reserve(models.size());
    out.lambda.push_back(1.0);
    for (std::size_t i = 1; i < models.size(); ++i) {
        out.lambda.push_back(tail_ratio_limit(models[0], models[i], i));
    }
    for (double l : out.lambda) {
        out.lambda_tilde += l;
    }
    return out;
}

} // namespace rwtail
