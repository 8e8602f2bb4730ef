#include "rwtail/weights.hpp"

#include "rwtail/error.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rwtail {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void validate(const WeightParams& params) {
    std::visit(overloaded{
                   [](const Degenerate& w) {
                       if (!(std::isfinite(w.c) && w.c >= 0.0)) {
                           throw ValidationError("degenerate weight requires c >= 0");
                       }
                   },
                   [](const Uniform& w) {
                       if (!positive_finite(w.omega)) {
                           throw ValidationError("uniform weight requires omega > 0");
                       }
                   },
                   [](const BetaWeight& w) {
                       if (!positive_finite(w.a) || !positive_finite(w.b) || !positive_finite(w.omega)) {
                           throw ValidationError("beta weight requires a > 0, b > 0, omega > 0");
                       }
                   },
                   [](const AtomMixture& w) {
                       if (!positive_finite(w.omega) || !(w.p > 0.0 && w.p <= 1.0) ||
                           !(w.eta > 0.0 && w.eta < w.omega)) {
                           throw ValidationError("model_a weight requires omega > 0, p in (0,1], eta in (0,omega)");
                       }
                   },
               },
               params);
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Ratio P(C > w - x/t) / P(C > w - 1/t) at t = 1e6 gives the near-endpoint index.
constexpr double kProbeT = 1e6;
constexpr double kGammaMismatch = 0.05;

} // namespace

const char* to_string(WeightKind k) {
    switch (k) {
    case WeightKind::Degenerate: return "degenerate";
    case WeightKind::Uniform: return "uniform";
    case WeightKind::Beta: return "beta";
    case WeightKind::AtomMixture: return "model_a";
    }
    return "?";
}

const char* to_string(EndpointClass::Kind k) {
    switch (k) {
    case EndpointClass::Kind::ModelA: return "model_a";
    case EndpointClass::Kind::ModelB: return "model_b";
    case EndpointClass::Kind::Other: return "other";
    }
    return "?";
}

WeightModel::WeightModel(WeightParams params) : params_(params) { validate(params_); }

WeightModel WeightModel::degenerate(double c) { return WeightModel(Degenerate{c}); }
WeightModel WeightModel::uniform(double omega) { return WeightModel(Uniform{omega}); }
WeightModel WeightModel::beta(double a, double b, double omega) { return WeightModel(BetaWeight{a, b, omega}); }
WeightModel WeightModel::atom_mixture(double omega, double p, double eta) {
    return WeightModel(AtomMixture{omega, p, eta});
}

std::string WeightModel::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Degenerate& w) { os << "Degenerate(" << w.c << ")"; },
                   [&](const Uniform& w) { os << "Uniform(0," << w.omega << ")"; },
                   [&](const BetaWeight& w) { os << "Beta(" << w.a << "," << w.b << ")*" << w.omega; },
                   [&](const AtomMixture& w) {
                       os << "ModelA(omega=" << w.omega << ",p=" << w.p << ",eta=" << w.eta << ")";
                   },
               },
               params_);
    return os.str();
}

double WeightModel::endpoint() const noexcept {
    return std::visit(overloaded{
                          [](const Degenerate& w) { return w.c; },
                          [](const Uniform& w) { return w.omega; },
                          [](const BetaWeight& w) { return w.omega; },
                          [](const AtomMixture& w) { return w.omega; },
                      },
                      params_);
}

double WeightModel::moment(double beta) const {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("moment order must be a finite beta >= 0");
    }
    return std::visit(overloaded{
                          [beta](const Degenerate& w) { return std::pow(w.c, beta); },
                          [beta](const Uniform& w) { return std::pow(w.omega, beta) / (1.0 + beta); },
                          [beta](const BetaWeight& w) {
                              return std::pow(w.omega, beta) *
                                     std::exp(log_beta(w.a + beta, w.b) - log_beta(w.a, w.b));
                          },
                          [beta](const AtomMixture& w) {
                              return w.p * std::pow(w.omega, beta) +
                                     (1.0 - w.p) * std::pow(w.eta, beta) / (1.0 + beta);
                          },
                      },
                      params_);
}

double WeightModel::cdf(double c) const {
    return std::visit(overloaded{
                          [c](const Degenerate& w) { return c < w.c ? 0.0 : 1.0; },
                          [c](const Uniform& w) { return std::clamp(c / w.omega, 0.0, 1.0); },
                          [c](const BetaWeight& w) {
                              const double y = c / w.omega;
                              if (y <= 0.0) return 0.0;
                              if (y >= 1.0) return 1.0;
                              return boost::math::ibeta(w.a, w.b, y);
                          },
                          [c](const AtomMixture& w) {
                              if (c < 0.0) return 0.0;
                              if (c < w.eta) return (1.0 - w.p) * c / w.eta;
                              if (c < w.omega) return 1.0 - w.p;
                              return 1.0;
                          },
                      },
                      params_);
}

double WeightModel::tail(double c) const {
    return std::visit(overloaded{
                          [c](const Degenerate& w) { return c < w.c ? 1.0 : 0.0; },
                          [c](const Uniform& w) { return std::clamp((w.omega - c) / w.omega, 0.0, 1.0); },
                          [c](const BetaWeight& w) {
                              const double y = c / w.omega;
                              if (y <= 0.0) return 1.0;
                              if (y >= 1.0) return 0.0;
                              // Near the endpoint evaluate 1 - B ~ Beta(b, a) at the gap directly.
                              if (y < 0.5) return boost::math::ibetac(w.a, w.b, y);
                              return boost::math::ibeta(w.b, w.a, (w.omega - c) / w.omega);
                          },
                          [c](const AtomMixture& w) {
                              if (c < 0.0) return 1.0;
                              if (c < w.eta) return w.p + (1.0 - w.p) * (w.eta - c) / w.eta;
                              if (c < w.omega) return w.p;
                              return 0.0;
                          },
                      },
                      params_);
}

double WeightModel::near_endpoint_tail(double x) const {
    const double omega = endpoint();
    if (!(x > 0.0)) {
        throw DomainError("near-endpoint tail requires x > 0");
    }
    if (x > omega) {
        throw DomainError("near-endpoint tail requires x <= omega");
    }
    return std::visit(overloaded{
                          [](const Degenerate&) { return 1.0; },
                          [x](const Uniform& w) { return x / w.omega; },
                          [x](const BetaWeight& w) { return boost::math::ibeta(w.b, w.a, x / w.omega); },
                          [x](const AtomMixture& w) {
                              const double into_sublaw = (x - (w.omega - w.eta)) / w.eta;
                              return w.p + (1.0 - w.p) * std::clamp(into_sublaw, 0.0, 1.0);
                          },
                      },
                      params_);
}

EndpointClass WeightModel::classify_endpoint() const {
    EndpointClass out;
    std::visit(overloaded{
                   [&](const Degenerate& w) {
                       if (w.c > 0.0) {
                           out.kind = EndpointClass::Kind::ModelA;
                           out.p = 1.0;
                           out.eta = 0.5 * w.c;
                       }
                   },
                   [&](const Uniform&) {
                       out.kind = EndpointClass::Kind::ModelB;
                       out.gamma = 1.0;
                   },
                   [&](const BetaWeight& w) {
                       out.kind = EndpointClass::Kind::ModelB;
                       out.gamma = w.b;
                   },
                   [&](const AtomMixture& w) {
                       out.kind = EndpointClass::Kind::ModelA;
                       out.p = w.p;
                       out.eta = w.eta;
                   },
               },
               params_);
    if (out.kind == EndpointClass::Kind::ModelB) {
        const double omega = endpoint();
        const double r = near_endpoint_tail(2.0 * omega / kProbeT) / near_endpoint_tail(omega / kProbeT);
        const double numeric = std::log2(r);
        if (std::abs(numeric - out.gamma) > kGammaMismatch * std::max(out.gamma, 1.0)) {
            throw NumericError("near-endpoint index mismatch for " + describe() + ": analytic " +
                                   std::to_string(out.gamma) + ", numeric " + std::to_string(numeric),
                               std::abs(numeric - out.gamma));
        }
    }
    return out;
}

double WeightModel::sample(Stream& s) const {
    return std::visit(overloaded{
                          [](const Degenerate& w) { return w.c; },
                          [&s](const Uniform& w) { return w.omega * s.uniform(); },
                          [&s](const BetaWeight& w) {
                              const double x = s.gamma(w.a);
                              const double y = s.gamma(w.b);
                              return w.omega * x / (x + y);
                          },
                          [&s](const AtomMixture& w) {
                              const double u = s.uniform();
                              return u < w.p ? w.omega : w.eta * s.uniform();
                          },
                      },
                      params_);
}

std::vector<WeightAtom> WeightModel::atoms() const {
    if (const auto* d = std::get_if<Degenerate>(&params_)) {
        return {{d->c, 1.0}};
    }
    if (const auto* m = std::get_if<AtomMixture>(&params_)) {
        return {{m->omega, m->p}};
    }
    return {};
}

std::optional<ContinuousPart> WeightModel::continuous_part() const {
    return std::visit(overloaded{
                          [](const Degenerate&) -> std::optional<ContinuousPart> { return std::nullopt; },
                          [](const Uniform& w) -> std::optional<ContinuousPart> {
                              return ContinuousPart{1.0, w.omega, 1.0, 1.0};
                          },
                          [](const BetaWeight& w) -> std::optional<ContinuousPart> {
                              return ContinuousPart{1.0, w.omega, w.a, w.b};
                          },
                          [](const AtomMixture& w) -> std::optional<ContinuousPart> {
                              if (w.p >= 1.0) return std::nullopt;
                              return ContinuousPart{1.0 - w.p, w.eta, 1.0, 1.0};
                          },
                      },
                      params_);
}

bool WeightModel::has_atom_at_zero() const noexcept {
    const auto* d = std::get_if<Degenerate>(&params_);
    return d != nullptr && d->c == 0.0;
}

WeightVectorSpec::WeightVectorSpec(std::vector<WeightModel> models, bool independent)
    : models_(std::move(models)), independent_(independent) {
    if (models_.empty()) {
        throw ValidationError("weight vector needs at least one component");
    }
    if (models_.front().has_atom_at_zero()) {
        throw ValidationError("C_1 must be strictly positive; got " + models_.front().describe());
    }
}

void WeightVectorSpec::sample(Stream& s, std::span<double> out) const {
    for (std::size_t i = 0; i < models_.size(); ++i) {
        out[i] = models_[i].sample(s);
    }
}

} // namespace rwtail
