#ifndef RWTAIL_WEIGHTS_HPP
#define RWTAIL_WEIGHTS_HPP

#include "rwtail/rng.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rwtail {

// Point mass at c >= 0.
struct Degenerate {
    double c;
};

// Uniform on [0, omega].
struct Uniform {
    double omega = 1.0;
};

// omega * B with B ~ Beta(a, b).
struct BetaWeight {
    double a;
    double b;
    double omega = 1.0;
};

// Atom of mass p at omega, remaining mass spread uniformly on [0, eta].
struct AtomMixture {
    double omega;
    double p;
    double eta;
};

using WeightParams = std::variant<Degenerate, Uniform, BetaWeight, AtomMixture>;

enum class WeightKind { Degenerate, Uniform, Beta, AtomMixture };

const char* to_string(WeightKind k);

// Behaviour of a weight law at its upper endpoint omega.
struct EndpointClass {
    enum class Kind { ModelA, ModelB, Other };
    Kind kind = Kind::Other;
    double p = 0.0;      // ModelA: P(C = omega)
    double eta = 0.0;    // ModelA: P(C <= eta) = 1 - p
    double gamma = 0.0;  // ModelB: index of P(C > omega - x) at x -> 0
};

const char* to_string(EndpointClass::Kind k);

struct WeightAtom {
    double location;
    double mass;
};

// Absolutely continuous component: `mass` times the law of upper * Beta(a, b).
struct ContinuousPart {
    double mass;
    double upper;
    double a;
    double b;
};

// Immutable law of a bounded random deflator C on [0, omega].
class WeightModel {
public:
    explicit WeightModel(WeightParams params);

    static WeightModel degenerate(double c);
    static WeightModel uniform(double omega = 1.0);
    static WeightModel beta(double a, double b, double omega = 1.0);
    static WeightModel atom_mixture(double omega, double p, double eta);

    const WeightParams& params() const noexcept { return params_; }
    WeightKind kind() const noexcept { return static_cast<WeightKind>(params_.index()); }
    std::string describe() const;

    // Upper endpoint omega (c itself for a point mass).
    double endpoint() const noexcept;

    // E[C^beta], beta >= 0.
    double moment(double beta) const;

    double cdf(double c) const;
    // P(C > c).
    double tail(double c) const;
    // P(C > omega - x), 0 < x <= omega.
    double near_endpoint_tail(double x) const;

    EndpointClass classify_endpoint() const;

    double sample(Stream& s) const;

    // Decomposition used by the quadrature oracles.
    std::vector<WeightAtom> atoms() const;
    std::optional<ContinuousPart> continuous_part() const;

    bool has_atom_at_zero() const noexcept;

private:
    WeightParams params_;
};

// Laws of (C_1, ..., C_k). Components are sampled independently of each other
// and of the risks; `independent` records whether that is the modelled truth,
// and estimators exploiting independence refuse specs where it is not.
class WeightVectorSpec {
public:
    explicit WeightVectorSpec(std::vector<WeightModel> models, bool independent = true);

    std::size_t size() const noexcept { return models_.size(); }
    const WeightModel& operator[](std::size_t i) const { return models_[i]; }
    const std::vector<WeightModel>& models() const noexcept { return models_; }
    bool independent() const noexcept { return independent_; }

    void sample(Stream& s, std::span<double> out) const;

private:
    std::vector<WeightModel> models_;
    bool independent_;
};

} // namespace rwtail

#endif
