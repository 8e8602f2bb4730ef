#include "rwtail/asymptotics.hpp"

#include "rwtail/error.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace rwtail {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void require_frechet(const MarginalModel& m) {
    if (m.mda_class() != MdaClass::Frechet) {
        throw UnsupportedError("Breiman approximation needs a regularly varying marginal; got " + m.describe());
    }
}

void require_gumbel(const MarginalModel& m) {
    if (m.mda_class() != MdaClass::Gumbel) {
        throw UnsupportedError("scaled Model A/B tails need a Gumbel-MDA marginal; got " + m.describe());
    }
}

double scaled_argument(const WeightModel& weight, const MarginalModel& marginal, double s) {
    const double omega = weight.endpoint();
    const double t = s / omega;
    if (!(t > marginal.auxiliary_threshold())) {
        throw DomainError("s / omega = " + sci(t) + " is below the auxiliary-function threshold of " +
                          marginal.describe());
    }
    return t;
}

// Applies the bulk guard on q = P(X_1 > t_eff) and records caveats.
void bulk_guard(double q, const ApproxOptions& opts, ApproxReport& r) {
    if (q > kBulkRefuseTail) {
        if (opts.enforce_bulk_guard) {
            throw DomainError("t = " + sci(r.t) + " lies in the bulk (P(X_1 > t) = " + sci(q) +
                              " > 1e-2); first-order asymptotics do not apply");
        }
        r.caveats.push_back("bulk: P(X_1>t)=" + sci(q) + " above refusal threshold 1e-2");
    } else if (q > kBulkCaveatTail) {
        r.caveats.push_back("bulk: P(X_1>t)=" + sci(q) + " above 1e-4");
    }
}

} // namespace

const char* to_string(Formula f) {
    switch (f) {
    case Formula::FrechetMain: return "frechet_main";
    case Formula::GumbelModelA: return "gumbel_model_a";
    case Formula::GumbelModelB: return "gumbel_model_b";
    case Formula::Breiman: return "breiman";
    }
    return "?";
}

double log_breiman_tail(const WeightModel& weight, const MarginalModel& marginal, double t) {
    require_frechet(marginal);
    return std::log(weight.moment(*marginal.rv_index())) + marginal.log_tail(t);
}

double breiman_tail(const WeightModel& weight, const MarginalModel& marginal, double t) {
    return std::exp(log_breiman_tail(weight, marginal, t));
}

double log_scaled_tail_model_a(const WeightModel& weight, const MarginalModel& marginal, double s) {
    require_gumbel(marginal);
    const EndpointClass cls = weight.classify_endpoint();
    if (cls.kind != EndpointClass::Kind::ModelA) {
        throw UnsupportedError(weight.describe() + " has no atom at its endpoint (not Model A)");
    }
    const double t = scaled_argument(weight, marginal, s);
    return std::log(cls.p) + marginal.log_tail(t);
}

double scaled_tail_model_a(const WeightModel& weight, const MarginalModel& marginal, double s) {
    return std::exp(log_scaled_tail_model_a(weight, marginal, s));
}

double log_scaled_tail_model_b(const WeightModel& weight, const MarginalModel& marginal, double s) {
    require_gumbel(marginal);
    const EndpointClass cls = weight.classify_endpoint();
    if (cls.kind != EndpointClass::Kind::ModelB) {
        throw UnsupportedError(weight.describe() + " is not regularly varying at its endpoint (not Model B)");
    }
    const double omega = weight.endpoint();
    const double t = scaled_argument(weight, marginal, s);
    const double gap = std::min(omega * marginal.auxiliary(t) / t, omega);
    return std::lgamma(cls.gamma + 1.0) + std::log(weight.near_endpoint_tail(gap)) + marginal.log_tail(t);
}

double scaled_tail_model_b(const WeightModel& weight, const MarginalModel& marginal, double s) {
    return std::exp(log_scaled_tail_model_b(weight, marginal, s));
}

ApproxReport frechet_lc_approx(const Scenario& scenario, double t, ApproxOptions opts) {
    if (scenario.mda_class() != MdaClass::Frechet) {
        throw UnsupportedError("frechet_lc_approx called on a Gumbel-MDA scenario");
    }
    const MarginalModel& x1 = scenario.marginals().front();
    const WeightModel& c1 = scenario.weights()[0];
    ApproxReport r;
    r.t = t;
    r.formula = Formula::FrechetMain;
    r.alpha = *x1.rv_index();
    r.omega = c1.endpoint();
    r.lambda_tilde = scenario.lambda().lambda_tilde;
    r.moment = c1.moment(*r.alpha);
    const double log_tail = x1.log_tail(t);
    bulk_guard(std::exp(log_tail), opts, r);
    r.log_value = log_tail + std::log(*r.moment) + std::log(r.lambda_tilde);
    r.value = std::exp(r.log_value);
    return r;
}

ApproxReport gumbel_lc_approx(const Scenario& scenario, double t, ApproxOptions opts) {
    if (scenario.mda_class() != MdaClass::Gumbel) {
        throw UnsupportedError("gumbel_lc_approx called on a Frechet-MDA scenario");
    }
    const MarginalModel& x1 = scenario.marginals().front();
    const WeightModel& c1 = scenario.weights()[0];
    const EndpointClass cls = c1.classify_endpoint();
    ApproxReport r;
    r.t = t;
    r.omega = c1.endpoint();
    r.lambda_tilde = scenario.lambda().lambda_tilde;
    const double t_unit = t / r.omega;
    bulk_guard(x1.tail(t_unit), opts, r);
    double log_scaled = 0.0;
    switch (cls.kind) {
    case EndpointClass::Kind::ModelA:
        r.formula = Formula::GumbelModelA;
        r.p = cls.p;
        log_scaled = log_scaled_tail_model_a(c1, x1, t);
        break;
    case EndpointClass::Kind::ModelB:
        r.formula = Formula::GumbelModelB;
        r.gamma = cls.gamma;
        log_scaled = log_scaled_tail_model_b(c1, x1, t);
        break;
    case EndpointClass::Kind::Other:
        throw UnsupportedError("C_1 = " + c1.describe() + " is neither Model A nor Model B");
    }
    r.auxiliary = r.omega * x1.auxiliary(t_unit);
    if (r.omega != 1.0) {
        r.caveats.push_back("omega=" + sci(r.omega) + ": evaluated at t/omega with a1(t)=omega*a(t/omega)");
    }
    r.log_value = std::log(r.lambda_tilde) + log_scaled;
    r.value = std::exp(r.log_value);
    return r;
}

ApproxReport approx(const Scenario& scenario, double t, ApproxOptions opts) {
    if (scenario.mda_class() == MdaClass::Frechet) {
        return frechet_lc_approx(scenario, t, opts);
    }
    return gumbel_lc_approx(scenario, t, opts);
}

} // namespace rwtail
