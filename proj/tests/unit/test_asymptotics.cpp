#include "rwtail/asymptotics.hpp"
#include "rwtail/error.hpp"
#include "rwtail/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace rwtail;
using Catch::Matchers::WithinRel;

namespace {

WeightVectorSpec single(WeightModel w) { return WeightVectorSpec({w}); }

} // namespace

TEST_CASE("breiman examples") {
    const auto p2 = MarginalModel::pareto(2, 1);
    CHECK(breiman_tail(WeightModel::degenerate(1), p2, 7.0) == p2.tail(7.0));
    CHECK_THAT(breiman_tail(WeightModel::uniform(1), p2, 10.0), WithinRel(1.0 / 300.0, 1e-14));
    CHECK_THAT(breiman_tail(WeightModel::beta(2, 3), MarginalModel::pareto(1, 1), 100.0), WithinRel(0.004, 1e-13));
    CHECK_THROWS_AS(breiman_tail(WeightModel::uniform(1), MarginalModel::lognormal(0, 1), 10.0), UnsupportedError);
}

TEST_CASE("breiman is exact for Pareto x Uniform above the scale") {
    const auto c = WeightModel::uniform(1);
    const auto x = MarginalModel::pareto(2, 1);
    for (double t = 1.0; t < 1e8; t *= 3.7) {
        CHECK_THAT(breiman_tail(c, x, t), WithinRel(oracles::scale_mixture_tail(c, x, t, 1e-11), 1e-10));
    }
}

TEST_CASE("frechet main approximation examples") {
    const auto p = MarginalModel::pareto(2, 1);
    const Scenario three(3, {p, p, p}, std::nullopt,
                         WeightVectorSpec({WeightModel::uniform(1), WeightModel::uniform(1), WeightModel::uniform(1)}));
    const auto r = frechet_lc_approx(three, 100.0);
    CHECK_THAT(r.value, WithinRel(1e-4, 1e-13));
    CHECK(r.formula == Formula::FrechetMain);
    CHECK(r.lambda_tilde == 3.0);
    CHECK_THAT(*r.moment, WithinRel(1.0 / 3.0, 1e-14));

    const Scenario one(1, {p}, std::nullopt, single(WeightModel::degenerate(1)));
    CHECK_THAT(frechet_lc_approx(one, 50.0).value, WithinRel(p.tail(50.0), 1e-14));

    const Scenario mixed(1, {MarginalModel::pareto(2, 2), p}, std::nullopt, single(WeightModel::degenerate(1)));
    CHECK_THAT(frechet_lc_approx(mixed, 100.0).value, WithinRel(5e-4, 1e-13));
}

TEST_CASE("bulk guard refuses and caveats") {
    const auto p = MarginalModel::pareto(2, 1);
    const Scenario one(1, {p}, std::nullopt, single(WeightModel::degenerate(1)));
    CHECK_THROWS_AS(approx(one, 5.0), DomainError);
    ApproxOptions loose;
    loose.enforce_bulk_guard = false;
    CHECK_NOTHROW(approx(one, 5.0, loose));
    CHECK_FALSE(approx(one, 50.0).caveats.empty());
    CHECK(approx(one, 1000.0).caveats.empty());
}

TEST_CASE("model A scaled tail") {
    const auto x = MarginalModel::lognormal(0, 1);
    CHECK_THAT(scaled_tail_model_a(WeightModel::degenerate(1), x, 40.0), WithinRel(x.tail(40.0), 1e-14));
    CHECK_THAT(scaled_tail_model_a(WeightModel::degenerate(2), x, 40.0), WithinRel(x.tail(20.0), 1e-14));
    const auto w = WeightModel::atom_mixture(1, 0.5, 0.5);
    const double s = x.tail_quantile(1e-8);
    CHECK_THAT(scaled_tail_model_a(w, x, s), WithinRel(5e-9, 1e-9));
    // Frozen quadrature ratio 1.0018983 at this s.
    CHECK_THAT(oracles::scale_mixture_tail(w, x, s) / scaled_tail_model_a(w, x, s), WithinRel(1.0018983, 1e-6));
    CHECK_THROWS_AS(scaled_tail_model_a(WeightModel::uniform(1), x, 40.0), UnsupportedError);
    CHECK_THROWS_AS(scaled_tail_model_a(w, MarginalModel::pareto(2, 1), 40.0), UnsupportedError);
    CHECK_THROWS_AS(scaled_tail_model_a(w, x, 0.5), DomainError);
}

TEST_CASE("model B scaled tail") {
    const auto e = MarginalModel::exponential(1);
    const auto u = WeightModel::uniform(1);
    for (double t : {10.0, 40.0, 200.0}) {
        CHECK_THAT(scaled_tail_model_b(u, e, t), WithinRel(std::exp(-t) / t, 1e-12));
    }
    // Frozen quadrature/formula ratio at t = 40.
    CHECK_THAT(oracles::scale_mixture_tail(u, e, 40.0) / scaled_tail_model_b(u, e, 40.0), WithinRel(0.95341587259, 1e-8));

    const auto b = WeightModel::beta(2, 3);
    const auto x = MarginalModel::lognormal(0, 1);
    const double s = x.tail_quantile(1e-10);
    const double expected = 6.0 * b.near_endpoint_tail(x.auxiliary(s) / s) * 1e-10;
    CHECK_THAT(scaled_tail_model_b(b, x, s), WithinRel(expected, 1e-9));
    CHECK_THROWS_AS(scaled_tail_model_b(WeightModel::degenerate(1), x, s), UnsupportedError);
}

TEST_CASE("Gumbel scaled tails trend toward the quadrature value") {
    const auto x = MarginalModel::lognormal(0, 1);
    std::vector<double> g;
    for (double q = 1e-4; q >= 1e-40; q *= 1e-6) {
        g.push_back(x.tail_quantile(q));
    }
    for (const auto& w : {WeightModel::beta(2, 3), WeightModel::uniform(1), WeightModel::beta(1, 0.5)}) {
        const auto trend = oracles::ratio_limit([&](double s) { return oracles::scale_mixture_tail(w, x, s); },
                                                [&](double s) { return scaled_tail_model_b(w, x, s); }, g);
        INFO(w.describe());
        CHECK(trend.trending);
        CHECK(trend.monotone);
    }
    const auto a = WeightModel::atom_mixture(1, 0.5, 0.5);
    const auto trend = oracles::ratio_limit([&](double s) { return oracles::scale_mixture_tail(a, x, s); },
                                            [&](double s) { return scaled_tail_model_a(a, x, s); }, g);
    CHECK(trend.trending);
    CHECK(std::abs(trend.final_value - 1.0) < 0.05);
}

TEST_CASE("gumbel approximation composes lambda and the scaled tail") {
    const auto x = MarginalModel::lognormal(0, 1);
    const Scenario one(1, {x}, std::nullopt, single(WeightModel::degenerate(1)));
    const double t = x.tail_quantile(1e-6);
    CHECK_THAT(gumbel_lc_approx(one, t).value, WithinRel(x.tail(t), 1e-14));
    CHECK(approx(one, t).formula == Formula::GumbelModelA);

    const Scenario three(1, {x, x, x}, CorrelationMatrix::equicorrelated(3, 0.3), single(WeightModel::beta(2, 3)));
    const auto r = approx(three, t);
    CHECK(r.formula == Formula::GumbelModelB);
    CHECK_THAT(r.value, WithinRel(3.0 * scaled_tail_model_b(WeightModel::beta(2, 3), x, t), 1e-13));
    CHECK(r.gamma == 3.0);
}

TEST_CASE("omega rescaling is homogeneous at the dispatch level") {
    const double omega = 2.5;
    const Scenario scaled(1, {MarginalModel::lognormal(0, 1)}, std::nullopt, single(WeightModel::beta(2, 3, omega)));
    const Scenario unit(1, {MarginalModel::lognormal(std::log(omega), 1)}, std::nullopt, single(WeightModel::beta(2, 3)));
    for (double t : {100.0, 1e3, 1e5}) {
        CHECK_THAT(gumbel_lc_approx(scaled, t).value, WithinRel(gumbel_lc_approx(unit, t).value, 1e-12));
    }
    CHECK_FALSE(gumbel_lc_approx(scaled, 1e5).caveats.empty());
}

TEST_CASE("approximation decreases in t") {
    const auto x = MarginalModel::weibullian(1, 0.5);
    const Scenario s(2, {x, x}, std::nullopt, WeightVectorSpec({WeightModel::uniform(1), WeightModel::uniform(1)}));
    double prev = 1.0;
    for (double t = 50; t < 1e5; t *= 1.5) {
        const double v = approx(s, t).value;
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(frechet_lc_approx(s, 100.0), UnsupportedError);
}
