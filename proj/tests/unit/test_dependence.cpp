#include "rwtail/dependence.hpp"
#include "rwtail/error.hpp"
#include "rwtail/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace rwtail;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Scenario pair_scenario(MarginalModel a, MarginalModel b, std::optional<CorrelationMatrix> corr) {
    return Scenario(1, {a, b}, std::move(corr), WeightVectorSpec({WeightModel::degenerate(1)}));
}

} // namespace

TEST_CASE("cholesky examples") {
    const auto id = CorrelationMatrix::identity(3).validate();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(id(i, j) == (i == j ? 1.0 : 0.0));
        }
    }
    const auto f = CorrelationMatrix({{1, 0.5}, {0.5, 1}}).validate();
    CHECK(f(0, 0) == 1.0);
    CHECK(f(0, 1) == 0.0);
    CHECK_THAT(f(1, 0), WithinRel(0.5, 1e-15));
    CHECK_THAT(f(1, 1), WithinRel(std::sqrt(0.75), 1e-15));
}

TEST_CASE("validation names the first failing property") {
    CHECK_THROWS_WITH(CorrelationMatrix({{1, 1}, {1, 1}}).validate(), ContainsSubstring("(-1,1)"));
    CHECK_THROWS_WITH(CorrelationMatrix({{1, 0.2}, {0.3, 1}}).validate(), ContainsSubstring("symmetric"));
    CHECK_THROWS_WITH(CorrelationMatrix({{1, 0.2}, {0.2, 0.9}}).validate(), ContainsSubstring("diagonal"));
    CHECK_THROWS_WITH(CorrelationMatrix({{1, 0.9, -0.9}, {0.9, 1, 0.9}, {-0.9, 0.9, 1}}).validate(),
                      ContainsSubstring("positive definite"));
    CHECK_THROWS_AS(CorrelationMatrix({{1, 0.2}}).validate(), ValidationError);
}

TEST_CASE("scenario validation") {
    const auto ln = MarginalModel::lognormal(0, 1);
    const auto pa = MarginalModel::pareto(2, 1);
    CHECK_THROWS_AS(Scenario(3, {ln, ln}, std::nullopt, WeightVectorSpec({WeightModel::uniform(1)})), ValidationError);
    CHECK_THROWS_AS(Scenario(0, {ln}, std::nullopt, WeightVectorSpec({WeightModel::uniform(1)})), ValidationError);
    CHECK_THROWS_AS(Scenario(1, {pa, ln}, std::nullopt, WeightVectorSpec({WeightModel::uniform(1)})), ValidationError);
    CHECK_THROWS_AS(Scenario(2, {ln, ln}, std::nullopt, WeightVectorSpec({WeightModel::uniform(1)})), ValidationError);
    CHECK_THROWS_AS(Scenario(1, {ln, ln}, CorrelationMatrix::identity(3), WeightVectorSpec({WeightModel::uniform(1)})),
                    ValidationError);
    const Scenario s(1, {ln, ln}, CorrelationMatrix::identity(2), WeightVectorSpec({WeightModel::uniform(1)}));
    CHECK(s.independent_risks());
    CHECK(s.mda_class() == MdaClass::Gumbel);
}

TEST_CASE("independent sampling reproduces marginals") {
    const auto pa = MarginalModel::pareto(2, 1);
    const auto wb = MarginalModel::weibullian(1, 0.5);
    const Scenario s = pair_scenario(pa, MarginalModel::pareto(3, 1), std::nullopt);
    const Scenario g(1, {MarginalModel::lognormal(0, 1), wb}, std::nullopt, WeightVectorSpec({WeightModel::degenerate(1)}));
    const int n = 1'000'000;
    std::vector<double> a(n), b(n), x(2);
    for (int r = 0; r < n; ++r) {
        Stream st(11, 0, r);
        sample_risks(s, st, x);
        a[r] = x[0];
        Stream sg(12, 0, r);
        sample_risks(g, sg, x);
        b[r] = x[1];
    }
    auto ks = [&](std::vector<double>& v, const MarginalModel& m) {
        std::sort(v.begin(), v.end());
        double d = 0.0;
        for (int r = 0; r < n; ++r) {
            const double f = m.cdf(v[r]);
            d = std::max({d, std::abs(f - double(r) / n), std::abs(f - double(r + 1) / n)});
        }
        return d;
    };
    CHECK(ks(a, pa) < 0.002);
    CHECK(ks(b, wb) < 0.002);
}

TEST_CASE("zero correlation gives no rank dependence and 0.9 is recovered") {
    const auto ln = MarginalModel::lognormal(0, 1);
    const Scenario s0 = pair_scenario(ln, ln, CorrelationMatrix::equicorrelated(2, 0.0));
    const Scenario s9 = pair_scenario(ln, ln, CorrelationMatrix::equicorrelated(2, 0.9));
    const int n = 1'000'000;
    double concord = 0.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0, sx = 0.0, sy = 0.0;
    std::vector<double> x(2), prev(2, 1.0);
    for (int r = 0; r < n; ++r) {
        Stream st(5, 0, r);
        sample_risks(s0, st, x);
        // Kendall-type concordance on consecutive independent pairs.
        concord += ((x[0] - prev[0]) * (x[1] - prev[1]) > 0.0) ? 1.0 : -1.0;
        prev = x;
        Stream s2(6, 0, r);
        sample_risks(s9, s2, x);
        const double z1 = std::log(x[0]);
        const double z2 = std::log(x[1]);
        sx += z1;
        sy += z2;
        sxx += z1 * z1;
        syy += z2 * z2;
        sxy += z1 * z2;
    }
    CHECK(std::abs(concord / n) < 0.003);
    const double cov = sxy / n - sx / n * sy / n;
    const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    CHECK_THAT(corr, WithinAbs(0.9, 0.01));
}

TEST_CASE("eta examples and properties") {
    CHECK_THAT(eta(0.0), WithinAbs(0.7071068, 1e-6));
    CHECK_THAT(eta(0.5), WithinAbs(0.8660254, 1e-6));
    CHECK(eta(0.9999) > 0.999);
    CHECK_THROWS_AS(eta(1.0), DomainError);
    CHECK_THROWS_AS(eta(-1.0), DomainError);
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double rho = -0.98 + 1.96 * i / 49.0;
        const double v = eta(rho);
        CHECK(v > prev);
        CHECK(v < 1.0);
        CHECK_THAT(v, WithinAbs(oracles::grid_max_min(rho), 1e-6));
        // The closed form the oracle confirms.
        CHECK_THAT(v, WithinAbs(std::sqrt((1.0 + rho) / 2.0), 1e-6));
        prev = v;
    }
    CHECK(eta(1.0 - 1e-6) < 1.0);
}
