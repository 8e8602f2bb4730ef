#include "rwtail/error.hpp"
#include "rwtail/marginals.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace rwtail;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("tail examples") {
    CHECK_THAT(MarginalModel::pareto(2, 1).tail(2), WithinRel(0.25, 1e-15));
    CHECK_THAT(MarginalModel::lognormal(0, 1).tail(1), WithinRel(0.5, 1e-15));
    CHECK(MarginalModel::exponential(1).tail(0) == 1.0);
    CHECK(MarginalModel::pareto(2, 1).tail(0.5) == 1.0);
}

TEST_CASE("log tail stays finite far below double range") {
    const auto x = MarginalModel::lognormal(0, 1);
    const double lt = x.log_tail(std::exp(45.0));
    CHECK(std::isfinite(lt));
    CHECK(lt < -1000.0);
    CHECK(x.tail(std::exp(45.0)) == 0.0);
}

TEST_CASE("quantile examples") {
    CHECK_THAT(MarginalModel::pareto(2, 1).quantile(0.99), WithinRel(10.0, 1e-12));
    CHECK_THAT(MarginalModel::exponential(1).quantile(1.0 - std::exp(-1.0)), WithinRel(1.0, 1e-12));
    CHECK_THAT(MarginalModel::lognormal(0, 1).quantile(0.5), WithinAbs(1.0, 1e-12));
    CHECK_THROWS_AS(MarginalModel::pareto(2, 1).quantile(1.0), DomainError);
    CHECK_THROWS_AS(MarginalModel::pareto(2, 1).quantile(0.0), DomainError);
}

TEST_CASE("quantile inverts tail on 100 log-spaced points") {
    const std::vector<MarginalModel> models{MarginalModel::pareto(2, 1), MarginalModel::pareto(0.5, 3),
                                            MarginalModel::lognormal(1, 2), MarginalModel::weibullian(1.5, 0.5),
                                            MarginalModel::exponential(2)};
    for (const auto& m : models) {
        for (int i = 0; i < 100; ++i) {
            const double q = std::pow(10.0, -0.01 - 12.0 * i / 99.0);
            const double t = m.tail_quantile(q);
            INFO(m.describe() << " q=" << q);
            CHECK_THAT(m.tail(t), WithinRel(q, 1e-10));
            CHECK_THAT(m.tail_quantile(m.tail(t)), WithinRel(t, 1e-10));
        }
    }
}

TEST_CASE("tail is nonincreasing and in [0,1]") {
    const auto m = MarginalModel::weibullian(0.7, 0.3);
    double prev = 1.0;
    for (double t = 0.0; t < 1e6; t = t * 1.7 + 0.01) {
        const double v = m.tail(t);
        CHECK(v <= prev);
        CHECK(v >= 0.0);
        prev = v;
    }
}

TEST_CASE("auxiliary function examples") {
    CHECK_THAT(MarginalModel::lognormal(0, 1).auxiliary(std::exp(2.0)), WithinRel(std::exp(2.0) / 2.0, 1e-14));
    CHECK_THAT(MarginalModel::lognormal(1, 2).auxiliary(std::exp(3.0)), WithinRel(4.0 * std::exp(3.0) / 2.0, 1e-14));
    CHECK_THAT(MarginalModel::lognormal(0, 1).auxiliary(std::exp(2.0)), WithinAbs(3.6945, 1e-4));
    CHECK_THAT(MarginalModel::lognormal(1, 2).auxiliary(std::exp(3.0)), WithinAbs(40.171, 1e-3));
    for (double t : {0.0, 1.0, 1e9}) {
        CHECK(MarginalModel::exponential(2).auxiliary(t) == 0.5);
    }
    CHECK_THROWS_AS(MarginalModel::pareto(2, 1).auxiliary(10), UnsupportedError);
    CHECK_THROWS_AS(MarginalModel::lognormal(0, 1).auxiliary(0.5), DomainError);
}

TEST_CASE("rv index") {
    CHECK(MarginalModel::pareto(2, 1).rv_index() == 2.0);
    CHECK_FALSE(MarginalModel::lognormal(0, 1).rv_index().has_value());
    CHECK(MarginalModel::pareto(0.5, 3).rv_index() == 0.5);
    CHECK(MarginalModel::pareto(2, 1).mda_class() == MdaClass::Frechet);
    CHECK(MarginalModel::exponential(1).mda_class() == MdaClass::Gumbel);
    CHECK(MarginalModel::weibullian(1, 0.5).mda_class() == MdaClass::Gumbel);
}

TEST_CASE("invalid parameters rejected") {
    CHECK_THROWS_AS(MarginalModel::pareto(0, 1), ValidationError);
    CHECK_THROWS_AS(MarginalModel::pareto(2, -1), ValidationError);
    CHECK_THROWS_AS(MarginalModel::lognormal(0, 0), ValidationError);
    CHECK_THROWS_AS(MarginalModel::weibullian(1, 1.5), ValidationError);
    CHECK_THROWS_AS(MarginalModel::exponential(0), ValidationError);
}

TEST_CASE("lambda weights examples") {
    const std::vector<MarginalModel> a{MarginalModel::pareto(2, 2), MarginalModel::pareto(2, 1)};
    const auto la = lambda_weights(a);
    CHECK(la.lambda[0] == 1.0);
    CHECK_THAT(la.lambda[1], WithinRel(0.25, 1e-15));
    CHECK_THAT(la.lambda_tilde, WithinRel(1.25, 1e-15));

    const std::vector<MarginalModel> b(4, MarginalModel::lognormal(0, 1));
    const auto lb = lambda_weights(b);
    CHECK(lb.lambda == std::vector<double>(4, 1.0));
    CHECK(lb.lambda_tilde == 4.0);

    const std::vector<MarginalModel> c{MarginalModel::lognormal(0, 1), MarginalModel::lognormal(0, 0.5)};
    CHECK(lambda_weights(c).lambda == std::vector<double>{1.0, 0.0});

    const std::vector<MarginalModel> d{MarginalModel::pareto(2, 1), MarginalModel::pareto(3, 5),
                                       MarginalModel::lognormal(0, 1)};
    CHECK(lambda_weights(d).lambda == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("heavier later marginal is an ordering error") {
    const std::vector<MarginalModel> a{MarginalModel::pareto(2, 1), MarginalModel::pareto(1.5, 1)};
    CHECK_THROWS_AS(lambda_weights(a), InvalidOrderingError);
    // Same index, larger scale: finite limit, not an ordering error.
    const std::vector<MarginalModel> b{MarginalModel::pareto(2, 1), MarginalModel::pareto(2, 2)};
    CHECK(lambda_weights(b).lambda[1] == 4.0);
    const std::vector<MarginalModel> c{MarginalModel::lognormal(0, 1), MarginalModel::pareto(2, 1)};
    CHECK_THROWS_AS(lambda_weights(c), InvalidOrderingError);
    const std::vector<MarginalModel> d{MarginalModel::exponential(1), MarginalModel::weibullian(1, 0.5)};
    CHECK_THROWS_AS(lambda_weights(d), InvalidOrderingError);
}

TEST_CASE("regular variation of Frechet tails") {
    for (const auto& m : {MarginalModel::pareto(2, 1), MarginalModel::pareto(0.5, 3)}) {
        const double alpha = *m.rv_index();
        for (double t : {1e6, 1e8}) {
            for (double x : {0.5, 2.0, 10.0}) {
                CHECK_THAT(m.tail(t * x) / m.tail(t), WithinRel(std::pow(x, -alpha), 1e-3));
            }
        }
    }
}

TEST_CASE("Gumbel tails satisfy the auxiliary-function limit") {
    const std::vector<MarginalModel> models{MarginalModel::lognormal(0, 1), MarginalModel::lognormal(1, 0.5),
                                            MarginalModel::weibullian(1, 0.5), MarginalModel::exponential(1.5)};
    for (const auto& m : models) {
        for (double x : {-1.0, 0.0, 1.0, 2.0}) {
            double first = -1.0;
            double err = 0.0;
            double aux_err = 0.0;
            for (double t = 1e2; t <= 1e300; t *= 1e4) {
                const double a = m.auxiliary(t);
                if (a * std::abs(x) < 1e-6 * t && x != 0.0) {
                    break;  // t + a x no longer resolvable in double precision
                }
                err = std::abs(std::exp(m.log_tail(t + a * x) - m.log_tail(t)) / std::exp(-x) - 1.0);
                aux_err = std::abs(m.auxiliary(t + a * x) / a - 1.0);
                if (first < 0.0) {
                    first = err;
                }
            }
            INFO(m.describe() << " x=" << x);
            CHECK(err <= first);
            CHECK(err < 1e-2);
            CHECK(aux_err < 1e-2);
        }
    }
}
