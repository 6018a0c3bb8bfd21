#include <doctest.h>

#include <cmath>

#include "fracent/distributions.hpp"
#include "fracent/error.hpp"
#include "helpers.hpp"

using namespace fracent;
using fracent::test::diff;
using fracent::test::Gen;

namespace {

double total_mass(const DistributionSpec& s) {
    return integrate_functional(s, [](double, double lf) { return std::exp(lf); }).value;
}

}  // namespace

TEST_SUITE("distributions") {
    TEST_CASE("pdf values") {
        CHECK(DistributionSpec::uniform(0, 2).pdf(1.0) == 0.5);
        CHECK(DistributionSpec::exponential(1.0).pdf(0.0) == 1.0);
        CHECK(diff(DistributionSpec::cramer(1.0).pdf(0.0), 0.5) <= 1e-16);
        CHECK_THROWS_AS(DistributionSpec::uniform(0, 2).pdf(3.0), DomainError);
    }

    TEST_CASE("parameter validation") {
        CHECK_THROWS_AS(DistributionSpec::uniform(2, 1), DomainError);
        CHECK_THROWS_AS(DistributionSpec::uniform(-1, 1), DomainError);
        CHECK_THROWS_AS(DistributionSpec::pareto2(0.0, 1.0), DomainError);
        CHECK_THROWS_AS(DistributionSpec::finite_range(-1.0, 2.0), DomainError);
        CHECK_THROWS_AS(DistributionSpec::exponential(0.0), DomainError);
    }

    TEST_CASE("parse and print") {
        const auto u = DistributionSpec::parse("uniform:A=0,B=2");
        CHECK(u.family() == Family::Uniform);
        CHECK(u.param("B") == 2.0);
        CHECK(DistributionSpec::parse(u.to_string()).to_string() == u.to_string());

        const auto w = DistributionSpec::parse("weibull:a=1,b=2");
        CHECK(w.family() == Family::Weibull);
        const auto fr = DistributionSpec::parse("finiterange:p=2,theta=10");
        CHECK(fr.param("a") == 2.0);
        const auto n = DistributionSpec::parse("standardnormal:norm=fullline");
        CHECK(n.normalization() == Normalization::FullLine);
        CHECK(n.param("sigma") == 1.0);

        CHECK_THROWS_AS(DistributionSpec::parse("nosuch:x=1"), ParseError);
        CHECK_THROWS_AS(DistributionSpec::parse("uniform:A=0"), ParseError);
        CHECK_THROWS_AS(DistributionSpec::parse("uniform:A=0,B=x"), ParseError);
        CHECK(parse_family("Pareto-II") == Family::ParetoII);
    }

    TEST_CASE("density range") {
        auto r = density_max(DistributionSpec::uniform(0, 2));
        CHECK(r.f_max == 0.5);
        CHECK(r.admissible());
        r = density_max(DistributionSpec::uniform(0, 0.5));
        CHECK(r.f_max == 2.0);
        CHECK(!r.admissible());
        r = density_max(DistributionSpec::weibull(1, 2));
        CHECK(diff(r.f_max, std::sqrt(2.0) * std::exp(-0.5)) <= 1e-15);
        CHECK(diff(density_max_grid(DistributionSpec::weibull(1, 2)).f_max, r.f_max) <= 1e-8);
    }

    TEST_CASE("cdf") {
        for (double x : {0.1, 1.0, 4.0})
            CHECK(diff(cdf_numeric(DistributionSpec::exponential(1.0), x), 1.0 - std::exp(-x)) <= 1e-12);
        CHECK(diff(cdf_numeric(DistributionSpec::uniform(0, 2), 1.0), 0.5) <= 1e-14);
        CHECK(diff(cdf_numeric(DistributionSpec::pareto2(1.0, 1.0), 1.0), 0.5) <= 1e-12);
    }

    TEST_CASE("half-line masses") {
        CHECK(diff(DistributionSpec::standard_normal().mass(), 0.5) <= 1e-15);
        CHECK(diff(DistributionSpec::cramer(2.0).mass(), 0.5) <= 1e-15);
        CHECK(diff(total_mass(DistributionSpec::cramer(2.0, Normalization::Renormalized)), 1.0) <= 1e-9);
        CHECK(diff(total_mass(DistributionSpec::standard_normal(Normalization::FullLine)), 1.0) <= 1e-9);
    }

    TEST_CASE("unit mass over random parameters") {
        Gen g(11);
        for (int i = 0; i < 20; ++i) {
            const DistributionSpec specs[] = {
                DistributionSpec::uniform(g.uniform(0, 2), g.uniform(2.5, 6)),
                DistributionSpec::exponential(g.log_uniform(0.1, 5)),
                DistributionSpec::pareto2(g.log_uniform(0.2, 5), g.log_uniform(0.3, 4)),
                DistributionSpec::folded_t(g.log_uniform(0.5, 8)),
                DistributionSpec::cauchy(g.uniform(0, 3), g.log_uniform(0.2, 3)),
                DistributionSpec::gamma(g.log_uniform(0.2, 4), g.log_uniform(0.3, 20)),
                DistributionSpec::beta(g.log_uniform(0.3, 5), g.log_uniform(0.3, 5)),
                DistributionSpec::weibull(g.log_uniform(0.3, 4), g.log_uniform(0.4, 5)),
                DistributionSpec::generalized_pareto(g.log_uniform(0.05, 0.9), g.log_uniform(0.2, 4), g.uniform(0, 3)),
                DistributionSpec::finite_range(g.log_uniform(0.3, 5), g.log_uniform(0.5, 10)),
            };
            for (const auto& s : specs) {
                if (!s.unit_mass()) continue;
                INFO(s.to_string());
                CHECK(diff(total_mass(s), 1.0) <= 1e-9);
            }
        }
    }

    TEST_CASE("cdf is monotone and bounded") {
        const auto s = DistributionSpec::gamma(1.3, 2.5);
        double prev = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const double F = cdf_numeric(s, 0.25 * i);
            CHECK(F >= prev);
            CHECK(F <= 1.0);
            prev = F;
        }
    }

    TEST_CASE("grid maximum agrees with analytic mode") {
        Gen g(5);
        for (int i = 0; i < 20; ++i) {
            const auto s = DistributionSpec::gamma(g.log_uniform(0.2, 3), g.uniform(1.0, 8));
            CHECK(diff(density_max_grid(s).f_max, density_max(s).f_max) <= 1e-8);
            const auto w = DistributionSpec::weibull(g.log_uniform(0.5, 3), g.uniform(1.0, 5));
            CHECK(diff(density_max_grid(w).f_max, density_max(w).f_max) <= 1e-8);
        }
    }
}
