#include <doctest.h>

#include <cmath>

#include "fracent/bounds.hpp"
#include "helpers.hpp"

using namespace fracent;
using fracent::test::diff;

TEST_SUITE("bounds") {
    const auto u02 = DistributionSpec::uniform(0, 2);
    const double rl2 = std::sqrt(std::log(2.0));

    TEST_CASE("shannon power") {
        auto c = bound_shannon_power(u02, Alpha(0.5));
        CHECK(c.holds());
        CHECK(diff(c.slack, 0.0) <= 1e-12);
        c = bound_shannon_power(DistributionSpec::exponential(1.0), Alpha(0.5));
        CHECK(diff(c.lhs, std::sqrt(std::acos(-1.0)) / 2.0) <= 1e-12);
        CHECK(diff(c.rhs, 1.0) <= 1e-12);
        CHECK(c.holds());
        c = bound_shannon_power(DistributionSpec::gamma(0.8, 1.0), Alpha(0.3));
        CHECK(c.holds());
        CHECK(c.slack > 0.0);
    }

    TEST_CASE("exponential log-sum") {
        CHECK(bound_exp_logsum(u02, Alpha(0.5)).holds());
        const auto e = bound_exp_logsum(DistributionSpec::uniform(0, std::exp(1.0)), Alpha(0.7));
        CHECK(e.holds());
        CHECK(diff(e.rhs, 1.0) <= 1e-12);
        const auto b = bound_exp_logsum(DistributionSpec::beta(2, 1), Alpha(0.5));
        CHECK(b.verdict == Verdict::Skipped);
        CHECK(!b.reason.empty());
    }

    TEST_CASE("jensen on the support") {
        auto c = bound_jensen_support(u02, Alpha(0.5));
        CHECK(diff(c.rhs, std::sqrt(2.0) * rl2) <= 1e-12);
        CHECK(diff(c.lhs, rl2) <= 1e-12);
        CHECK(c.holds());
        c = bound_jensen_support(DistributionSpec::uniform(0, std::exp(1.0)), Alpha(1.0));
        CHECK(diff(c.slack, 0.0) <= 1e-12);
        CHECK(bound_jensen_support(DistributionSpec::finite_range(1, 2), Alpha(0.4)).holds());
        CHECK(bound_jensen_support(DistributionSpec::exponential(1.0), Alpha(0.4)).verdict == Verdict::Skipped);
    }

    TEST_CASE("holder") {
        auto c = bound_holder(u02, Alpha(0.5));
        CHECK(diff(c.rhs, 2.0 * rl2) <= 1e-12);
        CHECK(c.holds());
        c = bound_holder(DistributionSpec::uniform(0, std::exp(1.0)), Alpha(0.5));
        CHECK(diff(c.rhs, std::exp(1.0)) <= 1e-12);
        CHECK(bound_holder(DistributionSpec::triangular(0.5), Alpha(1.0)).holds());
    }

    TEST_CASE("sandwich") {
        const auto s = bound_sandwich(u02, Alpha(0.5));
        // int_0^2 (1/2)(1/2)^{1/2} dx = 2^{-1/2}
        CHECK(diff(s.lower.lhs, 1.0 / std::sqrt(2.0)) <= 1e-12);
        CHECK(diff(s.upper.rhs, 1.0) <= 1e-12);
        CHECK(diff(s.cap.rhs, 2.0 * std::sqrt(0.5 / std::exp(1.0))) <= 1e-12);
        CHECK(s.lower.holds());
        CHECK(s.upper.holds());
        CHECK(s.cap.holds());
        const auto d = bound_sandwich(DistributionSpec::uniform(0, 1), Alpha(1.0));
        CHECK(d.lower.holds());
        CHECK(d.upper.holds());
        CHECK(diff(d.lower.rhs, 0.0) <= 1e-15);
        const auto f = bound_sandwich(DistributionSpec::finite_range(1, 4), Alpha(0.2));
        CHECK(f.lower.holds());
        CHECK(f.upper.holds());
        CHECK(f.cap.holds());
    }

    TEST_CASE("subadditivity") {
        auto c = bound_subadditive(u02, u02, Alpha(1.0));
        CHECK(diff(c.lhs, 2.0 * std::log(2.0)) <= 1e-10);
        CHECK(diff(c.rhs, 2.0 * std::log(2.0)) <= 1e-10);
        CHECK(c.holds());
        c = bound_subadditive(u02, u02, Alpha(0.5));
        CHECK(diff(c.lhs, std::sqrt(2.0 * std::log(2.0))) <= 1e-10);
        CHECK(diff(c.rhs, 2.0 * rl2) <= 1e-10);
        CHECK(bound_subadditive(DistributionSpec::exponential(1.0), u02, Alpha(0.5)).holds());
    }

    TEST_CASE("seeded suite is reproducible") {
        SuiteOptions opt;
        opt.draws = 12;
        opt.seed = 99;
        const auto a = run_bound_suite(opt);
        const auto b = run_bound_suite(opt);
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            CHECK(a.checks[i].spec == b.checks[i].spec);
            CHECK(a.checks[i].slack == b.checks[i].slack);
        }
        CHECK(a.passed());
        opt.families = {Family::Uniform};
        for (const auto& c : run_bound_suite(opt).checks) CHECK(c.spec.rfind("uniform", 0) == 0);
    }
}
