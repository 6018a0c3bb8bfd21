#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "fracent/error.hpp"
#include "fracent/quadrature.hpp"
#include "helpers.hpp"

using namespace fracent;
using namespace fracent::quad;
using fracent::test::diff;

TEST_SUITE("quadrature") {
    TEST_CASE("polynomial and smooth integrands") {
        const QuadratureConfig cfg;
        CHECK(diff(integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, cfg).value, 1.0 / 3.0) <= 1e-15);
        CHECK(diff(integrate_adaptive([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2, cfg).value, 1.0) <=
              1e-14);
        CHECK(diff(integrate_composite([](double x) { return std::exp(x); }, 0.0, 1.0).value, std::numbers::e - 1.0) <=
              1e-14);
    }

    TEST_CASE("reported error bounds the true error") {
        const auto r = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, {});
        CHECK(r.converged);
        CHECK(diff(r.value, std::numbers::pi / 4) <= r.abs_error + 1e-16);
    }

    TEST_CASE("endpoint singularity through substitution") {
        Segment s;
        s.lo = 0.0;
        s.hi = 1.0;
        s.left_power = 2.0;
        const auto r = integrate_segment([](double x) { return 1.0 / std::sqrt(x); }, s, {});
        CHECK(diff(r.value, 2.0) <= 1e-12);
    }

    TEST_CASE("infinite end") {
        Segment s;
        s.lo = 0.0;
        s.hi = std::numeric_limits<double>::infinity();
        const auto r = integrate_segment([](double x) { return std::exp(-x); }, s, {});
        CHECK(diff(r.value, 1.0) <= 1e-12);
        const auto c = integrate_segment([](double x) { return std::exp(-x); }, s, {}, Rule::Composite);
        CHECK(diff(c.value, 1.0) <= 1e-12);
    }

    TEST_CASE("heavy tail with tail substitution") {
        Segment s;
        s.lo = 0.0;
        s.hi = std::numeric_limits<double>::infinity();
        s.tail_power = 2.0;
        const auto r = integrate_segment([](double x) { return 0.5 / std::pow(1.0 + x, 1.5); }, s, {});
        CHECK(diff(r.value, 1.0) <= 1e-10);
    }

    TEST_CASE("invalid tolerances") {
        QuadratureConfig cfg;
        cfg.rel_tol = -1.0;
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        cfg.rel_tol = 1e-10;
        cfg.abs_tol = 0.0;
        CHECK_THROWS_AS(cfg.validate(), DomainError);
    }
}
