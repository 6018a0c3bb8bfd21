#pragma once

#include <functional>
#include <limits>

namespace fracent::quad {

enum class EndpointHandling { None, AlgebraicSubstitution };

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 4000;
    EndpointHandling endpoint_handling = EndpointHandling::AlgebraicSubstitution;

    // Throws DomainError when a tolerance is non-positive.
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& other);
};

using Integrand = std::function<double(double)>;

// Globally adaptive bisection driven by the 7/15-point Gauss-Kronrod pair.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureConfig& cfg);

// Non-adaptive composite 20-point Gauss-Legendre over panels that shrink
// geometrically toward both ends; used as an independent check of the adaptive path.
QuadResult integrate_composite(const Integrand& f, double a, double b, int grading_levels = 44,
                               int middle_panels = 24);

enum class Rule { Adaptive, Composite };

// One piece of an integration domain. Infinite ends are mapped onto a finite
// variable via x = end +/- scale * t / (1 - t); `cut` truncates such an end at a
// finite abscissa. `left_power` / `right_power` > 1 apply x = lo + (hi - lo) u^q
// near an endpoint where the integrand has an algebraic singularity; `tail_power`
// does the same for the slowly decaying tail of an infinite end.
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    double scale = 1.0;
    double cut = std::numeric_limits<double>::quiet_NaN();
    double left_power = 1.0;
    double right_power = 1.0;
    double tail_power = 1.0;
};

QuadResult integrate_segment(const Integrand& f, const Segment& seg, const QuadratureConfig& cfg,
                             Rule rule = Rule::Adaptive);

}  // namespace fracent::quad
