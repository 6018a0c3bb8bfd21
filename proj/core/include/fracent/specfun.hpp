#pragma once

namespace fracent::specfun {

// A special-function value together with a bound on its absolute error.
struct SpecialValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
};

/// Upper incomplete gamma function Gamma(s, x) = int_x^inf e^{-t} t^{s-1} dt.
///
/// Defined for s > 0 and x >= 0. For integer s the function is an exponential
/// times a polynomial and is real for every x, so negative x is accepted in that
/// case only. Throws DomainError otherwise.
SpecialValue upper_incomplete_gamma(double s, double x);

/// Generalized exponential integral E_m(n) = int_1^inf e^{-n t} t^{-m} dt, n > 0.
///
/// Evaluated independently of upper_incomplete_gamma (continued fraction for
/// n >= 1, power series below), so the identity E_m(n) = n^{m-1} Gamma(1-m, n)
/// is a genuine cross-check.
SpecialValue generalized_exp_integral(double m, double n);

/// Misra function phi_m(x) = E_{-m}(x).
SpecialValue misra(double m, double x);

/// Complete beta function B(m, n), m, n > 0.
SpecialValue complete_beta(double m, double n);

/// Generalized binomial coefficient prod_{i<k}(r - i) / k!.
double gen_binomial(double r, unsigned k);

/// ln Gamma(1 + e) for |e| <= 1/2, accurate in relative terms as e -> 0.
double lgamma1p(double e);

}  // namespace fracent::specfun
