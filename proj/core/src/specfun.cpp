#include "fracent/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracent/error.hpp"

namespace fracent::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

// zeta(k) for k = 2..kZetaMax by Euler-Maclaurin summation with N = 20.
constexpr int kZetaMax = 64;

std::array<double, kZetaMax + 1> make_zeta_table() {
    std::array<double, kZetaMax + 1> z{};
    constexpr int N = 20;
    // B_{2j} / (2j)!
    constexpr std::array<double, 5> bern = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                            -1.0 / 1209600.0, 1.0 / 47900160.0};
    for (int k = 2; k <= kZetaMax; ++k) {
        const double kk = k;
        double tail = std::pow(double(N), 1.0 - kk) / (kk - 1.0) + 0.5 * std::pow(double(N), -kk);
        double rising = kk;  // k (k+1) ... (k+2j-2)
        for (std::size_t j = 0; j < bern.size(); ++j) {
            tail += bern[j] * rising * std::pow(double(N), -kk - 2.0 * double(j) - 1.0);
            rising *= (kk + 2.0 * double(j) + 1.0) * (kk + 2.0 * double(j) + 2.0);
        }
        // Sum the head from the smallest terms up.
        double head = 0.0;
        for (int n = N - 1; n >= 2; --n) head += std::pow(double(n), -kk);
        z[k] = 1.0 + (head + tail);
    }
    return z;
}

const std::array<double, kZetaMax + 1>& zeta_table() {
    static const auto table = make_zeta_table();
    return table;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

// Continued fraction b0 + a1/(b1 + a2/(b2 + ...)) by the modified Lentz method.
template <class Coeff>
double lentz(double b0, Coeff&& coeff, int& iterations) {
    double f = (b0 == 0.0) ? kTiny : b0;
    double c = f;
    double d = 0.0;
    for (int j = 1; j <= kMaxIter; ++j) {
        const auto [a, b] = coeff(j);
        d = b + a * d;
        if (d == 0.0) d = kTiny;
        c = b + a / c;
        if (c == 0.0) c = kTiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) <= kEps) {
            iterations = j;
            return f;
        }
    }
    throw ConvergenceError("continued fraction did not converge");
}

// Gamma(s, x) for integer s and arbitrary real x: (s-1)! e^{-x} sum_{k<s} x^k / k!.
SpecialValue incomplete_gamma_integer(double s, double x) {
    const int n = static_cast<int>(s);
    double term = std::tgamma(s);  // (n-1)! x^k / k!
    double sum = 0.0;
    double abs_sum = 0.0;
    for (int k = 0; k < n; ++k) {
        if (k > 0) term *= x / double(k);
        sum += term;
        abs_sum += std::abs(term);
    }
    const double scale = std::exp(-x);
    return {sum * scale, 4.0 * kEps * double(n) * abs_sum * scale};
}

// Gamma(s, x) for 0 < s <= 1/2 and 0 < x < s + 1, avoiding the cancellation in
// Gamma(s) - gamma(s, x) when both are close to 1/s.
SpecialValue incomplete_gamma_small_s(double s, double x) {
    const double lx = std::log(x);
    const double head = std::expm1(lgamma1p(s)) / s - std::expm1(s * lx) / s;
    double sum = 0.0;
    double abs_sum = 0.0;
    double power = 1.0;  // (-x)^k / k!
    for (int k = 1; k <= kMaxIter; ++k) {
        power *= -x / double(k);
        const double term = power / (s + double(k));
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) <= kEps * std::abs(sum)) break;
    }
    const double xs = std::exp(s * lx);
    const double value = head - xs * sum;
    const double err = 8.0 * kEps * (std::abs(head) + xs * abs_sum) + kEps * std::abs(value);
    return {value, err};
}

// Gamma(s) - gamma(s, x) with gamma from its power series.
SpecialValue incomplete_gamma_series(double s, double x) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 1; n <= kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    const double lower = sum * std::exp(-x + s * std::log(x));
    const double full = std::tgamma(s);
    const double value = full - lower;
    return {value, 8.0 * kEps * (full + lower)};
}

SpecialValue incomplete_gamma_cf(double s, double x) {
    int iterations = 0;
    double b = x + 1.0 - s;
    const double denom = lentz(
        b,
        [&](int i) {
            const double a = -double(i) * (double(i) - s);
            return std::pair{a, x + 1.0 - s + 2.0 * double(i)};
        },
        iterations);
    const double value = std::exp(-x + s * std::log(x)) / denom;
    return {value, (4.0 + double(iterations)) * kEps * std::abs(value)};
}

}  // namespace

double lgamma1p(double e) {
    if (std::abs(e) > 0.5) return std::lgamma(1.0 + e);
    const auto& zeta = zeta_table();
    // ln Gamma(1+e) = -gamma e + sum_{k>=2} (-1)^k zeta(k) e^k / k
    double sum = 0.0;
    double power = -e;  // (-e)^k
    for (int k = 2; k <= kZetaMax; ++k) {
        power *= -e;
        const double term = zeta[k] * power / double(k);
        sum += term;
        if (std::abs(term) <= kEps * 0.25 * std::abs(sum)) break;
    }
    return -std::numbers::egamma * e + sum;
}

SpecialValue upper_incomplete_gamma(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw DomainError("upper_incomplete_gamma: order must be positive, got " + std::to_string(s));
    if (std::isnan(x)) throw DomainError("upper_incomplete_gamma: argument is NaN");
    if (x < 0.0) {
        if (is_integer(s) && s <= 170.0) return incomplete_gamma_integer(s, x);
        throw DomainError("upper_incomplete_gamma: negative argument with non-integer order is complex-valued");
    }
    if (x == 0.0) {
        const double g = std::tgamma(s);
        return {g, 4.0 * kEps * g};
    }
    if (std::isinf(x)) return {0.0, 0.0};
    if (x < s + 1.0) {
        if (s <= 0.5) return incomplete_gamma_small_s(s, x);
        return incomplete_gamma_series(s, x);
    }
    return incomplete_gamma_cf(s, x);
}

SpecialValue generalized_exp_integral(double m, double n) {
    if (!(n > 0.0) || std::isnan(m))
        throw DomainError("generalized_exp_integral: argument must be positive, got " + std::to_string(n));
    const double x = n;
    if (std::isinf(x)) return {0.0, 0.0};

    if (x >= 1.0) {
        // E_m(x) = e^{-x} / (x + m - 1 m / (x + m + 2 - 2 (m + 1) / (x + m + 4 - ...)))
        int iterations = 0;
        const double denom = lentz(
            x + m,
            [&](int i) {
                const double a = -double(i) * (m - 1.0 + double(i));
                return std::pair{a, x + m + 2.0 * double(i)};
            },
            iterations);
        const double value = std::exp(-x) / denom;
        return {value, (4.0 + double(iterations)) * kEps * std::abs(value)};
    }

    // Power series: E_m(x) = x^{m-1} Gamma(1-m) - sum_k (-x)^k / (k! (1 - m + k)).
    const double lx = std::log(x);
    const double p_near = std::round(m);
    const bool near_pole = p_near >= 1.0 && std::abs(m - p_near) < 0.1;
    const int pole_k = near_pole ? static_cast<int>(p_near) - 1 : -1;

    double value = 0.0;
    double abs_total = 0.0;
    if (near_pole) {
        const int p = static_cast<int>(p_near);
        const double eps = p_near - m;
        double prod = 1.0;      // prod_{j<p} (j - eps)
        double log_ratio = 0.0; // sum_{j<p} log1p(-eps / j)
        double harmonic = 0.0;
        double fact = 1.0;      // (p-1)!
        for (int j = 1; j < p; ++j) {
            prod *= double(j) - eps;
            log_ratio += std::log1p(-eps / double(j));
            harmonic += 1.0 / double(j);
            fact *= double(j);
        }
        const double sign = (p - 1) % 2 == 0 ? 1.0 : -1.0;
        const double xp = std::pow(x, double(p - 1));
        double bracket_over_eps;
        if (eps == 0.0) {
            bracket_over_eps = (-std::numbers::egamma - lx + harmonic) * prod / fact;
        } else {
            bracket_over_eps = (std::expm1(lgamma1p(eps) - eps * lx) - std::expm1(log_ratio)) / eps;
        }
        const double combined = sign * xp * bracket_over_eps / prod;
        value += combined;
        abs_total += std::abs(combined) + xp / fact * (1.0 + std::abs(lx));
    } else {
        const double lead = std::exp((m - 1.0) * lx) * std::tgamma(1.0 - m);
        value += lead;
        abs_total += std::abs(lead);
    }

    double power = 1.0;  // (-x)^k / k!
    for (int k = 0; k <= kMaxIter; ++k) {
        if (k > 0) power *= -x / double(k);
        if (k == pole_k) continue;
        const double term = power / (1.0 - m + double(k));
        value -= term;
        abs_total += std::abs(term);
        if (k > 2 && std::abs(term) <= kEps * std::abs(value) * 0.1) break;
    }
    return {value, 8.0 * kEps * abs_total + kEps * std::abs(value)};
}

SpecialValue misra(double m, double x) {
    if (!(x > 0.0)) throw DomainError("misra: argument must be positive, got " + std::to_string(x));
    return generalized_exp_integral(-m, x);
}

SpecialValue complete_beta(double m, double n) {
    if (!(m > 0.0) || !(n > 0.0))
        throw DomainError("complete_beta: arguments must be positive");
    if (m + n < 170.0) {
        const double value = std::tgamma(m) * std::tgamma(n) / std::tgamma(m + n);
        return {value, 8.0 * kEps * value};
    }
    const double lv = std::lgamma(m) + std::lgamma(n) - std::lgamma(m + n);
    const double value = std::exp(lv);
    return {value, 8.0 * kEps * value * (1.0 + std::abs(lv))};
}

double gen_binomial(double r, unsigned k) {
    double result = 1.0;
    for (unsigned i = 0; i < k; ++i) result *= (r - double(i)) / double(i + 1);
    return result;
}

}  // namespace fracent::specfun
