#include "fracent/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracent/specfun.hpp"

namespace fracent {

namespace {

constexpr double kExactTolerance = 1e-8;
constexpr double kMaxStep = 2.0;
constexpr double kMaxMultiplier = 60.0;

double ipow(double x, int p) {
    double r = 1.0;
    double base = p < 0 ? 1.0 / x : x;
    for (int n = std::abs(p); n > 0; n >>= 1) {
        if (n & 1) r *= base;
        base *= base;
    }
    return r;
}

double factorial(int n) {
    double f = 1.0;
    for (int m = 2; m <= n; ++m) f *= m;
    return f;
}

// Derivative of the PlusRoot quadratic root with respect to x.
double plus_root_slope(double x) { return x + (x * x + 1.0) / std::sqrt(x * x + 2.0); }

quad::QuadResult integrate_unit(const quad::Integrand& g, double upper, const quad::QuadratureConfig& cfg) {
    auto r = quad::integrate_adaptive(g, 0.0, upper, cfg);
    if (!r.converged) throw ConvergenceError("velocity quadrature did not converge");
    return r;
}

void check_nu_m(double nu_m) {
    if (!(nu_m > 0.0 && nu_m < 1.0)) throw DomainError("mean normalized velocity must lie in (0, 1)");
}

double max_abs(const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); }

}  // namespace

std::string_view solver_name(Solver s) {
    return s == Solver::LinearTruncated ? "linear-truncated" : "numeric-exact";
}

std::string_view branch_name(Branch b) { return b == Branch::PlusRoot ? "plus" : "minus"; }

double stationarity_residual(double y, double x, Alpha alpha) {
    if (!(y > 0.0)) throw DomainError("stationarity residual needs y > 0");
    const double a = alpha.value();
    return std::pow(y, a) - a * std::pow(y, a - 1.0) - x;
}

double solve_stationarity(double x, Alpha alpha) {
    if (!std::isfinite(x)) throw DomainError("stationarity: x must be finite");
    const double a = alpha.value();
    if (alpha.shannon()) {
        if (x <= -1.0) throw DomainError("stationarity: no root for alpha = 1 and x <= -1");
        return 1.0 + x;
    }
    auto g = [&](double y) { return std::pow(y, a) - a * std::pow(y, a - 1.0) - x; };

    double lo = std::min(a, 1.0);
    while (g(lo) > 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) throw DomainError("stationarity: root below representable range");
    }
    double hi = 1.0 + x * x + std::abs(x);
    while (g(hi) < 0.0) hi *= 2.0;

    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double r = g(y);
        if (std::abs(r) <= 1e-13 * std::max(1.0, std::abs(x))) return y;
        if (r < 0.0)
            lo = y;
        else
            hi = y;
        const double dg = a * std::pow(y, a - 2.0) * (y + 1.0 - a);
        double next = y - r / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == y || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) return next;
        y = next;
    }
    throw ConvergenceError("stationarity root did not converge");
}

double quadratic_root(double x, Branch branch) {
    const double t = branch == Branch::PlusRoot ? x : -x;
    const double s = std::abs(t) * std::sqrt(t * t + 2.0);
    if (t >= 0.0) return 0.5 * ((1.0 + t * t) + s);
    return 1.0 / (2.0 * ((1.0 + t * t) + s));
}

double max_entropy_pdf(double nu_hat, double a, double b, Branch branch) {
    return std::exp(-quadratic_root(a + b * nu_hat, branch));
}

double max_entropy_pdf(double nu_hat, const LagrangePair& lag, Branch branch) {
    return max_entropy_pdf(nu_hat, lag.a, lag.b, branch);
}

double cdf_series_term(double nu_hat, double a, double b, int i, int j, int k) {
    if (b == 0.0) throw DomainError("series cdf needs b != 0");
    const int p = 1 + 2 * (i + k) - j;
    const double s1 = a + b * nu_hat;
    const double coeff = std::exp(-0.5) / b * specfun::gen_binomial(i, static_cast<unsigned>(j)) *
                         specfun::gen_binomial(0.5 * j, static_cast<unsigned>(k)) * ((i & 1) ? -1.0 : 1.0) *
                         std::pow(2.0, 0.5 * j - i - k) / factorial(i);
    return coeff * (ipow(s1, p) - ipow(a, p)) / p;
}

SeriesCdf cdf_series(double nu_hat, const LagrangePair& lag, SeriesOrder order, bool allow_extrapolation) {
    if (order.i_max < 0 || order.k_max < 0) throw DomainError("series orders must be non-negative");
    if (nu_hat == 0.0) return {};
    const double s1 = lag.a + lag.b * nu_hat;
    const bool inside = std::abs(lag.a) < 1.0 && std::abs(s1) < 1.0;
    if (!inside && !allow_extrapolation) throw DomainError("series cdf requires |a| < 1 and |a + b v| < 1");
    SeriesCdf out;
    out.extrapolated = !inside;
    for (int i = 0; i <= order.i_max; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k <= order.k_max; ++k) out.value += cdf_series_term(nu_hat, lag.a, lag.b, i, j, k);
    return out;
}

double cdf_truncated(double nu_hat, const LagrangePair& lag) {
    if (lag.b == 0.0) throw DomainError("truncated cdf needs b != 0");
    const double s1 = lag.a + lag.b * nu_hat;
    return -std::exp(-0.5) / (2.0 * std::sqrt(2.0) * lag.b) * (s1 * s1 - lag.a * lag.a);
}

double cdf_quadrature(double nu_hat, const LagrangePair& lag, const quad::QuadratureConfig& cfg) {
    if (!(nu_hat >= 0.0 && nu_hat <= 1.0)) throw DomainError("cdf argument must lie in [0, 1]");
    if (nu_hat == 0.0) return 0.0;
    return integrate_unit([&](double v) { return max_entropy_pdf(v, lag); }, nu_hat, cfg).value;
}

std::array<double, 2> constraint_residuals(double a, double b, double nu_m, const quad::QuadratureConfig& cfg) {
    const double mass = integrate_unit([&](double v) { return max_entropy_pdf(v, a, b); }, 1.0, cfg).value;
    const double mean = integrate_unit([&](double v) { return v * max_entropy_pdf(v, a, b); }, 1.0, cfg).value;
    return {mass - 1.0, mean - nu_m};
}

LagrangePair solve_lagrange_linear(double nu_m, const quad::QuadratureConfig& cfg) {
    check_nu_m(nu_m);
    if (std::abs(nu_m - 0.5) <= 1e-9) throw DegenerateMeanError("nu_m = 1/2 makes the linear system singular");
    LagrangePair p;
    p.a = kLagrangeC * (3.0 * nu_m - 2.0);
    p.b = -3.0 * kLagrangeC * (2.0 * nu_m - 1.0);
    p.nu_m = nu_m;
    p.solver = Solver::LinearTruncated;
    p.constraint_residuals = constraint_residuals(p.a, p.b, nu_m, cfg);
    return p;
}

LagrangePair solve_lagrange_exact(double nu_m, const quad::QuadratureConfig& cfg) {
    check_nu_m(nu_m);

    auto jacobian = [&](double a, double b) {
        auto moment = [&](int power) {
            return integrate_unit(
                       [&](double v) {
                           const double x = a + b * v;
                           return -ipow(v, power) * std::exp(-quadratic_root(x, Branch::PlusRoot)) *
                                  plus_root_slope(x);
                       },
                       1.0, cfg)
                .value;
        };
        const double m0 = moment(0), m1 = moment(1), m2 = moment(2);
        return std::array<double, 4>{m0, m1, m1, m2};  // row-major d(r0,r1)/d(a,b)
    };

    std::vector<std::array<double, 2>> starts = {{0.0, -kLagrangeC}, {-1.0, -1.0}, {-1.0, 1.0}, {-4.0, 0.5}};
    if (std::abs(nu_m - 0.5) > 1e-9) {
        const double a0 = kLagrangeC * (3.0 * nu_m - 2.0);
        const double b0 = -3.0 * kLagrangeC * (2.0 * nu_m - 1.0);
        starts.insert(starts.begin(), {a0, b0});
    }

    LagrangePair best;
    best.nu_m = nu_m;
    best.solver = Solver::NumericExact;
    double best_norm = std::numeric_limits<double>::infinity();

    for (const auto& s : starts) {
        double a = s[0], b = s[1];
        auto r = constraint_residuals(a, b, nu_m, cfg);
        double lambda = 1e-3;
        for (int it = 0; it < 100; ++it) {
            if (max_abs(r) < best_norm) {
                best_norm = max_abs(r);
                best.a = a;
                best.b = b;
                best.constraint_residuals = r;
            }
            if (best_norm <= kExactTolerance) return best;
            std::array<double, 4> J;
            try {
                J = jacobian(a, b);
            } catch (const ConvergenceError&) {
                break;
            }
            // (J^T J + lambda diag(J^T J)) d = -J^T r
            const double g0 = J[0] * r[0] + J[2] * r[1];
            const double g1 = J[1] * r[0] + J[3] * r[1];
            const double h00 = J[0] * J[0] + J[2] * J[2];
            const double h01 = J[0] * J[1] + J[2] * J[3];
            const double h11 = J[1] * J[1] + J[3] * J[3];
            bool improved = false;
            while (lambda < 1e12) {
                const double d00 = h00 * (1.0 + lambda), d11 = h11 * (1.0 + lambda);
                const double det = d00 * d11 - h01 * h01;
                if (det == 0.0 || !std::isfinite(det)) break;
                double da = (-g0 * d11 + g1 * h01) / det;
                double db = (-g1 * d00 + g0 * h01) / det;
                const double len = std::hypot(da, db);
                if (len > kMaxStep) {
                    da *= kMaxStep / len;
                    db *= kMaxStep / len;
                }
                std::array<double, 2> rn;
                const bool inside = std::abs(a + da) <= kMaxMultiplier && std::abs(b + db) <= kMaxMultiplier;
                try {
                    rn = inside ? constraint_residuals(a + da, b + db, nu_m, cfg) : r;
                } catch (const ConvergenceError&) {
                    rn = r;
                }
                if (rn[0] * rn[0] + rn[1] * rn[1] < r[0] * r[0] + r[1] * r[1]) {
                    a += da;
                    b += db;
                    r = rn;
                    lambda = std::max(lambda * 0.3, 1e-12);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if (!improved) break;
        }
        if (max_abs(r) < best_norm) {
            best_norm = max_abs(r);
            best.a = a;
            best.b = b;
            best.constraint_residuals = r;
        }
    }
    throw LagrangeConvergenceError("exact multiplier solve stalled with max residual " + std::to_string(best_norm) +
                                       " (needs <= 1e-8)",
                                   best);
}

Prediction predict_velocity(double y_over_M, const VelocityModel& model) {
    if (!(y_over_M >= 0.0 && y_over_M <= 1.0)) throw DomainError("y/M must lie in [0, 1]");
    if (!(model.k >= 0.0 && model.k <= 1.0)) throw DomainError("k must lie in [0, 1]");
    const double a = model.lagrange.a, b = model.lagrange.b;
    if (b == 0.0) throw DomainError("velocity inversion needs b != 0");
    const double Y = std::pow(y_over_M, model.k);
    const double disc = a * a - kLagrangeC * b * Y;
    if (disc < 0.0) throw DomainError("velocity inversion has a negative discriminant");
    const double root = std::sqrt(disc);
    const double signed_root = model.branch == Branch::MinusRoot ? -root : root;
    Prediction p;
    p.nu_hat = (-a + signed_root) / b + 0.0;  // no negative zero at the bed
    constexpr double kSnap = 1e-12;
    if (p.nu_hat < 0.0 && p.nu_hat > -kSnap) p.nu_hat = 0.0;
    if (p.nu_hat > 1.0 && p.nu_hat < 1.0 + kSnap) p.nu_hat = 1.0;
    p.out_of_range = !(p.nu_hat >= 0.0 && p.nu_hat <= 1.0);
    return p;
}

MaxEntropyValue max_entropy_value(const LagrangePair& lag, const quad::QuadratureConfig& cfg) {
    auto y = [&](double v) { return quadratic_root(lag.a + lag.b * v, Branch::PlusRoot); };
    MaxEntropyValue out;
    out.fractional = integrate_unit([&](double v) { const double t = y(v); return std::exp(-t) * std::sqrt(t); },
                                    1.0, cfg)
                         .value;
    out.printed = integrate_unit([&](double v) { const double t = y(v); return std::exp(-t) * t; }, 1.0, cfg).value;
    return out;
}

}  // namespace fracent
