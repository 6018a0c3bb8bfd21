#pragma once

#include <array>
#include <string_view>

#include "fracent/entropy.hpp"
#include "fracent/error.hpp"
#include "fracent/quadrature.hpp"

namespace fracent {

// 2 sqrt(2) e^{1/2}: the constant of the two-term multiplier system.
inline constexpr double kLagrangeC = 4.66328796319424840672707212434;

enum class Solver { LinearTruncated, NumericExact };
enum class Branch { PlusRoot, MinusRoot };

std::string_view solver_name(Solver s);
std::string_view branch_name(Branch b);

// Multipliers of the maximum-entropy problem with normalization and mean constraints.
// constraint_residuals = (int_0^1 f - 1, int_0^1 v f - nu_m) for the PlusRoot pdf.
struct LagrangePair {
    double a = 0.0;
    double b = 0.0;
    double nu_m = 0.0;
    Solver solver = Solver::LinearTruncated;
    std::array<double, 2> constraint_residuals{};
};

struct VelocityModel {
    LagrangePair lagrange;
    double k = 1.0;  // spatial fitting parameter in [0, 1]
    Branch branch = Branch::MinusRoot;
};

struct SeriesOrder {
    int i_max = 1;
    int k_max = 0;
};

// Thrown by solve_lagrange_exact; carries the pair with the smallest residuals found.
class LagrangeConvergenceError : public ConvergenceError {
public:
    LagrangeConvergenceError(const std::string& what, LagrangePair best)
        : ConvergenceError(what), best_(best) {}
    const LagrangePair& best() const noexcept { return best_; }

private:
    LagrangePair best_;
};

/// y^alpha - alpha y^{alpha-1} - x for y > 0.
double stationarity_residual(double y, double x, Alpha alpha);

/// The positive root y of the stationarity equation (unique: the left side is
/// increasing in y). Throws DomainError when none exists (alpha = 1, x <= -1).
double solve_stationarity(double x, Alpha alpha);

/// Roots of y^2 - y (1 + x^2) + 1/4 = 0, the alpha = 1/2 case after squaring.
/// plus = ((1 + x^2) + x sqrt(x^2 + 2)) / 2, evaluated without cancellation.
double quadratic_root(double x, Branch branch);

/// exp(-quadratic_root(a + b v, branch)).
double max_entropy_pdf(double nu_hat, double a, double b, Branch branch = Branch::PlusRoot);
double max_entropy_pdf(double nu_hat, const LagrangePair& lag, Branch branch = Branch::PlusRoot);

struct SeriesCdf {
    double value = 0.0;
    bool extrapolated = false;  // evaluated outside |a|, |a + b v| < 1 on request
};

/// One (i, j, k) term of the triple-sum cdf expansion.
double cdf_series_term(double nu_hat, double a, double b, int i, int j, int k);

/// Triple-sum cdf truncated at i <= i_max, k <= k_max. Throws DomainError outside
/// |a| < 1, |a + b v| < 1 unless allow_extrapolation is set.
SeriesCdf cdf_series(double nu_hat, const LagrangePair& lag, SeriesOrder order, bool allow_extrapolation = false);

/// -(e^{-1/2} / (2 sqrt 2 b)) [(a + b v)^2 - a^2].
double cdf_truncated(double nu_hat, const LagrangePair& lag);

/// int_0^v of the PlusRoot pdf.
double cdf_quadrature(double nu_hat, const LagrangePair& lag, const quad::QuadratureConfig& cfg = {});

/// (int_0^1 f - 1, int_0^1 v f - nu_m) for f = PlusRoot pdf with multipliers (a, b).
std::array<double, 2> constraint_residuals(double a, double b, double nu_m, const quad::QuadratureConfig& cfg = {});

/// Closed solve of the two-term linear system. Throws DegenerateMeanError within
/// 1e-9 of nu_m = 1/2 and DomainError outside (0, 1).
LagrangePair solve_lagrange_linear(double nu_m, const quad::QuadratureConfig& cfg = {});

/// Levenberg-Marquardt on the two constraint integrals, started from the linear pair
/// and a few fixed restarts. Succeeds only when both residuals are <= 1e-8;
/// otherwise throws LagrangeConvergenceError holding the best pair found.
LagrangePair solve_lagrange_exact(double nu_m, const quad::QuadratureConfig& cfg = {});

struct Prediction {
    double nu_hat = 0.0;
    bool out_of_range = false;  // result outside [0, 1] by more than 1e-12; reported, not clamped
};

/// Normalized velocity at normalized height y/M by inverting the truncated cdf
/// against (y/M)^k.
Prediction predict_velocity(double y_over_M, const VelocityModel& model);

struct MaxEntropyValue {
    double fractional = 0.0;  // int f (-ln f)^{1/2}
    double printed = 0.0;     // int f (-ln f), the integrand as printed
};

MaxEntropyValue max_entropy_value(const LagrangePair& lag, const quad::QuadratureConfig& cfg = {});

}  // namespace fracent
