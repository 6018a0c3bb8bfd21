#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "fracent/quadrature.hpp"
#include "fracent/velocity.hpp"

namespace fracent {

struct ProfileSample {
    double y_over_M = 0.0;
    double nu_hat = 0.0;
};

// Samples sorted by strictly increasing height, with both mean-velocity estimates.
struct Profile {
    std::vector<ProfileSample> samples;
    double nu_m_trapezoid = 0.0;   // int_0^1 nu_hat d(y/M), bed at 0 and surface value held to y/M = 1
    double nu_m_arithmetic = 0.0;  // plain sample mean
};

/// Validates, sorts and attaches the mean estimates. Throws DomainError on a value
/// outside [0, 1] or a repeated height.
Profile make_profile(std::vector<ProfileSample> samples);

/// Reads `y_over_M,velocity` or `y,M,velocity,velocity_max` rows (comma, semicolon or
/// tab separated; `#` starts a comment line). Throws ParseError with the line number.
Profile ingest_profile(std::istream& in);
Profile ingest_profile_file(const std::string& path);

enum class CdfModel { Truncated, Quadrature };
std::string_view cdf_model_name(CdfModel m);

double model_cdf(double nu_hat, const LagrangePair& lag, CdfModel model, const quad::QuadratureConfig& cfg = {});

struct KFit {
    double k = 0.0;
    double sse = 0.0;
    std::string diagnostic;  // set when the unconstrained optimum lies outside [0, 1]
};

/// Least-squares k in [0, 1] for model_cdf(nu_hat_i) ~ (y_i/M)^k: grid scan, golden
/// section, then parabolic refinement. Needs >= 3 samples; throws DomainError when
/// every computed cdf is the same.
KFit fit_k(const std::vector<ProfileSample>& samples, const LagrangePair& lag, CdfModel model = CdfModel::Truncated,
           const quad::QuadratureConfig& cfg = {});

double r_squared(const std::vector<double>& observed, const std::vector<double>& computed);
double mrae(const std::vector<double>& observed, const std::vector<double>& computed);
double rmse(const std::vector<double>& observed, const std::vector<double>& computed);

struct ResidualRow {
    double y_over_M = 0.0;
    double observed = 0.0;
    double computed = 0.0;
    double residual = 0.0;  // computed - observed
};

struct FitReport {
    double k = 0.0;
    LagrangePair lagrange;
    double r2 = 0.0;
    double mrae = 0.0;
    double rmse = 0.0;
    int n_points = 0;
    std::vector<ResidualRow> residuals;
    int excluded_bed_points = 0;
};

enum class MeanEstimator { Trapezoid, Arithmetic };

struct ValidationOptions {
    std::optional<double> nu_m;  // overrides the estimate from data
    MeanEstimator estimator = MeanEstimator::Trapezoid;
    Solver solver = Solver::LinearTruncated;
    CdfModel cdf = CdfModel::Truncated;
    quad::QuadratureConfig quadrature;
};

struct Validation {
    FitReport report;
    double nu_m_trapezoid = 0.0;
    double nu_m_arithmetic = 0.0;
    double sse = 0.0;
    int out_of_range_predictions = 0;
    std::string diagnostic;
};

/// Mean velocity -> multipliers -> k -> predicted profile -> metrics. R^2 uses every
/// sample; MRAE and RMSE skip bed samples (nu_hat = 0). Needs >= 4 samples.
Validation run_validation(const Profile& profile, const ValidationOptions& opt = {});

}  // namespace fracent
