#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracent/distributions.hpp"
#include "fracent/quadrature.hpp"

namespace fracent {

// Entropy order, 0 < alpha <= 1 (alpha = 1 is the Shannon limit).
class Alpha {
public:
    explicit Alpha(double v);
    double value() const noexcept { return v_; }
    bool shannon() const noexcept { return v_ == 1.0; }

private:
    double v_;
};

enum class Method { ClosedForm, Quadrature, Series };
// Unchecked: a single path was evaluated and nothing was compared against it.
enum class Status { Verified, Discrepant, ComplexDomain, Unchecked };

std::string_view method_name(Method m);
std::string_view status_name(Status s);

struct FdeEvaluation {
    double value = std::numeric_limits<double>::quiet_NaN();
    Method method = Method::Quadrature;
    int series_terms = 0;  // truncation order when method == Series
    double abs_error = 0.0;
    Status status = Status::Unchecked;
    double reference = std::numeric_limits<double>::quiet_NaN();  // set when Discrepant
    Normalization normalization = Normalization::AsPrinted;
    std::string note;
};

/// f (-ln f)^alpha for 0 < f <= 1.
double entropy_integrand(double f, Alpha alpha);

/// FDE by quadrature. Inadmissible densities with alpha < 1 yield status ComplexDomain
/// and a NaN value. Throws ConvergenceError when the quadrature fails.
FdeEvaluation fde_numeric(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg = {},
                          quad::Rule rule = quad::Rule::Adaptive);

struct SeriesOptions {
    int terms = 40;
    double delta = 1e-10;  // required size of the last partial-sum increment
};

/// The family's closed-form FDE, checked against fde_numeric (status Verified or
/// Discrepant with the quadrature value as reference). std::nullopt when the family
/// or its parameters have no printed closed form. A series whose guard fails is
/// replaced by the quadrature value with method Quadrature and an explanatory note.
std::optional<FdeEvaluation> fde_closed_form(const DistributionSpec& spec, Alpha alpha,
                                             const quad::QuadratureConfig& cfg = {},
                                             const SeriesOptions& series = {});

/// -int f ln f; valid for any density, including those with f > 1.
double shannon_entropy(const DistributionSpec& spec, const quad::QuadratureConfig& cfg = {});
quad::QuadResult shannon_integral(const DistributionSpec& spec, const quad::QuadratureConfig& cfg = {});

struct CrossValidation {
    bool verified = false;
    double closed = 0.0;
    double numeric = 0.0;
    double tolerance = 0.0;
};

/// Compares closed form and quadrature; throws DomainError when no closed form
/// exists or the value is complex.
CrossValidation cross_validate(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg = {});

inline constexpr std::array<double, 6> kTable2Alphas = {1.0, 0.9, 0.8, 0.6, 0.4, 0.2};
inline constexpr double kTable2Tolerance = 5e-4;

struct Table2Cell {
    std::string row;
    DistributionSpec spec;
    double alpha;
    double printed;
    FdeEvaluation evaluation;  // adaptive quadrature; Verified/Discrepant against `printed`
    double composite;          // fixed composite rule, independent of the adaptive path
    std::optional<FdeEvaluation> closed;
    std::optional<double> full_line;  // symmetric full-line value for half-line rows
};

struct Table2Report {
    std::vector<Table2Cell> cells;

    // Every Uniform and Exponential cell matches the printed value by both paths.
    bool reproducible_subset_verified() const;
    std::vector<const Table2Cell*> discrepancies() const;
};

Table2Report table2_report(const quad::QuadratureConfig& cfg = {});

}  // namespace fracent
