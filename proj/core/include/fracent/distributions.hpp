#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "fracent/quadrature.hpp"

namespace fracent {

enum class Family {
    Uniform,
    Normal,
    Exponential,
    ParetoII,
    Triangular,
    FoldedT,
    Cramer,
    Cauchy,
    Gamma,
    Beta,
    Weibull,
    GeneralizedPareto,
    FiniteRange,
};

// How a density whose printed formula does not integrate to one is treated.
//   AsPrinted    - the formula exactly as written on its printed support
//   Renormalized - the printed formula divided by its mass
//   FullLine     - the symmetric extension to the whole real line (normal, cramer)
enum class Normalization { AsPrinted, Renormalized, FullLine };

std::string_view family_name(Family f);
std::string_view normalization_name(Normalization n);

// Accepts the canonical names plus paretoii, generalizedpareto and standardnormal.
Family parse_family(std::string_view name);
std::vector<Family> all_families();

struct Interval {
    double lo;
    double hi;
};

/// A validated univariate density from the catalog.
///
/// Instances are immutable; the factory functions reject parameters outside each
/// family's printed constraints, so an invalid spec cannot be constructed.
/// Parameter letters follow the usual notation of each family:
///   uniform(A, B), normal(mu, sigma), exponential(lambda), pareto2(k, sigma),
///   triangular(beta), foldedt(gamma), cramer(theta), cauchy(mu, sigma),
///   gamma(m rate, n shape), beta(m, n), weibull(a scale, b shape),
///   gpd(k, sigma, theta), finiterange(a, theta).
class DistributionSpec {
public:
    static DistributionSpec uniform(double A, double B);
    static DistributionSpec normal(double mu, double sigma, Normalization n = Normalization::AsPrinted);
    static DistributionSpec standard_normal(Normalization n = Normalization::AsPrinted);
    static DistributionSpec exponential(double lambda);
    static DistributionSpec pareto2(double k, double sigma);
    static DistributionSpec triangular(double beta, Normalization n = Normalization::AsPrinted);
    static DistributionSpec folded_t(double gamma);
    static DistributionSpec cramer(double theta, Normalization n = Normalization::AsPrinted);
    static DistributionSpec cauchy(double mu, double sigma);
    static DistributionSpec gamma(double m, double n);
    static DistributionSpec beta(double m, double n);
    static DistributionSpec weibull(double a, double b);
    static DistributionSpec generalized_pareto(double k, double sigma, double theta);
    static DistributionSpec finite_range(double a, double theta);

    /// Parses `family:key=value{,key=value}`; an optional `norm=printed|renormalized|fullline`
    /// key selects the normalization. Throws ParseError or DomainError.
    static DistributionSpec parse(std::string_view text);

    Family family() const noexcept { return family_; }
    Normalization normalization() const noexcept { return norm_; }
    DistributionSpec with_normalization(Normalization n) const;

    // Parameter by its letter (e.g. "sigma"); throws DomainError for an unknown name.
    double param(std::string_view name) const;
    std::vector<std::pair<std::string, double>> params() const;

    Interval support() const;
    bool bounded() const;

    /// Mass of the density over its support (1 except for printed half-line forms).
    double mass() const;
    bool unit_mass() const;

    double log_pdf(double x) const;
    double pdf(double x) const;

    /// log pdf at support().hi - d, keeping full accuracy as d -> 0 (finite upper end only).
    double log_pdf_below_upper(double d) const;

    /// Integration plan: the support split at modes/kinks, with mapping hints for
    /// infinite ends (scale and truncation abscissa) and singular endpoints.
    std::vector<quad::Segment> segments() const;

    /// Canonical text form; parse(to_string()) reproduces the spec.
    std::string to_string() const;

private:
    DistributionSpec(Family f, std::array<double, 3> p, Normalization n);
    double log_pdf_unchecked(double x) const;
    double log_mass() const;

    Family family_;
    std::array<double, 3> p_{};
    Normalization norm_ = Normalization::AsPrinted;
};

enum class DensityClass { Admissible, Inadmissible };

struct DensityRange {
    double f_max = 0.0;
    DensityClass classification = DensityClass::Admissible;

    bool admissible() const noexcept { return classification == DensityClass::Admissible; }
};

/// Supremum of the pdf over its support, from the family's mode.
DensityRange density_max(const DistributionSpec& spec);

/// Same quantity found by scanning the integration segments and refining the best
/// grid point with golden-section search; independent of the analytic modes.
DensityRange density_max_grid(const DistributionSpec& spec);

/// int g(x, ln f(x)) dx over the support up to `upper`, following the integration plan.
/// Points where f vanishes are passed with log_f = -inf. Segments with a singular
/// upper end are integrated in the distance to that end.
quad::QuadResult integrate_functional(const DistributionSpec& spec,
                                      const std::function<double(double x, double log_f)>& g,
                                      const quad::QuadratureConfig& cfg = {},
                                      quad::Rule rule = quad::Rule::Adaptive,
                                      double upper = std::numeric_limits<double>::infinity());

/// int_lo^x pdf by adaptive quadrature. Throws DomainError outside the support
/// and ConvergenceError when the quadrature fails.
double cdf_numeric(const DistributionSpec& spec, double x, const quad::QuadratureConfig& cfg = {});

// Tail mass left beyond the truncation abscissa of an infinite support end.
inline constexpr double kTailMass = 1e-14;

}  // namespace fracent
