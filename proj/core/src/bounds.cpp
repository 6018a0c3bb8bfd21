#include "fracent/bounds.hpp"

#include <cmath>
#include <numbers>

#include "fracent/error.hpp"

namespace fracent {

namespace {

constexpr double kBaseTol = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double powa(double base, double a) { return a == 1.0 ? base : std::pow(base, a); }

double info(double lf, double a) {
    const double y = -lf;
    if (a < 1.0 && y < 0.0 && y > -1e-12) return 0.0;
    return powa(y, a);
}

BoundCheck make(std::string name, const DistributionSpec& spec, double alpha) {
    BoundCheck c;
    c.name = std::move(name);
    c.spec = spec.to_string();
    c.alpha = alpha;
    return c;
}

BoundCheck skip(BoundCheck c, std::string reason) {
    c.verdict = Verdict::Skipped;
    c.reason = std::move(reason);
    return c;
}

BoundCheck decide(BoundCheck c, double lhs, double rhs, double err) {
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.tolerance = kBaseTol + err;
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) return skip(std::move(c), "a side of the inequality is not finite");
    c.verdict = c.slack >= -c.tolerance ? Verdict::Holds : Verdict::Fails;
    return c;
}

// Admissibility, or alpha = 1 when the inequality is real-valued for any density.
const char* admissibility_issue(const DistributionSpec& spec, double a, bool shannon_ok) {
    if (density_max(spec).admissible()) return nullptr;
    if (shannon_ok && a == 1.0) return nullptr;
    return "density exceeds 1";
}

struct Integral {
    double value;
    double error;
};

Integral integrate(const DistributionSpec& spec, const std::function<double(double, double)>& g,
                   const quad::QuadratureConfig& cfg) {
    const auto r = integrate_functional(spec, g, cfg);
    if (!r.converged) throw ConvergenceError("quadrature did not converge");
    return {r.value, r.abs_error};
}

Integral fde(const DistributionSpec& spec, double a, const quad::QuadratureConfig& cfg) {
    return integrate(spec, [a](double, double lf) { return lf == kNegInf ? 0.0 : std::exp(lf) * info(lf, a); }, cfg);
}

Integral shannon(const DistributionSpec& spec, const quad::QuadratureConfig& cfg) { return fde(spec, 1.0, cfg); }

double support_length(const DistributionSpec& spec) {
    const auto s = spec.support();
    return s.hi - s.lo;
}

template <class Body>
BoundCheck guarded(BoundCheck c, Body&& body) {
    try {
        return body(std::move(c));
    } catch (const ConvergenceError& e) {
        c.verdict = Verdict::Skipped;
        c.reason = e.what();
        return c;
    }
}

double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }
double uniform_in(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * u01(rng); }

DistributionSpec draw(Family family, std::mt19937_64& rng) {
    auto u = [&](double lo, double hi) { return uniform_in(rng, lo, hi); };
    auto norm = [&] {
        const auto r = rng() % 3;
        return r == 0 ? Normalization::AsPrinted : r == 1 ? Normalization::Renormalized : Normalization::FullLine;
    };
    switch (family) {
        case Family::Uniform: {
            const double A = u(0.0, 2.0);
            return DistributionSpec::uniform(A, A + u(1.0, 5.0));
        }
        case Family::Normal: return DistributionSpec::normal(u(0.0, 3.0), u(0.4, 3.0), norm());
        case Family::Exponential: return DistributionSpec::exponential(u(0.05, 1.0));
        case Family::ParetoII: {
            const double k = u(0.5, 5.0);
            return DistributionSpec::pareto2(k, u(0.2, 1.0) * k);
        }
        case Family::Triangular: return DistributionSpec::triangular(u(0.05, 0.95));
        case Family::FoldedT: return DistributionSpec::folded_t(u(0.3, 10.0));
        case Family::Cramer: {
            const auto n = norm();
            return DistributionSpec::cramer(u(0.1, 2.0), n);
        }
        case Family::Cauchy: return DistributionSpec::cauchy(u(0.0, 3.0), u(0.3, 3.0));
        case Family::Gamma: return DistributionSpec::gamma(u(0.05, 1.5), u(1.0, 4.0));
        case Family::Beta: {
            const double m = rng() % 2 == 0 ? 1.0 : u(1.0, 3.0);
            const double n = rng() % 2 == 0 ? 1.0 : u(1.0, 3.0);
            return DistributionSpec::beta(m, n);
        }
        case Family::Weibull: return DistributionSpec::weibull(u(0.8, 5.0), u(1.0, 4.0));
        case Family::GeneralizedPareto: return DistributionSpec::generalized_pareto(u(0.1, 2.0), u(1.0, 5.0), u(0.0, 3.0));
        case Family::FiniteRange: {
            const double a = u(1.0, 3.0);
            return DistributionSpec::finite_range(a, u(a, 3.0 * a + 1.0));
        }
    }
    throw DomainError("unknown family");
}

constexpr std::array<Family, 13> kAllFamilies = {
    Family::Uniform, Family::Normal,  Family::Exponential, Family::ParetoII,          Family::Triangular,
    Family::FoldedT, Family::Cramer,  Family::Cauchy,      Family::Gamma,             Family::Beta,
    Family::Weibull, Family::GeneralizedPareto, Family::FiniteRange};

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Skipped: return "skipped";
    }
    return "";
}

BoundCheck bound_shannon_power(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg) {
    const double a = alpha.value();
    auto c = make("shannon_power", spec, a);
    if (auto why = admissibility_issue(spec, a, true)) return skip(c, why);
    if (!spec.unit_mass()) return skip(c, "density does not integrate to one");
    return guarded(std::move(c), [&](BoundCheck c) {
        const auto h = fde(spec, a, cfg);
        const auto hs = shannon(spec, cfg);
        if (hs.value < 0.0 && a < 1.0) return skip(std::move(c), "Shannon entropy is negative");
        const double rhs = powa(hs.value, a);
        const double rhs_err = a == 1.0 ? hs.error : a * std::pow(std::max(hs.value, 1e-300), a - 1.0) * hs.error;
        return decide(std::move(c), h.value, rhs, h.error + rhs_err);
    });
}

BoundCheck bound_exp_logsum(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg) {
    const double a = alpha.value();
    auto c = make("exp_logsum", spec, a);
    if (!spec.bounded()) return skip(c, "support is unbounded");
    if (auto why = admissibility_issue(spec, a, false)) return skip(c, why);
    if (!spec.unit_mass()) return skip(c, "density does not integrate to one");
    return guarded(std::move(c), [&](BoundCheck c) {
        // ln A(a) + H_S = a int f ln(-ln f).
        bool diverges = false;
        const auto loglog = integrate(
            spec,
            [&](double, double lf) {
                if (lf == kNegInf) return 0.0;
                const double f = std::exp(lf);
                if (f == 0.0) return 0.0;
                if (!(-lf > 0.0)) {
                    diverges = true;
                    return 0.0;
                }
                return f * std::log(-lf);
            },
            cfg);
        if (diverges) return skip(std::move(c), "A(alpha) diverges where f = 1");
        const auto h = fde(spec, a, cfg);
        const double lhs = std::exp(a * loglog.value);
        return decide(std::move(c), lhs, h.value, h.error + lhs * a * loglog.error);
    });
}

BoundCheck bound_jensen_support(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg) {
    const double a = alpha.value();
    auto c = make("jensen_support", spec, a);
    if (!spec.bounded()) return skip(c, "support is unbounded");
    if (auto why = admissibility_issue(spec, a, true)) return skip(c, why);
    return guarded(std::move(c), [&](BoundCheck c) {
        const double b = support_length(spec);
        const auto h = fde(spec, a, cfg);
        const auto hs = shannon(spec, cfg);
        if (hs.value < 0.0 && a < 1.0) return skip(std::move(c), "Shannon entropy is negative");
        const double scale = std::pow(b, 1.0 - a);
        const double rhs = scale * powa(hs.value, a);
        const double rhs_err = scale * (a == 1.0 ? hs.error : a * std::pow(std::max(hs.value, 1e-300), a - 1.0) * hs.error);
        return decide(std::move(c), h.value, rhs, h.error + rhs_err);
    });
}

BoundCheck bound_holder(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg) {
    const double a = alpha.value();
    auto c = make("holder", spec, a);
    if (!spec.bounded()) return skip(c, "support is unbounded");
    if (auto why = admissibility_issue(spec, a, true)) return skip(c, why);
    return guarded(std::move(c), [&](BoundCheck c) {
        const auto h = fde(spec, a, cfg);
        const auto gain = integrate(spec, [a](double, double lf) { return lf == kNegInf ? 0.0 : info(lf, a); }, cfg);
        if (!std::isfinite(gain.value)) return skip(std::move(c), "information-gain integral diverges");
        return decide(std::move(c), h.value, gain.value, h.error + gain.error);
    });
}

SandwichChecks bound_sandwich(const DistributionSpec& spec, Alpha alpha, const quad::QuadratureConfig& cfg) {
    const double a = alpha.value();
    SandwichChecks out{make("sandwich_lower", spec, a), make("sandwich_upper", spec, a), make("sandwich_cap", spec, a)};
    const char* why = !spec.bounded() ? "support is unbounded" : admissibility_issue(spec, a, true);
    if (why) {
        out.lower = skip(out.lower, why);
        out.upper = skip(out.upper, why);
        out.cap = skip(out.cap, why);
        return out;
    }
    try {
        const auto h = fde(spec, a, cfg);
        const auto lower = integrate(
            spec,
            [a](double, double lf) {
                if (lf == kNegInf) return 0.0;
                const double f = std::exp(lf);
                return f * powa(-std::expm1(lf), a);
            },
            cfg);
        const auto upper = integrate(
            spec,
            [a](double, double lf) {
                if (lf == kNegInf) return 0.0;
                // f (1/f - 1)^a = f^{1-a} (1 - f)^a
                const double one_minus = -std::expm1(lf);
                if (a == 1.0) return one_minus;
                return std::exp((1.0 - a) * lf) * std::pow(std::max(one_minus, 0.0), a);
            },
            cfg);
        out.lower = decide(out.lower, lower.value, h.value, h.error + lower.error);
        out.upper = decide(out.upper, h.value, upper.value, h.error + upper.error);
        const double cap = support_length(spec) * std::pow(a / std::numbers::e, a);
        out.cap = decide(out.cap, h.value, cap, h.error);
    } catch (const ConvergenceError& e) {
        out.lower = skip(out.lower, e.what());
        out.upper = skip(out.upper, e.what());
        out.cap = skip(out.cap, e.what());
    }
    return out;
}

BoundCheck bound_subadditive(const DistributionSpec& x, const DistributionSpec& y, Alpha alpha,
                             const quad::QuadratureConfig& cfg) {
    const double a = alpha.value();
    auto c = make("subadditive", x, a);
    c.spec += " x " + y.to_string();
    if (auto why = admissibility_issue(x, a, true)) return skip(c, why);
    if (auto why = admissibility_issue(y, a, true)) return skip(c, why);
    if (!x.unit_mass() || !y.unit_mass()) return skip(c, "a marginal does not integrate to one");
    return guarded(std::move(c), [&](BoundCheck c) {
        double inner_err = 0.0;
        bool inner_ok = true;
        const auto outer = integrate_functional(
            x,
            [&](double, double lfx) {
                if (lfx == kNegInf) return 0.0;
                const double fx = std::exp(lfx);
                if (fx == 0.0) return 0.0;
                const auto inner = integrate_functional(
                    y,
                    [&](double, double lfy) {
                        if (lfy == kNegInf) return 0.0;
                        return std::exp(lfy) * info(lfx + lfy, a);
                    },
                    cfg);
                inner_ok = inner_ok && inner.converged;
                inner_err = std::max(inner_err, inner.abs_error);
                return fx * inner.value;
            },
            cfg);
        if (!outer.converged || !inner_ok) throw ConvergenceError("double quadrature did not converge");
        const auto hx = fde(x, a, cfg);
        const auto hy = fde(y, a, cfg);
        return decide(std::move(c), outer.value, hx.value + hy.value,
                      outer.abs_error + inner_err + hx.error + hy.error);
    });
}

int SuiteReport::count(Verdict v) const {
    int n = 0;
    for (const auto& c : checks) n += c.verdict == v ? 1 : 0;
    return n;
}

double SuiteReport::skipped_fraction() const {
    return checks.empty() ? 0.0 : double(count(Verdict::Skipped)) / double(checks.size());
}

DistributionSpec random_spec(Family family, std::mt19937_64& rng) {
    DistributionSpec spec = draw(family, rng);
    for (int attempt = 0; attempt < 50 && !density_max(spec).admissible(); ++attempt) spec = draw(family, rng);
    return spec;
}

SuiteReport run_bound_suite(const SuiteOptions& opt, const quad::QuadratureConfig& cfg) {
    std::vector<Family> families = opt.families;
    if (families.empty()) families.assign(kAllFamilies.begin(), kAllFamilies.end());
    std::mt19937_64 rng(opt.seed);
    SuiteReport report;
    for (int i = 0; i < opt.draws; ++i) {
        const Family fam = families[rng() % families.size()];
        const auto spec = random_spec(fam, rng);
        const Alpha alpha(double(1 + rng() % 9) / 10.0);
        const auto partner = random_spec(families[rng() % families.size()], rng);

        report.checks.push_back(bound_shannon_power(spec, alpha, cfg));
        report.checks.push_back(bound_exp_logsum(spec, alpha, cfg));
        report.checks.push_back(bound_jensen_support(spec, alpha, cfg));
        report.checks.push_back(bound_holder(spec, alpha, cfg));
        auto s = bound_sandwich(spec, alpha, cfg);
        report.checks.push_back(std::move(s.lower));
        report.checks.push_back(std::move(s.upper));
        report.checks.push_back(std::move(s.cap));
        report.checks.push_back(bound_subadditive(spec, partner, alpha, cfg));
    }
    return report;
}

}  // namespace fracent
