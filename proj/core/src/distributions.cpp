#include "fracent/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracent/error.hpp"
#include "fracent/specfun.hpp"

namespace fracent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Truncation abscissae leave a tenth of kTailMass so the remainder stays below it.
constexpr double kCutMass = 0.1 * kTailMass;

struct FamilyInfo {
    Family family;
    std::string_view name;
    std::array<std::string_view, 3> keys;
    int arity;
};

constexpr std::array<FamilyInfo, 13> kFamilies = {{
    {Family::Uniform, "uniform", {"A", "B", ""}, 2},
    {Family::Normal, "normal", {"mu", "sigma", ""}, 2},
    {Family::Exponential, "exponential", {"lambda", "", ""}, 1},
    {Family::ParetoII, "pareto2", {"k", "sigma", ""}, 2},
    {Family::Triangular, "triangular", {"beta", "", ""}, 1},
    {Family::FoldedT, "foldedt", {"gamma", "", ""}, 1},
    {Family::Cramer, "cramer", {"theta", "", ""}, 1},
    {Family::Cauchy, "cauchy", {"mu", "sigma", ""}, 2},
    {Family::Gamma, "gamma", {"m", "n", ""}, 2},
    {Family::Beta, "beta", {"m", "n", ""}, 2},
    {Family::Weibull, "weibull", {"a", "b", ""}, 2},
    {Family::GeneralizedPareto, "gpd", {"k", "sigma", "theta"}, 3},
    {Family::FiniteRange, "finiterange", {"a", "theta", ""}, 2},
}};

const FamilyInfo& info(Family f) {
    for (const auto& i : kFamilies)
        if (i.family == f) return i;
    throw DomainError("unknown family");
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void require(bool ok, const char* family, const char* what) {
    if (!ok) throw DomainError(std::string(family) + ": " + what);
}

bool finite_all(std::initializer_list<double> vs) {
    return std::all_of(vs.begin(), vs.end(), [](double v) { return std::isfinite(v); });
}

// (c - 1) * log(x) with the convention 0 * log(0) = 0.
double power_log(double c, double lx) { return c == 1.0 ? 0.0 : (c - 1.0) * lx; }

double log_beta(double m, double n) { return std::lgamma(m) + std::lgamma(n) - std::lgamma(m + n); }

}  // namespace

Family parse_family(std::string_view text) {
    std::string name = lower(trim(text));
    std::erase(name, '-');
    std::erase(name, '_');
    if (name == "paretoii") name = "pareto2";
    if (name == "generalizedpareto") name = "gpd";
    if (name == "standardnormal") name = "normal";
    for (const auto& i : kFamilies)
        if (i.name == name) return i.family;
    throw ParseError("unknown distribution family '" + std::string(trim(text)) + "'");
}

std::vector<Family> all_families() {
    std::vector<Family> out;
    for (const auto& i : kFamilies) out.push_back(i.family);
    return out;
}

std::string_view family_name(Family f) { return info(f).name; }

std::string_view normalization_name(Normalization n) {
    switch (n) {
        case Normalization::AsPrinted: return "printed";
        case Normalization::Renormalized: return "renormalized";
        case Normalization::FullLine: return "fullline";
    }
    return "printed";
}

DistributionSpec::DistributionSpec(Family f, std::array<double, 3> p, Normalization n)
    : family_(f), p_(p), norm_(n) {
    if (n == Normalization::FullLine && f != Family::Normal && f != Family::Cramer)
        throw DomainError(std::string(family_name(f)) + ": full-line mode applies only to normal and cramer");
}

DistributionSpec DistributionSpec::uniform(double A, double B) {
    require(finite_all({A, B}), "uniform", "parameters must be finite");
    require(A >= 0.0, "uniform", "requires A >= 0");
    require(B > A, "uniform", "requires B > A");
    return {Family::Uniform, {A, B, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::normal(double mu, double sigma, Normalization n) {
    require(finite_all({mu, sigma}), "normal", "parameters must be finite");
    require(mu >= 0.0, "normal", "requires mu >= 0");
    require(sigma > 0.0, "normal", "requires sigma > 0");
    return {Family::Normal, {mu, sigma, 0.0}, n};
}

DistributionSpec DistributionSpec::standard_normal(Normalization n) { return normal(0.0, 1.0, n); }

DistributionSpec DistributionSpec::exponential(double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0, "exponential", "requires lambda > 0");
    return {Family::Exponential, {lambda, 0.0, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::pareto2(double k, double sigma) {
    require(finite_all({k, sigma}) && k > 0.0 && sigma > 0.0, "pareto2", "requires k, sigma > 0");
    return {Family::ParetoII, {k, sigma, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::triangular(double beta, Normalization n) {
    require(std::isfinite(beta) && beta > 0.0 && beta < 1.0, "triangular", "requires 0 < beta < 1");
    return {Family::Triangular, {beta, 0.0, 0.0}, n};
}

DistributionSpec DistributionSpec::folded_t(double gamma) {
    require(std::isfinite(gamma) && gamma > 0.0, "foldedt", "requires gamma > 0");
    return {Family::FoldedT, {gamma, 0.0, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::cramer(double theta, Normalization n) {
    require(std::isfinite(theta) && theta > 0.0, "cramer", "requires theta > 0");
    return {Family::Cramer, {theta, 0.0, 0.0}, n};
}

DistributionSpec DistributionSpec::cauchy(double mu, double sigma) {
    require(finite_all({mu, sigma}), "cauchy", "parameters must be finite");
    require(mu >= 0.0, "cauchy", "requires mu >= 0");
    require(sigma > 0.0, "cauchy", "requires sigma > 0");
    return {Family::Cauchy, {mu, sigma, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::gamma(double m, double n) {
    require(finite_all({m, n}) && m > 0.0 && n > 0.0, "gamma", "requires m, n > 0");
    require(n <= 150.0, "gamma", "shape above 150 is not supported");
    return {Family::Gamma, {m, n, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::beta(double m, double n) {
    require(finite_all({m, n}) && m > 0.0 && n > 0.0, "beta", "requires m, n > 0");
    return {Family::Beta, {m, n, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::weibull(double a, double b) {
    require(finite_all({a, b}) && a > 0.0 && b > 0.0, "weibull", "requires a, b > 0");
    return {Family::Weibull, {a, b, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::generalized_pareto(double k, double sigma, double theta) {
    require(finite_all({k, sigma, theta}), "gpd", "parameters must be finite");
    require(k > 0.0 && sigma > 0.0, "gpd", "requires k, sigma > 0");
    return {Family::GeneralizedPareto, {k, sigma, theta}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::finite_range(double a, double theta) {
    require(finite_all({a, theta}) && a > 0.0 && theta > 0.0, "finiterange", "requires a, theta > 0");
    return {Family::FiniteRange, {a, theta, 0.0}, Normalization::AsPrinted};
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
    text = trim(text);
    const auto colon = text.find(':');
    const FamilyInfo* fam = &info(parse_family(text.substr(0, colon)));

    std::array<double, 3> values{};
    std::array<bool, 3> seen{};
    Normalization norm = Normalization::AsPrinted;
    const bool standard = lower(trim(text.substr(0, colon))).find("standard") != std::string::npos;
    if (standard) {
        values = {0.0, 1.0, 0.0};
        seen = {true, true, false};
    }

    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    while (!trim(rest).empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(item) + "'");
        std::string key = lower(trim(item.substr(0, eq)));
        const std::string_view raw = trim(item.substr(eq + 1));
        if (key == "norm") {
            const std::string v = lower(raw);
            if (v == "printed" || v == "asprinted") norm = Normalization::AsPrinted;
            else if (v == "renormalized") norm = Normalization::Renormalized;
            else if (v == "fullline" || v == "full") norm = Normalization::FullLine;
            else throw ParseError("unknown normalization '" + std::string(raw) + "'");
            continue;
        }
        // The finite-range tables use p for the exponent a.
        if (fam->family == Family::FiniteRange && key == "p") key = "a";
        int slot = -1;
        for (int i = 0; i < fam->arity; ++i)
            if (lower(fam->keys[std::size_t(i)]) == key) slot = i;
        if (slot < 0) throw ParseError(std::string(fam->name) + ": unknown parameter '" + std::string(item.substr(0, eq)) + "'");
        double v = 0.0;
        const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc() || res.ptr != raw.data() + raw.size())
            throw ParseError(std::string(fam->name) + ": bad number '" + std::string(raw) + "'");
        values[std::size_t(slot)] = v;
        seen[std::size_t(slot)] = true;
    }
    for (int i = 0; i < fam->arity; ++i)
        if (!seen[std::size_t(i)])
            throw ParseError(std::string(fam->name) + ": missing parameter '" + std::string(fam->keys[std::size_t(i)]) + "'");

    const auto& v = values;
    switch (fam->family) {
        case Family::Uniform: return uniform(v[0], v[1]).with_normalization(norm);
        case Family::Normal: return normal(v[0], v[1], norm);
        case Family::Exponential: return exponential(v[0]).with_normalization(norm);
        case Family::ParetoII: return pareto2(v[0], v[1]).with_normalization(norm);
        case Family::Triangular: return triangular(v[0], norm);
        case Family::FoldedT: return folded_t(v[0]).with_normalization(norm);
        case Family::Cramer: return cramer(v[0], norm);
        case Family::Cauchy: return cauchy(v[0], v[1]).with_normalization(norm);
        case Family::Gamma: return gamma(v[0], v[1]).with_normalization(norm);
        case Family::Beta: return beta(v[0], v[1]).with_normalization(norm);
        case Family::Weibull: return weibull(v[0], v[1]).with_normalization(norm);
        case Family::GeneralizedPareto: return generalized_pareto(v[0], v[1], v[2]).with_normalization(norm);
        case Family::FiniteRange: return finite_range(v[0], v[1]).with_normalization(norm);
    }
    throw ParseError("unhandled family");
}

DistributionSpec DistributionSpec::with_normalization(Normalization n) const { return {family_, p_, n}; }

double DistributionSpec::param(std::string_view name) const {
    const auto& fam = info(family_);
    for (int i = 0; i < fam.arity; ++i)
        if (fam.keys[std::size_t(i)] == name) return p_[std::size_t(i)];
    throw DomainError(std::string(fam.name) + " has no parameter '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, double>> DistributionSpec::params() const {
    const auto& fam = info(family_);
    std::vector<std::pair<std::string, double>> out;
    for (int i = 0; i < fam.arity; ++i) out.emplace_back(std::string(fam.keys[std::size_t(i)]), p_[std::size_t(i)]);
    return out;
}

Interval DistributionSpec::support() const {
    const auto& p = p_;
    switch (family_) {
        case Family::Uniform: return {p[0], p[1]};
        case Family::Normal:
        case Family::Cramer:
            return norm_ == Normalization::FullLine ? Interval{-kInf, kInf} : Interval{0.0, kInf};
        case Family::Cauchy: return {-kInf, kInf};
        case Family::Triangular:
        case Family::Beta: return {0.0, 1.0};
        case Family::GeneralizedPareto: return {p[2], kInf};
        case Family::FiniteRange: return {0.0, p[1]};
        default: return {0.0, kInf};
    }
}

bool DistributionSpec::bounded() const {
    const auto s = support();
    return std::isfinite(s.lo) && std::isfinite(s.hi);
}

double DistributionSpec::log_mass() const {
    const auto& p = p_;
    switch (family_) {
        case Family::Normal:
            if (norm_ == Normalization::FullLine) return 0.0;
            return std::log(0.5 * std::erfc(-p[0] / (p[1] * std::numbers::sqrt2)));
        case Family::Cramer: return norm_ == Normalization::FullLine ? 0.0 : -std::numbers::ln2;
        case Family::Triangular: {
            const double b = p[0];
            return std::log(b + (1.0 - b) * (1.0 - b) / b);
        }
        default: return 0.0;
    }
}

double DistributionSpec::mass() const { return norm_ == Normalization::Renormalized ? 1.0 : std::exp(log_mass()); }

bool DistributionSpec::unit_mass() const { return std::abs(mass() - 1.0) <= 1e-14; }

double DistributionSpec::log_pdf_unchecked(double x) const {
    const auto& p = p_;
    double lf = 0.0;
    switch (family_) {
        case Family::Uniform: lf = -std::log(p[1] - p[0]); break;
        case Family::Normal: {
            const double z = (x - p[0]) / p[1];
            lf = -0.5 * std::log(2.0 * std::numbers::pi) - std::log(p[1]) - 0.5 * z * z;
            break;
        }
        case Family::Exponential: lf = std::log(p[0]) - p[0] * x; break;
        case Family::ParetoII: lf = p[1] * std::log(p[0]) + std::log(p[1]) - (p[1] + 1.0) * std::log(x + p[0]); break;
        case Family::Triangular:
            lf = x <= p[0] ? std::log(2.0 * x / p[0]) : std::log(2.0 * (1.0 - x) / p[0]);
            break;
        case Family::FoldedT: {
            const double g = p[0];
            lf = std::numbers::ln2 - 0.5 * std::log(g) - log_beta(0.5 * g, 0.5) - 0.5 * (g + 1.0) * std::log1p(x * x / g);
            break;
        }
        case Family::Cramer: lf = std::log(0.5 * p[0]) - 2.0 * std::log1p(p[0] * std::abs(x)); break;
        case Family::Cauchy: {
            const double z = (x - p[0]) / p[1];
            lf = -std::log(std::numbers::pi * p[1]) - std::log1p(z * z);
            break;
        }
        case Family::Gamma:
            lf = p[1] * std::log(p[0]) + power_log(p[1], std::log(x)) - p[0] * x - std::lgamma(p[1]);
            break;
        case Family::Beta:
            lf = power_log(p[0], std::log(x)) + power_log(p[1], std::log1p(-x)) - log_beta(p[0], p[1]);
            break;
        case Family::Weibull: {
            const double u = x / p[0];
            lf = std::log(p[1] / p[0]) + power_log(p[1], std::log(u)) - std::pow(u, p[1]);
            break;
        }
        case Family::GeneralizedPareto:
            lf = -std::log(p[1]) - (1.0 + 1.0 / p[0]) * std::log1p(p[0] * (x - p[2]) / p[1]);
            break;
        case Family::FiniteRange: lf = std::log(p[0]) + power_log(p[0], std::log(x)) - p[0] * std::log(p[1]); break;
    }
    if (norm_ == Normalization::Renormalized) lf -= log_mass();
    return lf;
}

double DistributionSpec::log_pdf(double x) const {
    const auto s = support();
    if (std::isnan(x) || x < s.lo || x > s.hi)
        throw DomainError(std::string(family_name(family_)) + ": x = " + shortest(x) + " outside the support");
    return log_pdf_unchecked(x);
}

double DistributionSpec::pdf(double x) const { return std::exp(log_pdf(x)); }

double DistributionSpec::log_pdf_below_upper(double d) const {
    const auto s = support();
    if (!std::isfinite(s.hi) || std::isnan(d) || d < 0.0 || d > s.hi - s.lo)
        throw DomainError(std::string(family_name(family_)) + ": distance outside the support");
    if (family_ == Family::Beta) {
        double lf = power_log(p_[0], std::log1p(-d)) + power_log(p_[1], std::log(d)) - log_beta(p_[0], p_[1]);
        if (norm_ == Normalization::Renormalized) lf -= log_mass();
        return lf;
    }
    return log_pdf_unchecked(s.hi - d);
}

std::vector<quad::Segment> DistributionSpec::segments() const {
    const auto& p = p_;
    const double big = 1.0 / kCutMass;
    std::vector<quad::Segment> out;
    auto upper = [&](double lo, double scale, double cut, double tail = 1.0) {
        quad::Segment s;
        s.lo = lo;
        s.hi = kInf;
        s.scale = scale;
        s.cut = cut;
        s.tail_power = tail;
        out.push_back(s);
    };
    auto lower_tail = [&](double hi, double scale, double cut) {
        quad::Segment s;
        s.lo = -kInf;
        s.hi = hi;
        s.scale = scale;
        s.cut = cut;
        out.push_back(s);
    };
    auto finite = [&](double lo, double hi, double lp = 1.0, double rp = 1.0) {
        quad::Segment s;
        s.lo = lo;
        s.hi = hi;
        s.left_power = lp;
        s.right_power = rp;
        out.push_back(s);
    };

    switch (family_) {
        case Family::Uniform: finite(p[0], p[1]); break;
        case Family::Normal: {
            const double mu = p[0];
            const double sigma = p[1];
            const double zcut = 8.0;
            if (norm_ == Normalization::FullLine) {
                lower_tail(mu, sigma, mu - zcut * sigma);
            } else if (mu > 0.0) {
                finite(0.0, mu);
            }
            upper(mu, sigma, mu + zcut * sigma);
            break;
        }
        case Family::Exponential: upper(0.0, 1.0 / p[0], std::log(big) / p[0]); break;
        case Family::ParetoII: upper(0.0, p[0], p[0] * (std::pow(big, 1.0 / p[1]) - 1.0), std::max(1.0, 1.0 / p[1])); break;
        case Family::Triangular:
            finite(0.0, p[0]);
            finite(p[0], 1.0);
            break;
        case Family::FoldedT: {
            const double g = p[0];
            const double A = 2.0 / (std::sqrt(g) * std::exp(log_beta(0.5 * g, 0.5)));
            const double cut = std::pow(A * std::pow(g, 0.5 * (g - 1.0)) * big, 1.0 / g);
            upper(0.0, std::sqrt(g), cut, std::max(1.0, 1.0 / g));
            break;
        }
        case Family::Cramer: {
            const double cut = (0.5 * big - 1.0) / p[0];
            if (norm_ == Normalization::FullLine) lower_tail(0.0, 1.0 / p[0], -cut);
            upper(0.0, 1.0 / p[0], cut);
            break;
        }
        case Family::Cauchy: {
            const double span = p[1] * big / std::numbers::pi;
            lower_tail(p[0], p[1], p[0] - span);
            upper(p[0], p[1], p[0] + span);
            break;
        }
        case Family::Gamma: {
            const double m = p[0];
            const double n = p[1];
            const double cut = (n + 40.0 + 12.0 * std::sqrt(n)) / m;
            const double scale = std::max(n, 1.0) / m;
            if (n < 1.0) {
                finite(0.0, scale, 1.0 / n);
                upper(scale, scale, cut);
            } else if (n == 1.0) {
                upper(0.0, scale, cut);
            } else {
                const double mode = (n - 1.0) / m;
                finite(0.0, mode);
                upper(mode, scale, cut);
            }
            break;
        }
        case Family::Beta:
            finite(0.0, 1.0, p[0] < 1.0 ? 1.0 / p[0] : 1.0, p[1] < 1.0 ? 1.0 / p[1] : 1.0);
            break;
        case Family::Weibull: {
            const double a = p[0];
            const double b = p[1];
            const double cut = a * std::pow(std::log(big), 1.0 / b);
            if (b < 1.0) {
                finite(0.0, a, 1.0 / b);
                upper(a, a, cut);
            } else if (b == 1.0) {
                upper(0.0, a, cut);
            } else {
                const double mode = a * std::pow((b - 1.0) / b, 1.0 / b);
                finite(0.0, mode);
                upper(mode, a, cut);
            }
            break;
        }
        case Family::GeneralizedPareto: {
            const double k = p[0];
            upper(p[2], p[1], p[2] + p[1] / k * (std::pow(big, k) - 1.0), std::max(1.0, k));
            break;
        }
        case Family::FiniteRange: finite(0.0, p[1], p[0] < 1.0 ? 1.0 / p[0] : 1.0); break;
    }
    return out;
}

std::string DistributionSpec::to_string() const {
    const auto& fam = info(family_);
    std::string out(fam.name);
    out += ':';
    for (int i = 0; i < fam.arity; ++i) {
        if (i > 0) out += ',';
        out += fam.keys[std::size_t(i)];
        out += '=';
        out += shortest(p_[std::size_t(i)]);
    }
    if (norm_ != Normalization::AsPrinted) {
        out += ",norm=";
        out += normalization_name(norm_);
    }
    return out;
}

DensityRange density_max(const DistributionSpec& spec) {
    const auto p = [&](std::string_view k) { return spec.param(k); };
    double fmax = 0.0;
    switch (spec.family()) {
        case Family::Uniform: fmax = 1.0 / (p("B") - p("A")); break;
        case Family::Normal: fmax = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * p("sigma")); break;
        case Family::Exponential: fmax = p("lambda"); break;
        case Family::ParetoII: fmax = p("sigma") / p("k"); break;
        case Family::Triangular: {
            const double b = p("beta");
            fmax = std::max(2.0, 2.0 * (1.0 - b) / b);
            break;
        }
        case Family::FoldedT: fmax = spec.pdf(0.0); break;
        case Family::Cramer: fmax = 0.5 * p("theta"); break;
        case Family::Cauchy: fmax = 1.0 / (std::numbers::pi * p("sigma")); break;
        case Family::Gamma: {
            const double n = p("n");
            if (n < 1.0) fmax = kInf;
            else if (n == 1.0) fmax = p("m");
            else fmax = spec.pdf((n - 1.0) / p("m"));
            break;
        }
        case Family::Beta: {
            const double m = p("m");
            const double n = p("n");
            if (m < 1.0 || n < 1.0) fmax = kInf;
            else if (m == 1.0 && n == 1.0) fmax = 1.0;
            else fmax = spec.pdf(std::clamp((m - 1.0) / (m + n - 2.0), 0.0, 1.0));
            break;
        }
        case Family::Weibull: {
            const double a = p("a");
            const double b = p("b");
            if (b < 1.0) fmax = kInf;
            else if (b == 1.0) fmax = 1.0 / a;
            else fmax = spec.pdf(a * std::pow((b - 1.0) / b, 1.0 / b));
            break;
        }
        case Family::GeneralizedPareto: fmax = 1.0 / p("sigma"); break;
        case Family::FiniteRange: {
            const double a = p("a");
            if (a < 1.0) fmax = kInf;
            else fmax = a / p("theta");
            break;
        }
    }
    if (spec.normalization() == Normalization::Renormalized && std::isfinite(fmax)) {
        fmax /= spec.with_normalization(Normalization::AsPrinted).mass();
    }
    // Rounding slack: an exact f_max of 1 (e.g. sigma = 1/sqrt(2 pi)) stays admissible.
    const bool ok = fmax <= 1.0 + 1e-12;
    return {fmax, ok ? DensityClass::Admissible : DensityClass::Inadmissible};
}

DensityRange density_max_grid(const DistributionSpec& spec) {
    double best = -kInf;
    for (const auto& seg : spec.segments()) {
        const bool lo_inf = std::isinf(seg.lo);
        const bool hi_inf = std::isinf(seg.hi);
        // Map u in [0, 1] onto the segment the same way quadrature does.
        double t_end = 1.0;
        double origin = seg.lo;
        double dir = 1.0;
        if (lo_inf || hi_inf) {
            origin = lo_inf ? seg.hi : seg.lo;
            dir = lo_inf ? -1.0 : 1.0;
            if (std::isfinite(seg.cut)) {
                const double span = std::abs(seg.cut - origin);
                t_end = span / (span + seg.scale);
            }
        }
        auto x_of = [&](double u) {
            if (!lo_inf && !hi_inf) return seg.lo + (seg.hi - seg.lo) * u;
            const double t = u * t_end;
            return origin + dir * seg.scale * t / (1.0 - t);
        };
        auto lf = [&](double u) {
            const auto sup = spec.support();
            const double x = std::clamp(x_of(std::clamp(u, 0.0, 1.0)), sup.lo, sup.hi);
            const double v = spec.log_pdf(x);
            return std::isnan(v) ? -kInf : v;
        };
        constexpr int kGrid = 4000;
        int arg = 0;
        double seg_best = -kInf;
        for (int i = 0; i <= kGrid; ++i) {
            const double u = double(i) / kGrid;
            if (u == 1.0 && (lo_inf || hi_inf) && t_end == 1.0) continue;
            const double v = lf(u);
            if (v > seg_best) {
                seg_best = v;
                arg = i;
            }
        }
        if (std::isinf(seg_best) && seg_best > 0.0) return {kInf, DensityClass::Inadmissible};
        // Golden-section refinement on the bracketing cells.
        double a = double(std::max(arg - 1, 0)) / kGrid;
        double b = double(std::min(arg + 1, kGrid)) / kGrid;
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = lf(c);
        double fd = lf(d);
        for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = lf(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = lf(d);
            }
        }
        best = std::max({best, seg_best, fc, fd});
    }
    const double fmax = std::exp(best);
    return {fmax, fmax <= 1.0 + 1e-12 ? DensityClass::Admissible : DensityClass::Inadmissible};
}

quad::QuadResult integrate_functional(const DistributionSpec& spec,
                                      const std::function<double(double, double)>& g,
                                      const quad::QuadratureConfig& cfg, quad::Rule rule, double upper) {
    cfg.validate();
    const auto s = spec.support();
    const bool subst = cfg.endpoint_handling == quad::EndpointHandling::AlgebraicSubstitution;
    const quad::Integrand direct = [&](double x) {
        const double xc = std::clamp(x, s.lo, s.hi);
        return g(xc, spec.log_pdf(xc));
    };
    quad::QuadResult total;
    for (auto seg : spec.segments()) {
        if (seg.lo >= upper) break;
        if (seg.hi > upper) {
            if (std::isinf(seg.hi)) {
                seg.cut = std::isfinite(seg.cut) ? std::min(seg.cut, upper) : upper;
            } else {
                seg.hi = upper;
                seg.right_power = 1.0;
            }
        }
        if (!(subst && std::isfinite(seg.lo) && std::isfinite(seg.hi) && seg.right_power > 1.0)) {
            total += quad::integrate_segment(direct, seg, cfg, rule);
            // The tail past the largest double carries more than kTailMass.
            if (std::isinf(seg.hi) && std::isinf(seg.cut)) total.converged = false;
            continue;
        }
        double split = seg.lo;
        if (seg.left_power > 1.0) {
            split = 0.5 * (seg.lo + seg.hi);
            quad::Segment left = seg;
            left.hi = split;
            left.right_power = 1.0;
            total += quad::integrate_segment(direct, left, cfg, rule);
        }
        const double hi = seg.hi;
        quad::Segment reflected;
        reflected.lo = 0.0;
        reflected.hi = hi - split;
        reflected.left_power = seg.right_power;
        const quad::Integrand from_upper = [&](double d) {
            const double dc = std::clamp(d, 0.0, reflected.hi);
            return g(hi - dc, spec.log_pdf_below_upper(dc));
        };
        total += quad::integrate_segment(from_upper, reflected, cfg, rule);
    }
    return total;
}

double cdf_numeric(const DistributionSpec& spec, double x, const quad::QuadratureConfig& cfg) {
    const auto s = spec.support();
    if (std::isnan(x) || x < s.lo || x > s.hi)
        throw DomainError(std::string(family_name(spec.family())) + ": cdf argument outside the support");
    const auto total = integrate_functional(
        spec, [](double, double lf) { return std::exp(lf); }, cfg, quad::Rule::Adaptive, x);
    if (!total.converged) throw ConvergenceError("cdf_numeric: quadrature did not converge");
    return std::clamp(total.value, 0.0, 1.0);
}

}  // namespace fracent
