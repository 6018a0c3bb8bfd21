#include "fracent_tools/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracent/bounds.hpp"
#include "fracent/entropy.hpp"
#include "fracent/error.hpp"
#include "fracent/fitting.hpp"
#include "fracent/velocity.hpp"
#include "fracent_tools/svg.hpp"

namespace fracent::tools {

namespace {

using nlohmann::ordered_json;

enum class Format { Text, Csv, Kv };

struct Globals {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    std::uint64_t seed = 20240917;
    std::string format = "text";
    std::string out_path;
    int precision = 4;

    Format fmt() const { return format == "csv" ? Format::Csv : format == "kv" ? Format::Kv : Format::Text; }
    quad::QuadratureConfig quadrature() const {
        quad::QuadratureConfig c;
        c.rel_tol = rel_tol;
        c.abs_tol = abs_tol;
        c.validate();
        return c;
    }
};

std::string fixed(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string sci(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// JSON has no NaN; map it to null.
ordered_json jnum(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string text() const {
        std::vector<std::size_t> width(header.size(), 0);
        for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
        for (const auto& r : rows)
            for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
        std::ostringstream o;
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t c = 0; c < r.size(); ++c) {
                s += r[c];
                if (c + 1 < r.size()) s += std::string(width[c] - r[c].size() + 2, ' ');
            }
            o << s << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return o.str();
    }

    std::string csv() const {
        std::ostringstream o;
        auto cell = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        };
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t c = 0; c < r.size(); ++c) o << (c ? "," : "") << cell(r[c]);
            o << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return o.str();
    }

    std::string render(Format f) const { return f == Format::Csv ? csv() : text(); }
};

Table key_values(const std::vector<std::pair<std::string, std::string>>& kv) {
    Table t{{"key", "value"}, {}};
    for (const auto& [k, v] : kv) t.rows.push_back({k, v});
    return t;
}

// ---------------------------------------------------------------- entropy

struct EntropyArgs {
    std::string spec;
    double alpha = 1.0;
    std::string method = "auto";
    bool allow_shannon_only = false;
};

int cmd_entropy(const EntropyArgs& a, const Globals& g, std::string& report) {
    const auto spec = DistributionSpec::parse(a.spec);
    const Alpha alpha(a.alpha);
    const auto cfg = g.quadrature();

    FdeEvaluation ev;
    if (a.method == "quadrature") {
        ev = fde_numeric(spec, alpha, cfg);
    } else {
        auto closed = fde_closed_form(spec, alpha, cfg);
        if (closed)
            ev = *closed;
        else if (a.method == "closed")
            throw DomainError("no closed form for " + spec.to_string());
        else
            ev = fde_numeric(spec, alpha, cfg);
    }

    const bool complex = ev.status == Status::ComplexDomain;
    std::optional<double> shannon;
    if (complex && a.allow_shannon_only) shannon = shannon_entropy(spec, cfg);

    const int p = g.precision;
    if (g.fmt() == Format::Kv) {
        ordered_json j;
        j["spec"] = spec.to_string();
        j["alpha"] = alpha.value();
        j["value"] = jnum(ev.value);
        j["method"] = method_name(ev.method);
        j["status"] = status_name(ev.status);
        j["abs_error"] = jnum(ev.abs_error);
        j["reference"] = jnum(ev.reference);
        j["series_terms"] = ev.series_terms;
        j["normalization"] = normalization_name(ev.normalization);
        j["note"] = ev.note;
        if (shannon) j["shannon"] = *shannon;
        report = j.dump(2) + "\n";
    } else {
        std::vector<std::pair<std::string, std::string>> kv = {
            {"spec", spec.to_string()},
            {"alpha", fixed(alpha.value(), p)},
            {"value", fixed(ev.value, p)},
            {"method", std::string(method_name(ev.method))},
            {"status", std::string(status_name(ev.status))},
            {"abs_error", sci(ev.abs_error)},
            {"reference", fixed(ev.reference, p)},
            {"normalization", std::string(normalization_name(ev.normalization))},
        };
        if (ev.method == Method::Series) kv.push_back({"series_terms", std::to_string(ev.series_terms)});
        if (!ev.note.empty()) kv.push_back({"note", ev.note});
        if (shannon) kv.push_back({"shannon", fixed(*shannon, p)});
        report = key_values(kv).render(g.fmt());
    }
    return complex && !a.allow_shannon_only ? kExitDomain : kExitOk;
}

// ---------------------------------------------------------------- table2

int cmd_table2(const Globals& g, std::string& report) {
    const auto t = table2_report(g.quadrature());
    const int p = g.precision;
    if (g.fmt() == Format::Kv) {
        ordered_json cells = ordered_json::array();
        for (const auto& c : t.cells) {
            ordered_json j;
            j["row"] = c.row;
            j["spec"] = c.spec.to_string();
            j["alpha"] = c.alpha;
            j["printed"] = c.printed;
            j["quadrature"] = jnum(c.evaluation.value);
            j["composite"] = jnum(c.composite);
            j["closed_form"] = c.closed ? jnum(c.closed->value) : ordered_json(nullptr);
            j["status"] = status_name(c.evaluation.status);
            if (c.full_line) j["full_line"] = *c.full_line;
            cells.push_back(j);
        }
        ordered_json j;
        j["cells"] = cells;
        j["reproducible_subset_verified"] = t.reproducible_subset_verified();
        report = j.dump(2) + "\n";
    } else {
        Table tab{{"row", "alpha", "printed", "quadrature", "composite", "closed_form", "status"}, {}};
        for (const auto& c : t.cells)
            tab.rows.push_back({c.row, fixed(c.alpha, 1), fixed(c.printed, 4), fixed(c.evaluation.value, p),
                                fixed(c.composite, p), c.closed ? fixed(c.closed->value, p) : "-",
                                std::string(status_name(c.evaluation.status))});
        report = tab.render(g.fmt());
        if (g.fmt() == Format::Text) {
            const auto d = t.discrepancies();
            report += "\ndiscrepancies (" + std::to_string(d.size()) + "):\n";
            for (const auto* c : d) {
                report += "  " + c->row + " alpha=" + fixed(c->alpha, 1) + " printed=" + fixed(c->printed, 4) +
                          " recomputed=" + fixed(c->evaluation.value, p);
                if (c->full_line) report += " full_line=" + fixed(*c->full_line, p);
                report += "\n";
            }
            report += std::string("reproducible subset (uniform, exponential): ") +
                      (t.reproducible_subset_verified() ? "verified" : "NOT verified") + "\n";
        }
    }
    return t.reproducible_subset_verified() ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
    std::vector<std::string> families;
    int draws = 200;
};

int cmd_bounds(const BoundsArgs& a, const Globals& g, std::string& report) {
    SuiteOptions opt;
    opt.seed = g.seed;
    opt.draws = a.draws;
    for (const auto& f : a.families) opt.families.push_back(parse_family(f));
    const auto r = run_bound_suite(opt, g.quadrature());

    std::map<std::string, std::array<int, 3>> by_name;
    std::vector<std::string> order;
    for (const auto& c : r.checks) {
        if (!by_name.count(c.name)) order.push_back(c.name);
        by_name[c.name][static_cast<int>(c.verdict)]++;
    }
    const int p = g.precision;

    if (g.fmt() == Format::Kv) {
        ordered_json summary = ordered_json::object();
        for (const auto& n : order)
            summary[n] = {{"holds", by_name[n][0]}, {"fails", by_name[n][1]}, {"skipped", by_name[n][2]}};
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name}, {"spec", c.spec}, {"alpha", c.alpha}, {"lhs", jnum(c.lhs)},
                              {"rhs", jnum(c.rhs)}, {"slack", jnum(c.slack)}, {"verdict", verdict_name(c.verdict)},
                              {"reason", c.reason}});
        ordered_json j;
        j["seed"] = g.seed;
        j["draws"] = a.draws;
        j["summary"] = summary;
        j["skipped_fraction"] = r.skipped_fraction();
        j["passed"] = r.passed();
        j["checks"] = checks;
        report = j.dump(2) + "\n";
    } else if (g.fmt() == Format::Csv) {
        Table t{{"name", "spec", "alpha", "lhs", "rhs", "slack", "verdict", "reason"}, {}};
        for (const auto& c : r.checks)
            t.rows.push_back({c.name, c.spec, fixed(c.alpha, 1), fixed(c.lhs, p), fixed(c.rhs, p), sci(c.slack),
                              std::string(verdict_name(c.verdict)), c.reason});
        report = t.csv();
    } else {
        Table t{{"bound", "holds", "fails", "skipped"}, {}};
        for (const auto& n : order)
            t.rows.push_back({n, std::to_string(by_name[n][0]), std::to_string(by_name[n][1]),
                              std::to_string(by_name[n][2])});
        report = "seed " + std::to_string(g.seed) + ", " + std::to_string(a.draws) + " draws, " +
                 std::to_string(r.checks.size()) + " checks\n" + t.text();
        report += "skipped fraction: " + fixed(r.skipped_fraction(), p) + "\n";
        for (const auto& c : r.checks)
            if (c.verdict == Verdict::Fails)
                report += "FAIL " + c.name + " " + c.spec + " alpha=" + fixed(c.alpha, 1) + " slack=" + sci(c.slack) + "\n";
        report += std::string("verdict: ") + (r.passed() ? "no false verdicts" : "false verdicts found") + "\n";
    }
    return r.passed() ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------- velocity

struct FitArgs {
    std::string input;
    std::string solver = "linear";
    std::string cdf = "est6";
    std::optional<double> nu_m;
    std::string estimator = "trapezoid";
    std::string plot_dir;
};

ValidationOptions validation_options(const FitArgs& a, const Globals& g) {
    ValidationOptions o;
    o.nu_m = a.nu_m;
    o.estimator = a.estimator == "arithmetic" ? MeanEstimator::Arithmetic : MeanEstimator::Trapezoid;
    o.solver = a.solver == "exact" ? Solver::NumericExact : Solver::LinearTruncated;
    o.cdf = a.cdf == "est3" ? CdfModel::Quadrature : CdfModel::Truncated;
    o.quadrature = g.quadrature();
    return o;
}

ordered_json lagrange_json(const LagrangePair& l) {
    return {{"a", l.a},
            {"b", l.b},
            {"nu_m", l.nu_m},
            {"solver", solver_name(l.solver)},
            {"constraint_residuals", {l.constraint_residuals[0], l.constraint_residuals[1]}}};
}

Plot cdf_fit_plot(const Profile& prof, const Validation& v, CdfModel model, const quad::QuadratureConfig& cfg) {
    Plot p{PlotKind::CdfFit, "Fitted spatial cdf", "normalized velocity", "cumulative probability", {}};
    Series obs{"(y/M)^k at observed velocity", {}, false};
    for (const auto& s : prof.samples) obs.points.push_back({s.nu_hat, std::pow(s.y_over_M, v.report.k)});
    Series cdf{"model cdf", {}, true};
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        cdf.points.push_back({x, model_cdf(x, v.report.lagrange, model, cfg)});
    }
    p.series = {obs, cdf};
    return p;
}

Series model_profile(const VelocityModel& m) {
    Series s{"model, k = " + fixed(m.k, 4), {}, true};
    for (int i = 0; i <= 100; ++i) {
        const double y = i / 100.0;
        s.points.push_back({predict_velocity(y, m).nu_hat, y});
    }
    return s;
}

Plot profile_plot(const Profile* prof, const VelocityModel& m) {
    Plot p{PlotKind::Profile, "Velocity profile", "normalized velocity", "normalized height y/M", {}};
    if (prof) {
        Series obs{"observed", {}, false};
        for (const auto& s : prof->samples) obs.points.push_back({s.nu_hat, s.y_over_M});
        p.series.push_back(obs);
    }
    p.series.push_back(model_profile(m));
    return p;
}

Plot regression_plot(const Validation& v) {
    Plot p{PlotKind::Regression, "Observed vs computed velocity", "observed", "computed", {}};
    Series s{"samples, R2 = " + fixed(v.report.r2, 4), {}, false};
    for (const auto& r : v.report.residuals) s.points.push_back({r.observed, r.computed});
    p.series = {s};
    return p;
}

std::string fit_report(const Validation& v, CdfModel cdf, const Globals& g) {
    const auto& r = v.report;
    const int p = g.precision;
    if (g.fmt() == Format::Kv) {
        ordered_json res = ordered_json::array();
        for (const auto& row : r.residuals)
            res.push_back({{"y_over_M", row.y_over_M},
                           {"observed", row.observed},
                           {"computed", row.computed},
                           {"residual", row.residual}});
        ordered_json j;
        j["k"] = r.k;
        j["lagrange"] = lagrange_json(r.lagrange);
        j["r2"] = r.r2;
        j["mrae"] = r.mrae;
        j["rmse"] = r.rmse;
        j["n_points"] = r.n_points;
        j["residuals"] = res;
        j["excluded_bed_points"] = r.excluded_bed_points;
        j["diagnostics"] = {{"nu_m_trapezoid", v.nu_m_trapezoid},
                            {"nu_m_arithmetic", v.nu_m_arithmetic},
                            {"sse", v.sse},
                            {"cdf", cdf_model_name(cdf)},
                            {"out_of_range_predictions", v.out_of_range_predictions},
                            {"note", v.diagnostic}};
        return j.dump(2) + "\n";
    }
    Table res{{"y_over_M", "observed", "computed", "residual"}, {}};
    for (const auto& row : r.residuals)
        res.rows.push_back({fixed(row.y_over_M, p), fixed(row.observed, p), fixed(row.computed, p), fixed(row.residual, p)});
    if (g.fmt() == Format::Csv) return res.csv();
    std::vector<std::pair<std::string, std::string>> kv = {
        {"k", fixed(r.k, p)},
        {"a", fixed(r.lagrange.a, p)},
        {"b", fixed(r.lagrange.b, p)},
        {"nu_m", fixed(r.lagrange.nu_m, p)},
        {"solver", std::string(solver_name(r.lagrange.solver))},
        {"constraint_residuals", sci(r.lagrange.constraint_residuals[0]) + " " + sci(r.lagrange.constraint_residuals[1])},
        {"r2", fixed(r.r2, p)},
        {"mrae", fixed(r.mrae, p)},
        {"rmse", fixed(r.rmse, p)},
        {"n_points", std::to_string(r.n_points)},
        {"excluded_bed_points", std::to_string(r.excluded_bed_points)},
        {"nu_m_trapezoid", fixed(v.nu_m_trapezoid, p)},
        {"nu_m_arithmetic", fixed(v.nu_m_arithmetic, p)},
        {"sse", sci(v.sse)},
        {"cdf", std::string(cdf_model_name(cdf))},
    };
    if (v.out_of_range_predictions) kv.push_back({"out_of_range_predictions", std::to_string(v.out_of_range_predictions)});
    if (!v.diagnostic.empty()) kv.push_back({"note", v.diagnostic});
    return key_values(kv).text() + "\n" + res.text();
}

int cmd_velocity_fit(const FitArgs& a, const Globals& g, std::string& report) {
    const Profile prof = ingest_profile_file(a.input);
    const auto opt = validation_options(a, g);
    Validation v;
    try {
        v = run_validation(prof, opt);
    } catch (const LagrangeConvergenceError& e) {
        const auto& b = e.best();
        const double nu_m = b.nu_m;
        std::optional<LagrangePair> lin;
        try {
            lin = solve_lagrange_linear(nu_m, opt.quadrature);
        } catch (const DomainError&) {
        }
        if (g.fmt() == Format::Kv) {
            ordered_json j;
            j["error"] = e.what();
            j["best_exact_attempt"] = lagrange_json(b);
            if (lin) j["linear"] = lagrange_json(*lin);
            report = j.dump(2) + "\n";
        } else {
            std::vector<std::pair<std::string, std::string>> kv = {
                {"error", e.what()},
                {"nu_m", fixed(nu_m, g.precision)},
                {"best_a", fixed(b.a, g.precision)},
                {"best_b", fixed(b.b, g.precision)},
                {"best_residuals", sci(b.constraint_residuals[0]) + " " + sci(b.constraint_residuals[1])},
            };
            if (lin)
                kv.push_back({"linear_residuals",
                              sci(lin->constraint_residuals[0]) + " " + sci(lin->constraint_residuals[1])});
            report = key_values(kv).render(g.fmt());
        }
        return kExitNumeric;
    }
    report = fit_report(v, opt.cdf, g);

    if (!a.plot_dir.empty()) {
        std::filesystem::create_directories(a.plot_dir);
        const std::filesystem::path dir(a.plot_dir);
        write_svg(cdf_fit_plot(prof, v, opt.cdf, opt.quadrature), (dir / "cdf-fit.svg").string());
        write_svg(profile_plot(&prof, {v.report.lagrange, v.report.k, Branch::MinusRoot}), (dir / "profile.svg").string());
        write_svg(regression_plot(v), (dir / "regression.svg").string());
    }
    return kExitOk;
}

struct PredictArgs {
    double nu_m = 0.0;
    double k = 1.0;
    int points = 11;
    std::string branch = "minus";
    std::string svg;
};

int cmd_velocity_predict(const PredictArgs& a, const Globals& g, std::string& report) {
    const auto lag = solve_lagrange_linear(a.nu_m, g.quadrature());
    const VelocityModel m{lag, a.k, a.branch == "plus" ? Branch::PlusRoot : Branch::MinusRoot};
    if (a.points < 2) throw DomainError("--points must be at least 2");
    const int p = g.precision;

    Table t{{"y_over_M", "nu_hat", "out_of_range"}, {}};
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < a.points; ++i) {
        const double y = static_cast<double>(i) / (a.points - 1);
        const auto pr = predict_velocity(y, m);
        t.rows.push_back({fixed(y, p), fixed(pr.nu_hat, p), pr.out_of_range ? "yes" : "no"});
        rows.push_back({{"y_over_M", y}, {"nu_hat", pr.nu_hat}, {"out_of_range", pr.out_of_range}});
    }
    if (g.fmt() == Format::Kv) {
        ordered_json j;
        j["lagrange"] = lagrange_json(lag);
        j["k"] = a.k;
        j["branch"] = branch_name(m.branch);
        j["profile"] = rows;
        report = j.dump(2) + "\n";
    } else if (g.fmt() == Format::Csv) {
        report = t.csv();
    } else {
        report = "a = " + fixed(lag.a, p) + ", b = " + fixed(lag.b, p) + ", nu_m = " + fixed(lag.nu_m, p) +
                 ", k = " + fixed(a.k, p) + "\n" + t.text();
    }
    if (!a.svg.empty()) write_svg(profile_plot(nullptr, m), a.svg);
    return kExitOk;
}

// ---------------------------------------------------------------- plot

struct PlotArgs {
    std::string kind;
    std::string svg;
    FitArgs fit;
    std::optional<double> k;
};

int cmd_plot(const PlotArgs& a, const Globals& g, std::string& report) {
    const PlotKind kind = parse_plot_kind(a.kind);
    Plot plot;
    if (a.fit.input.empty()) {
        if (kind != PlotKind::Profile) throw std::invalid_argument("plot " + a.kind + " needs --input");
        if (!a.fit.nu_m || !a.k) throw std::invalid_argument("plot profile needs --input or both --nu-m and --k");
        const auto lag = solve_lagrange_linear(*a.fit.nu_m, g.quadrature());
        plot = profile_plot(nullptr, {lag, *a.k, Branch::MinusRoot});
    } else {
        const Profile prof = ingest_profile_file(a.fit.input);
        const auto opt = validation_options(a.fit, g);
        const auto v = run_validation(prof, opt);
        switch (kind) {
            case PlotKind::CdfFit: plot = cdf_fit_plot(prof, v, opt.cdf, opt.quadrature); break;
            case PlotKind::Profile: plot = profile_plot(&prof, {v.report.lagrange, v.report.k, Branch::MinusRoot}); break;
            case PlotKind::Regression: plot = regression_plot(v); break;
        }
    }
    write_svg(plot, a.svg);
    report = "wrote " + std::string(plot_kind_name(kind)) + " plot to " + a.svg + "\n";
    return kExitOk;
}

void add_fit_options(CLI::App* sub, FitArgs& f, bool input_positional) {
    if (input_positional)
        sub->add_option("input", f.input, "Profile file")->required();
    else
        sub->add_option("--input", f.input, "Profile file");
    sub->add_option("--solver", f.solver, "Multiplier solver")->check(CLI::IsMember({"linear", "exact"}));
    sub->add_option("--cdf", f.cdf, "Model cdf used to fit k")->check(CLI::IsMember({"est6", "est3"}));
    sub->add_option("--nu-m", f.nu_m, "Mean normalized velocity (default: from data)");
    sub->add_option("--estimator", f.estimator, "Mean estimator")->check(CLI::IsMember({"trapezoid", "arithmetic"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional differential entropy and maximum-entropy velocity profiles", "fracent"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Key-value file presetting any flag; command-line flags win");

    Globals g;
    app.add_option("--rel-tol", g.rel_tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);
    app.add_option("--abs-tol", g.abs_tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv", "kv"}));
    app.add_option("--out", g.out_path, "Write the report to this file");
    app.add_option("--precision", g.precision, "Decimals in text and csv output")->check(CLI::Range(0, 17));

    EntropyArgs ea;
    auto* ent = app.add_subcommand("entropy", "Fractional differential entropy of a distribution");
    ent->add_option("spec", ea.spec, "Distribution, e.g. uniform:A=0,B=2")->required();
    ent->add_option("--alpha", ea.alpha, "Order in (0, 1]")->required();
    ent->add_option("--method", ea.method, "auto, closed or quadrature")
        ->check(CLI::IsMember({"auto", "closed", "quadrature"}));
    ent->add_flag("--allow-shannon-only", ea.allow_shannon_only,
                  "Report the Shannon entropy and exit 0 when the value is complex");

    auto* t2 = app.add_subcommand("table2", "Recompute the fractional entropy table");

    BoundsArgs ba;
    auto* bnd = app.add_subcommand("bounds", "Seeded property suite over the entropy bounds");
    bnd->add_option("--families", ba.families, "Families to draw from (default all)")->delimiter(',');
    bnd->add_option("--draws", ba.draws, "Number of random distributions")->check(CLI::PositiveNumber);

    auto* vel = app.add_subcommand("velocity", "Maximum-entropy velocity profiles");
    vel->require_subcommand(1);
    vel->fallthrough();
    FitArgs fa;
    auto* fit = vel->add_subcommand("fit", "Fit k and validate against a measured profile");
    add_fit_options(fit, fa, true);
    fit->add_option("--plot-dir", fa.plot_dir, "Write cdf-fit, profile and regression SVGs here");
    PredictArgs pa;
    auto* pred = vel->add_subcommand("predict", "Predicted profile on an even height grid");
    pred->add_option("--nu-m", pa.nu_m, "Mean normalized velocity")->required();
    pred->add_option("--k", pa.k, "Spatial parameter in [0, 1]")->required();
    pred->add_option("--points", pa.points, "Grid points including bed and surface");
    pred->add_option("--branch", pa.branch, "Root of the inverted cdf")->check(CLI::IsMember({"minus", "plus"}));
    pred->add_option("--svg", pa.svg, "Write a profile plot");

    PlotArgs pl;
    auto* plt = app.add_subcommand("plot", "Emit an SVG plot");
    plt->add_option("kind", pl.kind, "cdf-fit, profile or regression")
        ->required()
        ->check(CLI::IsMember({"cdf-fit", "profile", "regression"}));
    plt->add_option("--svg", pl.svg, "Output file")->required();
    add_fit_options(plt, pl.fit, false);
    plt->add_option("--k", pl.k, "Spatial parameter for a model-only profile");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::string report;
    int code = kExitOk;
    try {
        if (*ent)
            code = cmd_entropy(ea, g, report);
        else if (*t2)
            code = cmd_table2(g, report);
        else if (*bnd)
            code = cmd_bounds(ba, g, report);
        else if (*fit)
            code = cmd_velocity_fit(fa, g, report);
        else if (*pred)
            code = cmd_velocity_predict(pa, g, report);
        else if (*plt)
            code = cmd_plot(pl, g, report);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (g.out_path.empty()) {
        out << report;
    } else {
        std::ofstream f(g.out_path, std::ios::binary);
        if (!(f << report)) {
            err << "error: cannot write '" << g.out_path << "'\n";
            return kExitUsage;
        }
    }
    return code;
}

}  // namespace fracent::tools
