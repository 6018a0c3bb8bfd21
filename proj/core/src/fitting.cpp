#include "fracent/fitting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

namespace fracent {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_number(const std::string& field, int line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) throw ParseError("not a number: '" + field + "'", line);
    return v;
}

void check_lengths(const std::vector<double>& observed, const std::vector<double>& computed) {
    if (observed.empty() || observed.size() != computed.size())
        throw DomainError("metric inputs must have equal nonzero length");
}

}  // namespace

Profile make_profile(std::vector<ProfileSample> samples) {
    for (const auto& s : samples) {
        if (!(s.y_over_M >= 0.0 && s.y_over_M <= 1.0)) throw DomainError("y/M outside [0, 1]");
        if (!(s.nu_hat >= 0.0 && s.nu_hat <= 1.0)) throw DomainError("normalized velocity outside [0, 1]");
    }
    std::sort(samples.begin(), samples.end(),
              [](const ProfileSample& l, const ProfileSample& r) { return l.y_over_M < r.y_over_M; });
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].y_over_M == samples[i - 1].y_over_M) throw DomainError("duplicate height in profile");

    Profile p;
    p.samples = std::move(samples);
    if (p.samples.empty()) return p;

    double sum = 0.0;
    for (const auto& s : p.samples) sum += s.nu_hat;
    p.nu_m_arithmetic = sum / static_cast<double>(p.samples.size());

    double prev_y = 0.0, prev_v = 0.0, area = 0.0;
    for (const auto& s : p.samples) {
        area += 0.5 * (s.y_over_M - prev_y) * (s.nu_hat + prev_v);
        prev_y = s.y_over_M;
        prev_v = s.nu_hat;
    }
    area += (1.0 - prev_y) * prev_v;
    p.nu_m_trapezoid = area;
    return p;
}

Profile ingest_profile(std::istream& in) {
    std::string raw;
    int line_no = 0;
    int header_line = 0;
    char delim = ',';
    int iy = -1, im = -1, iv = -1, ivmax = -1;
    std::size_t columns = 0;
    std::vector<ProfileSample> samples;
    std::vector<int> lines;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (header_line == 0) {
            header_line = line_no;
            for (char c : {',', ';', '\t'})
                if (line.find(c) != std::string::npos) {
                    delim = c;
                    break;
                }
            const auto names = split(line, delim);
            columns = names.size();
            for (std::size_t i = 0; i < names.size(); ++i) {
                const auto n = lower(names[i]);
                const int idx = static_cast<int>(i);
                if (n == "y_over_m" || n == "y") iy = idx;
                else if (n == "m") im = idx;
                else if (n == "velocity") iv = idx;
                else if (n == "velocity_max") ivmax = idx;
                else throw ParseError("unknown column '" + names[i] + "'", line_no);
            }
            const bool normalized = columns == 2 && iy >= 0 && iv >= 0 && lower(names[static_cast<std::size_t>(iy)]) == "y_over_m";
            const bool raw_units = columns == 4 && iy >= 0 && im >= 0 && iv >= 0 && ivmax >= 0;
            if (!normalized && !raw_units)
                throw ParseError("header must be 'y_over_M,velocity' or 'y,M,velocity,velocity_max'", line_no);
            continue;
        }
        const auto fields = split(line, delim);
        if (fields.size() != columns)
            throw ParseError("expected " + std::to_string(columns) + " fields, got " + std::to_string(fields.size()),
                             line_no);
        ProfileSample s;
        if (columns == 2) {
            s.y_over_M = parse_number(fields[static_cast<std::size_t>(iy)], line_no);
            s.nu_hat = parse_number(fields[static_cast<std::size_t>(iv)], line_no);
        } else {
            const double y = parse_number(fields[static_cast<std::size_t>(iy)], line_no);
            const double M = parse_number(fields[static_cast<std::size_t>(im)], line_no);
            const double v = parse_number(fields[static_cast<std::size_t>(iv)], line_no);
            const double vmax = parse_number(fields[static_cast<std::size_t>(ivmax)], line_no);
            if (!(M > 0.0) || !(vmax > 0.0)) throw ParseError("M and velocity_max must be positive", line_no);
            s.y_over_M = y / M;
            s.nu_hat = v / vmax;
        }
        if (!(s.y_over_M >= 0.0 && s.y_over_M <= 1.0))
            throw ParseError("y/M = " + std::to_string(s.y_over_M) + " outside [0, 1]", line_no);
        if (!(s.nu_hat >= 0.0 && s.nu_hat <= 1.0))
            throw ParseError("normalized velocity " + std::to_string(s.nu_hat) + " outside [0, 1]", line_no);
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (samples[i].y_over_M == s.y_over_M)
                throw ParseError("duplicate height (first seen on line " + std::to_string(lines[i]) + ")", line_no);
        samples.push_back(s);
        lines.push_back(line_no);
    }
    if (header_line == 0) throw ParseError("missing header");
    return make_profile(std::move(samples));
}

Profile ingest_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return ingest_profile(in);
}

std::string_view cdf_model_name(CdfModel m) { return m == CdfModel::Truncated ? "est6" : "est3"; }

double model_cdf(double nu_hat, const LagrangePair& lag, CdfModel model, const quad::QuadratureConfig& cfg) {
    return model == CdfModel::Truncated ? cdf_truncated(nu_hat, lag) : cdf_quadrature(nu_hat, lag, cfg);
}

KFit fit_k(const std::vector<ProfileSample>& samples, const LagrangePair& lag, CdfModel model,
           const quad::QuadratureConfig& cfg) {
    if (samples.size() < 3) throw DomainError("fitting k needs at least 3 samples");
    std::vector<double> F;
    F.reserve(samples.size());
    for (const auto& s : samples) F.push_back(model_cdf(s.nu_hat, lag, model, cfg));
    if (std::all_of(F.begin(), F.end(), [&](double v) { return v == F.front(); }))
        throw DomainError("every computed cdf is identical; k is not identifiable");

    auto sse = [&](double k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double d = F[i] - std::pow(samples[i].y_over_M, k);
            acc += d * d;
        }
        return acc;
    };

    constexpr int kGrid = 200;
    int best = 0;
    double best_val = sse(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const double v = sse(static_cast<double>(i) / kGrid);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = std::max(0.0, static_cast<double>(best - 1) / kGrid);
    double hi = std::min(1.0, static_cast<double>(best + 1) / kGrid);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = sse(x1), f2 = sse(x2);
    while (hi - lo > 1e-12) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = sse(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = sse(x2);
        }
    }
    double k = 0.5 * (lo + hi);
    double fk = sse(k);
    for (double edge : {0.0, 1.0}) {
        const double fe = sse(edge);
        if (fe <= fk) {
            k = edge;
            fk = fe;
        }
    }

    // Parabolic refinement through three nearby points.
    const double h = 1e-6;
    if (k - h >= 0.0 && k + h <= 1.0) {
        const double fl = sse(k - h), fr = sse(k + h);
        const double curv = fl - 2.0 * fk + fr;
        if (curv > 0.0) {
            const double cand = std::clamp(k - 0.5 * h * (fr - fl) / curv, 0.0, 1.0);
            const double fc = sse(cand);
            if (fc < fk) {
                k = cand;
                fk = fc;
            }
        }
    }

    KFit out{k, fk, {}};
    // sse extends past [0, 1]; a lower value just outside means the bound is active.
    const double probe = 1e-4;
    if (k == 0.0 && sse(-probe) < fk * (1.0 - 1e-9)) out.diagnostic = "unconstrained optimum lies below k = 0";
    if (k == 1.0 && sse(1.0 + probe) < fk * (1.0 - 1e-9)) out.diagnostic = "unconstrained optimum lies above k = 1";
    return out;
}

double r_squared(const std::vector<double>& observed, const std::vector<double>& computed) {
    check_lengths(observed, computed);
    const double mean = std::accumulate(observed.begin(), observed.end(), 0.0) / static_cast<double>(observed.size());
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ss_tot += (observed[i] - mean) * (observed[i] - mean);
        ss_res += (observed[i] - computed[i]) * (observed[i] - computed[i]);
    }
    if (ss_tot == 0.0) throw DomainError("observed values have zero variance");
    return 1.0 - ss_res / ss_tot;
}

double mrae(const std::vector<double>& observed, const std::vector<double>& computed) {
    check_lengths(observed, computed);
    double acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (observed[i] == 0.0) throw DomainError("relative error undefined for a zero observation");
        acc += std::abs(computed[i] - observed[i]) / std::abs(observed[i]);
    }
    return acc / static_cast<double>(observed.size());
}

double rmse(const std::vector<double>& observed, const std::vector<double>& computed) {
    check_lengths(observed, computed);
    double acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) acc += (computed[i] - observed[i]) * (computed[i] - observed[i]);
    return std::sqrt(acc / static_cast<double>(observed.size()));
}

Validation run_validation(const Profile& profile, const ValidationOptions& opt) {
    if (profile.samples.size() < 4) throw DomainError("validation needs at least 4 samples");
    Validation v;
    v.nu_m_trapezoid = profile.nu_m_trapezoid;
    v.nu_m_arithmetic = profile.nu_m_arithmetic;
    const double nu_m = opt.nu_m ? *opt.nu_m
                                 : (opt.estimator == MeanEstimator::Trapezoid ? profile.nu_m_trapezoid
                                                                              : profile.nu_m_arithmetic);

    LagrangePair lag;
    try {
        lag = opt.solver == Solver::LinearTruncated ? solve_lagrange_linear(nu_m, opt.quadrature)
                                                    : solve_lagrange_exact(nu_m, opt.quadrature);
    } catch (const DegenerateMeanError& e) {
        throw DegenerateMeanError(std::string(e.what()) +
                                  "; supply a perturbed mean explicitly or use the exact solver");
    }

    const KFit fit = fit_k(profile.samples, lag, opt.cdf, opt.quadrature);
    v.sse = fit.sse;
    v.diagnostic = fit.diagnostic;

    VelocityModel model{lag, fit.k, Branch::MinusRoot};
    FitReport& r = v.report;
    r.k = fit.k;
    r.lagrange = lag;
    r.n_points = static_cast<int>(profile.samples.size());

    std::vector<double> obs_all, cmp_all, obs, cmp;
    for (const auto& s : profile.samples) {
        const Prediction p = predict_velocity(s.y_over_M, model);
        if (p.out_of_range) ++v.out_of_range_predictions;
        r.residuals.push_back({s.y_over_M, s.nu_hat, p.nu_hat, p.nu_hat - s.nu_hat});
        obs_all.push_back(s.nu_hat);
        cmp_all.push_back(p.nu_hat);
        if (s.nu_hat == 0.0) {
            ++r.excluded_bed_points;
            continue;
        }
        obs.push_back(s.nu_hat);
        cmp.push_back(p.nu_hat);
    }
    r.r2 = r_squared(obs_all, cmp_all);
    r.mrae = mrae(obs, cmp);
    r.rmse = rmse(obs, cmp);
    return v;
}

}  // namespace fracent
