#include "fracent/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "fracent/error.hpp"

namespace fracent::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// QUADPACK qk15: Kronrod estimate plus a conservative error bound.
Panel gauss_kronrod15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return {a, b, result, err};
}

struct LegendreRule {
    std::array<double, 20> nodes{};
    std::array<double, 20> weights{};
};

LegendreRule make_legendre20() {
    LegendreRule rule;
    constexpr int n = 20;
    for (int i = 0; i < n / 2; ++i) {
        double x = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = pk;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const LegendreRule& legendre20() {
    static const LegendreRule rule = make_legendre20();
    return rule;
}

double legendre_panel(const Integrand& f, double a, double b, int& evaluations) {
    const auto& rule = legendre20();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(center + half * rule.nodes[i]);
    evaluations += int(rule.nodes.size());
    return sum * half;
}

QuadResult dispatch(const Integrand& g, double a, double b, const QuadratureConfig& cfg, Rule rule) {
    return rule == Rule::Adaptive ? integrate_adaptive(g, a, b, cfg) : integrate_composite(g, a, b);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
}

QuadResult& QuadResult::operator+=(const QuadResult& other) {
    value += other.value;
    abs_error += other.abs_error;
    evaluations += other.evaluations;
    subdivisions += other.subdivisions;
    converged = converged && other.converged;
    return *this;
}

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
    QuadResult out;
    if (a == b) return out;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    constexpr int kInitial = 4;
    for (int i = 0; i < kInitial; ++i) {
        const double lo = a + (b - a) * double(i) / kInitial;
        const double hi = (i + 1 == kInitial) ? b : a + (b - a) * double(i + 1) / kInitial;
        Panel p = gauss_kronrod15(f, lo, hi);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    out.evaluations = 15 * kInitial;
    out.subdivisions = kInitial;

    // Panels too narrow to split keep their contribution but leave the heap.
    std::vector<Panel> frozen;
    while (true) {
        if (!std::isfinite(total)) {
            out.converged = false;
            break;
        }
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err <= target) break;
        if (heap.empty()) {
            out.converged = total_err <= std::max(target, 1e3 * kEps * std::abs(total));
            break;
        }
        if (out.subdivisions >= cfg.max_subdivisions) {
            out.converged = false;
            break;
        }
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) <= 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        const Panel left = gauss_kronrod15(f, worst.a, mid);
        const Panel right = gauss_kronrod15(f, mid, worst.b);
        out.evaluations += 30;
        ++out.subdivisions;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in abscissa order to shed the rounding accumulated in the running total.
    std::vector<Panel> panels = std::move(frozen);
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    double sum = 0.0;
    double err = 0.0;
    for (const auto& p : panels) {
        sum += p.value;
        err += p.error;
    }
    out.value = sign * sum;
    out.abs_error = err;
    if (!std::isfinite(out.value)) out.converged = false;
    return out;
}

QuadResult integrate_composite(const Integrand& f, double a, double b, int grading_levels, int middle_panels) {
    QuadResult out;
    if (a == b) return out;
    const double length = b - a;
    std::vector<double> breaks;
    breaks.reserve(std::size_t(2 * grading_levels + middle_panels + 4));
    // u in [0, 1]: graded toward 0 on [0, 1/4], uniform on [1/4, 3/4], graded toward 1 on [3/4, 1].
    breaks.push_back(0.0);
    for (int j = grading_levels; j >= 0; --j) breaks.push_back(0.25 * std::ldexp(1.0, -j));
    for (int j = 1; j < middle_panels; ++j) breaks.push_back(0.25 + 0.5 * double(j) / double(middle_panels));
    for (int j = 0; j <= grading_levels; ++j) breaks.push_back(1.0 - 0.25 * std::ldexp(1.0, -j));
    breaks.push_back(1.0);

    double sum = 0.0;
    double previous = a;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        const double x1 = (i + 1 == breaks.size()) ? b : a + length * breaks[i];
        if (x1 == previous) continue;
        sum += legendre_panel(f, previous, x1, out.evaluations);
        previous = x1;
    }
    out.value = sum;
    out.subdivisions = int(breaks.size()) - 1;
    out.abs_error = 0.0;  // fixed rule: no internal estimate
    out.converged = std::isfinite(sum);
    return out;
}

QuadResult integrate_segment(const Integrand& f, const Segment& seg, const QuadratureConfig& cfg, Rule rule) {
    const bool lo_inf = std::isinf(seg.lo);
    const bool hi_inf = std::isinf(seg.hi);
    if (lo_inf && hi_inf) throw DomainError("integrate_segment: split the real line before integrating");
    if (seg.hi < seg.lo) throw DomainError("integrate_segment: reversed segment");
    if (seg.hi == seg.lo) return {};

    if (!lo_inf && !hi_inf) {
        const double length = seg.hi - seg.lo;
        const bool subst = cfg.endpoint_handling == EndpointHandling::AlgebraicSubstitution;
        const double ql = subst ? seg.left_power : 1.0;
        const double qr = subst ? seg.right_power : 1.0;
        if (ql > 1.0 && qr > 1.0) {
            const double mid = seg.lo + 0.5 * length;
            Segment left = seg;
            left.hi = mid;
            left.right_power = 1.0;
            Segment right = seg;
            right.lo = mid;
            right.left_power = 1.0;
            QuadResult r = integrate_segment(f, left, cfg, rule);
            r += integrate_segment(f, right, cfg, rule);
            return r;
        }
        if (ql > 1.0) {
            const Integrand g = [&](double u) {
                if (u <= 0.0) return 0.0;
                const double jac = length * ql * std::pow(u, ql - 1.0);
                const double v = f(seg.lo + length * std::pow(u, ql));
                return v == 0.0 ? 0.0 : v * jac;
            };
            return dispatch(g, 0.0, 1.0, cfg, rule);
        }
        if (qr > 1.0) {
            const Integrand g = [&](double w) {
                if (w <= 0.0) return 0.0;
                const double jac = length * qr * std::pow(w, qr - 1.0);
                const double v = f(seg.hi - length * std::pow(w, qr));
                return v == 0.0 ? 0.0 : v * jac;
            };
            return dispatch(g, 0.0, 1.0, cfg, rule);
        }
        return dispatch(f, seg.lo, seg.hi, cfg, rule);
    }

    // One infinite end: x = origin + dir * scale * (1 - w) / w with w = v^q, written in
    // terms of w = 1 - t so that the far tail keeps full floating-point resolution.
    const double origin = lo_inf ? seg.hi : seg.lo;
    const double dir = lo_inf ? -1.0 : 1.0;
    const double scale = seg.scale > 0.0 ? seg.scale : 1.0;
    const bool subst = cfg.endpoint_handling == EndpointHandling::AlgebraicSubstitution;
    const double q = subst && seg.tail_power > 1.0 ? seg.tail_power : 1.0;
    double v_end = 0.0;
    if (std::isfinite(seg.cut)) {
        const double span = std::abs(seg.cut - origin);
        v_end = std::pow(scale / (span + scale), 1.0 / q);
    }
    const Integrand g = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double w = q == 1.0 ? v : std::pow(v, q);
        if (w <= 0.0) return 0.0;
        const double x = origin + dir * scale * ((1.0 - w) / w);
        if (std::isinf(x)) return 0.0;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        // dx/dv = scale q w / (v w^2); dividing fx by w first keeps the product finite
        // when w^2 underflows.
        return q == 1.0 ? (fx / w) * (scale / w) : (fx / w) * (scale * q / v);
    };
    return dispatch(g, v_end, 1.0, cfg, rule);
}

}  // namespace fracent::quad
