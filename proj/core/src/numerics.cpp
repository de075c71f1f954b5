#include "halfspace/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "halfspace/errors.hpp"

namespace halfspace {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
        throw DomainError("quadrature spec needs abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
    }
}

namespace {

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double z) {
    // z is the shifted argument x - 1.
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
    return acc;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
    if (x < 0.5) {
        // Reflection keeps the Lanczos sum in its accurate range.
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    if (x == std::floor(x) && x <= 30.0) {
        double f = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
        return f;
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma_fn: argument must be positive");
    if (x < 0.5) return std::log(gamma_fn(x));
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_fn: arguments must be positive");
    if (a + b < 100.0) return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
    return std::exp(log_gamma_fn(a) + log_gamma_fn(b) - log_gamma_fn(a + b));
}

double sphere_area(int m) {
    if (m < 1) throw DomainError("sphere_area: dimension must be >= 1");
    const double h = 0.5 * m;
    return 2.0 * std::pow(std::numbers::pi, h) / gamma_fn(h);
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
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
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn1& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double fc = f(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{}, fv2{};
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * kXgk[jtw];
        const double f1 = f(centr - absc), f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * kXgk[jtwm1];
        const double f1 = f(centr - absc), f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double result = resk * hlgth;
    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, result, err};
}

QuadratureResult adapt(const Fn1& f, double a, double b, const QuadratureSpec& spec) {
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    double total = first.value;
    double err = first.error;
    heap.push(first);
    int used = 1;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // Panels too narrow to split are retired; their error still counts.
    double retired_err = 0.0;
    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (err > tolerance()) {
        if (heap.empty()) break;
        if (used >= spec.max_subdivisions) {
            throw NonConvergence("adaptive quadrature: " + std::to_string(spec.max_subdivisions) +
                                 " subdivisions exhausted, error estimate " + std::to_string(err) +
                                 " above tolerance " + std::to_string(tolerance()));
        }
        Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 1e3 * eps * std::max(std::abs(p.a), std::abs(p.b))) {
            retired_err += p.error;
            continue;
        }
        Panel l = gk15(f, p.a, mid);
        Panel r = gk15(f, mid, p.b);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
        ++used;
    }
    if (err > tolerance() && retired_err > 0.0) {
        throw NonConvergence("adaptive quadrature: resolution limit reached with error estimate " +
                             std::to_string(err));
    }
    // Re-sum in panel order so the result does not depend on accumulated
    // rounding from the incremental updates.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double sum = 0.0, esum = retired_err;
    for (const Panel& p : panels) {
        sum += p.value;
        esum += p.error;
    }
    return {sum, esum, used};
}

}  // namespace

QuadratureResult integrate_1d(const Fn1& f, double lo, double hi, const QuadratureSpec& spec) {
    spec.validate();
    if (std::isnan(lo) || std::isnan(hi) || std::isinf(lo)) throw DomainError("integrate_1d: invalid limits");
    if (hi == lo) return {0.0, 0.0, 0};
    if (std::isinf(hi)) {
        if (hi < 0) throw DomainError("integrate_1d: upper limit -inf not supported");
        // r = lo + t/(1-t), dr = dt/(1-t)^2; the endpoint t = 1 is never sampled.
        Fn1 g = [&f, lo](double t) {
            const double s = 1.0 - t;
            const double v = f(lo + t / s);
            return v == 0.0 ? 0.0 : v / (s * s);
        };
        return adapt(g, 0.0, 1.0, spec);
    }
    if (hi < lo) {
        QuadratureResult r = adapt(f, hi, lo, spec);
        r.value = -r.value;
        return r;
    }
    return adapt(f, lo, hi, spec);
}

QuadratureResult integrate_halfspace(const Fn2& h, int N, const QuadratureSpec& spec, double support_radius) {
    spec.validate();
    if (N < 2) throw DomainError("integrate_halfspace: N must be >= 2");
    const double omega = sphere_area(N - 1);
    const int rp = N - 2;
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol / 10.0;
    inner.abs_tol = spec.abs_tol / 10.0;
    int inner_used = 0;
    Fn1 outer = [&](double xn) {
        double rmax = kInf;
        if (std::isfinite(support_radius)) {
            const double s = support_radius * support_radius - xn * xn;
            if (s <= 0.0) return 0.0;
            rmax = std::sqrt(s);
        }
        Fn1 f = [&h, xn, rp](double r) {
            const double v = h(r, xn);
            return v == 0.0 ? 0.0 : v * std::pow(r, rp);
        };
        QuadratureResult ir = integrate_1d(f, 0.0, rmax, inner);
        inner_used = std::max(inner_used, ir.subdivisions_used);
        return ir.value;
    };
    QuadratureResult res = integrate_1d(outer, 0.0, support_radius, spec);
    res.value *= omega;
    res.error_estimate *= omega;
    res.subdivisions_used = std::max(res.subdivisions_used, inner_used);
    return res;
}

QuadratureResult integrate_boundary(const Fn1& h, int N, const QuadratureSpec& spec, double support_radius) {
    spec.validate();
    if (N < 2) throw DomainError("integrate_boundary: N must be >= 2");
    const double omega = sphere_area(N - 1);
    const int rp = N - 2;
    Fn1 f = [&h, rp](double r) {
        const double v = h(r);
        return v == 0.0 ? 0.0 : v * std::pow(r, rp);
    };
    QuadratureResult res = integrate_1d(f, 0.0, support_radius, spec);
    res.value *= omega;
    res.error_estimate *= omega;
    return res;
}

}  // namespace halfspace
