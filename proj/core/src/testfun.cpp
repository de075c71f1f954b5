#include "halfspace/testfun.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "halfspace/errors.hpp"

namespace halfspace {

Exponents Exponents::make(int N) {
    if (N < 3) throw DomainError("dimension N must be >= 3, got " + std::to_string(N));
    Exponents e;
    e.N = N;
    const double n = N;
    e.two_star = 2.0 * n / (n - 2.0);
    e.two_lower = 2.0 * (n - 1.0) / (n - 2.0);
    e.k_N = std::pow(std::sqrt(n * (n - 2.0)), (n - 2.0) / 2.0);
    e.x_N0 = std::sqrt(n / (n - 2.0));
    return e;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::InteriorBubble: return "bubble";
        case Family::TraceBubble: return "trace";
        case Family::U: return "u";
        case Family::V: return "v";
        case Family::UHat: return "uhat";
        case Family::VHat: return "vhat";
        case Family::Gaussian: return "gaussian";
        case Family::Custom: return "custom";
    }
    return "unknown";
}

Family parse_family(const std::string& s) {
    if (s == "u") return Family::U;
    if (s == "v") return Family::V;
    if (s == "uhat") return Family::UHat;
    if (s == "vhat") return Family::VHat;
    if (s == "bubble") return Family::InteriorBubble;
    if (s == "trace") return Family::TraceBubble;
    if (s == "gaussian") return Family::Gaussian;
    throw DomainError("unknown family '" + s + "' (expected u, v, uhat, vhat, bubble, trace, gaussian)");
}

namespace {

bool is_weighted(Family f) {
    return f == Family::U || f == Family::V || f == Family::UHat || f == Family::VHat;
}

// f(t) = exp(-1/t) for t > 0.
double bump_f(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

const double kPsiScale = 8.0 * std::sqrt(5.0);

}  // namespace

double weight_K(double r, double xn) { return std::exp(0.25 * (r * r + xn * xn)); }

Radial cutoff_phi(double rho) {
    // phi(rho) = s(2 - rho), s(t) = f(t) / (f(t) + f(1 - t)).
    const double t = 2.0 - rho;
    if (t >= 1.0) return {1.0, 0.0};
    if (t <= 0.0) return {0.0, 0.0};
    const double a = bump_f(t), b = bump_f(1.0 - t);
    const double den = a + b;
    const double da = a / (t * t);
    const double db = b / ((1.0 - t) * (1.0 - t));
    // s'(t) = (f'(t) f(1-t) + f(t) f'(1-t)) / den^2; dphi/drho = -s'(2 - rho).
    const double ds = (da * b + a * db) / (den * den);
    return {a / den, -ds};
}

Radial envelope_psi(double rho) {
    const double v = std::exp(-rho * rho / kPsiScale);
    return {v, -2.0 * rho * v / kPsiScale};
}

TestFunction::TestFunction(Family family, int N, double eps, double tau)
    : family_(family), eps_(eps), tau_(tau), exps_(Exponents::make(N)) {
    if (N > kMaxDim) throw DomainError("dimension N must be <= 12, got " + std::to_string(N));
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive");
    if (is_weighted(family) && eps > 0.5) {
        throw DomainError("weighted test functions need eps in (0, 0.5], got " + std::to_string(eps));
    }
    if (!(tau >= 0.0)) throw DomainError("tau must be nonnegative");
    if (family == Family::Custom) throw DomainError("use TestFunction::custom for custom profiles");
}

TestFunction TestFunction::custom(int N, std::vector<PolyTerm> terms) {
    if (N > kMaxDim) throw DomainError("dimension N must be <= 12");
    TestFunction t;
    t.family_ = Family::Custom;
    t.exps_ = Exponents::make(N);
    for (const PolyTerm& p : terms) {
        if (p.i < 0 || p.j < 0) throw DomainError("custom profile powers must be nonnegative");
    }
    t.terms_ = std::move(terms);
    return t;
}

double TestFunction::support_radius() const {
    return (family_ == Family::U || family_ == Family::UHat) ? 2.0 : kInf;
}

namespace {

// Bare bubble value and gradient.
Eval bubble(const TestFunction& tf, double r, double xn) {
    const Exponents& e = tf.exps();
    const double h = 0.5 * (e.N - 2);
    const double eps = tf.eps();
    double shift, D, amp;
    if (tf.family() == Family::TraceBubble || tf.family() == Family::UHat || tf.family() == Family::VHat) {
        shift = xn + eps;
        D = r * r + shift * shift;
        amp = 1.0;
    } else {
        const double tau = (tf.family() == Family::InteriorBubble) ? tf.tau() : 1.0;
        shift = xn + eps * tau * e.x_N0;
        D = eps * eps + r * r + shift * shift;
        amp = e.k_N;
    }
    const double v = amp * std::pow(eps / D, h);
    const double c = -(e.N - 2) * v / D;
    return {v, c * r, c * shift};
}

}  // namespace

// The weighted families and the Gaussian-type profiles are written as
// u = K^{-1/2} w; then K^{1/2} grad u = grad w - (x/4) w. Keeping w separate
// lets the weighted norms avoid forming exp(|x|^2/4) * exp(-|x|^2/4).
static Eval eval_w(const TestFunction& tf, double r, double xn) {
    const double rho2 = r * r + xn * xn;
    const double rho = std::sqrt(rho2);
    switch (tf.family()) {
        case Family::U:
        case Family::UHat:
        case Family::V:
        case Family::VHat: {
            Radial c{};
            double c_over_rho = 0.0;  // (dc/drho) / rho, finite at the origin
            if (tf.family() == Family::U || tf.family() == Family::UHat) {
                c = cutoff_phi(rho);
                if (c.value == 0.0) return {};
                c_over_rho = (rho > 1.0) ? c.d_rho / rho : 0.0;
            } else {
                c = envelope_psi(rho);
                c_over_rho = -2.0 * c.value / kPsiScale;
            }
            const Eval b = bubble(tf, r, xn);
            return {c.value * b.value, c_over_rho * r * b.value + c.value * b.d_r,
                    c_over_rho * xn * b.value + c.value * b.d_xn};
        }
        case Family::Gaussian: {
            // w = exp(-|x|^2/8)
            const double g = std::exp(-rho2 / 8.0);
            return {g, -0.25 * r * g, -0.25 * xn * g};
        }
        case Family::Custom: {
            const double g = std::exp(-rho2 / 8.0);
            double p = 0.0, pr = 0.0, px = 0.0;
            for (const PolyTerm& t : tf.terms()) {
                const double rpow = (t.i == 0) ? 1.0 : std::pow(r, 2 * t.i);
                const double xpow = (t.j == 0) ? 1.0 : std::pow(xn, t.j);
                p += t.coef * rpow * xpow;
                if (t.i > 0) pr += t.coef * 2.0 * t.i * std::pow(r, 2 * t.i - 1) * xpow;
                if (t.j > 0) px += t.coef * rpow * t.j * std::pow(xn, t.j - 1);
            }
            return {g * p, g * (pr - 0.25 * r * p), g * (px - 0.25 * xn * p)};
        }
        default:
            return {};
    }
}

static bool has_w_form(Family f) { return is_weighted(f) || f == Family::Gaussian || f == Family::Custom; }

Eval TestFunction::eval(double r, double xn) const {
    if (!has_w_form(family_)) return bubble(*this, r, xn);
    const Eval w = eval_w(*this, r, xn);
    if (w.value == 0.0 && w.d_r == 0.0 && w.d_xn == 0.0) return {};
    const double k = std::exp(-(r * r + xn * xn) / 8.0);
    return {k * w.value, k * (w.d_r - 0.25 * r * w.value), k * (w.d_xn - 0.25 * xn * w.value)};
}

namespace {

// K^{1/2} u and K^{1/2} grad u.
Eval eval_half_weighted(const TestFunction& tf, double r, double xn) {
    if (!has_w_form(tf.family())) {
        const Eval b = bubble(tf, r, xn);
        const double k = std::exp((r * r + xn * xn) / 8.0);
        return {k * b.value, k * b.d_r, k * b.d_xn};
    }
    const Eval w = eval_w(tf, r, xn);
    return {w.value, w.d_r - 0.25 * r * w.value, w.d_xn - 0.25 * xn * w.value};
}

double weighted_power(double half_weighted_value, double p, double rho2) {
    // K |u|^p = K^{1 - p/2} |K^{1/2} u|^p
    const double a = std::abs(half_weighted_value);
    if (a == 0.0) return 0.0;
    return std::exp((1.0 - 0.5 * p) * 0.25 * rho2 + p * std::log(a));
}

void check_p(double p) {
    if (!(p >= 1.0)) throw DomainError("norm exponent p must be >= 1");
}

}  // namespace

double norm_grad_K(const TestFunction& u, const QuadratureSpec& spec) {
    Fn2 h = [&u](double r, double xn) {
        const Eval e = eval_half_weighted(u, r, xn);
        return e.d_r * e.d_r + e.d_xn * e.d_xn;
    };
    return integrate_halfspace(h, u.dim(), spec, u.support_radius()).value;
}

double norm_Lp_K_volume(const TestFunction& u, double p, const QuadratureSpec& spec) {
    check_p(p);
    Fn2 h = [&u, p](double r, double xn) {
        return weighted_power(eval_half_weighted(u, r, xn).value, p, r * r + xn * xn);
    };
    return integrate_halfspace(h, u.dim(), spec, u.support_radius()).value;
}

double norm_Lp_K_boundary(const TestFunction& u, double p, const QuadratureSpec& spec) {
    check_p(p);
    Fn1 h = [&u, p](double r) { return weighted_power(eval_half_weighted(u, r, 0.0).value, p, r * r); };
    return integrate_boundary(h, u.dim(), spec, u.support_radius()).value;
}

double norm_grad(const TestFunction& u, const QuadratureSpec& spec) {
    Fn2 h = [&u](double r, double xn) {
        const Eval e = u.eval(r, xn);
        return e.d_r * e.d_r + e.d_xn * e.d_xn;
    };
    return integrate_halfspace(h, u.dim(), spec, u.support_radius()).value;
}

double norm_Lp_volume(const TestFunction& u, double p, const QuadratureSpec& spec) {
    check_p(p);
    Fn2 h = [&u, p](double r, double xn) { return std::pow(std::abs(u.value(r, xn)), p); };
    return integrate_halfspace(h, u.dim(), spec, u.support_radius()).value;
}

double norm_Lp_boundary(const TestFunction& u, double p, const QuadratureSpec& spec) {
    check_p(p);
    Fn1 h = [&u, p](double r) { return std::pow(std::abs(u.value(r, 0.0)), p); };
    return integrate_boundary(h, u.dim(), spec, u.support_radius()).value;
}

}  // namespace halfspace
