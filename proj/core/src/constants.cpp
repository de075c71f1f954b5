#include "halfspace/constants.hpp"

#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <tuple>

#include "halfspace/errors.hpp"

namespace halfspace {

double TwoPath::rel_diff() const {
    const double den = std::max(std::abs(closed_form), std::abs(quadrature));
    return den == 0.0 ? 0.0 : std::abs(quadrature - closed_form) / den;
}

namespace {

void check_dim(int N) {
    if (N < 3 || N > kMaxDim) {
        throw DomainError("dimension N must be in [3, 12], got " + std::to_string(N));
    }
}

}  // namespace

BubbleConstants bubble_constants(int N, const QuadratureSpec& spec, double eps) {
    check_dim(N);
    const TestFunction U(Family::InteriorBubble, N, eps, 1.0);
    const Exponents& e = U.exps();
    BubbleConstants c;
    c.N = N;
    c.K1 = norm_grad(U, spec);
    c.K2 = norm_Lp_volume(U, e.two_star, spec);
    c.K3 = norm_Lp_boundary(U, e.two_lower, spec);
    c.A = c.K1 / 2.0 - c.K2 / e.two_star - c.K3 / e.two_lower;
    return c;
}

TraceConstants trace_constants(int N, const QuadratureSpec& spec, double eps) {
    check_dim(N);
    const TestFunction U(Family::TraceBubble, N, eps);
    const Exponents& e = U.exps();
    TraceConstants t;
    t.N = N;
    t.A_N = norm_grad(U, spec);
    t.B_N = std::pow(norm_Lp_boundary(U, e.two_lower, spec), 2.0 / e.two_lower);
    t.S0 = t.A_N / t.B_N;
    return t;
}

ExpansionCoefficients expansion_coefficients(int N, const QuadratureSpec& spec) {
    check_dim(N);
    if (N < 4) throw DomainError("expansion coefficients need N >= 4, got " + std::to_string(N));
    const Exponents e = Exponents::make(N);
    const double n = N;
    const double x0 = e.x_N0;
    const double k = e.k_N;
    const double omega = sphere_area(N - 1);

    ExpansionCoefficients c;
    c.N = N;
    c.b = std::sqrt((2.0 * n - 2.0) / (n - 2.0));
    c.Gamma0 = gamma_fn((n - 1.0) / 2.0);
    const double b = c.b;

    auto Du = [x0](double r, double y) { return 1.0 + r * r + (y + x0) * (y + x0); };
    auto Dh = [](double r, double y) { return r * r + (y + 1.0) * (y + 1.0); };

    // Boundary integrals exist from N = 4 on.
    c.C3 = integrate_boundary([&](double r) { return r * r * std::pow(1.0 + r * r + x0 * x0, -(n - 1.0)); }, N,
                              spec)
               .value;
    c.C3_closed = omega / (2.0 * std::pow(b, n - 3.0)) * beta_fn((n + 1.0) / 2.0, (n - 3.0) / 2.0);
    c.gamma_N = std::pow(k, e.two_lower) / (4.0 * (n - 2.0)) * *c.C3;

    c.D3 = integrate_boundary([&](double r) { return r * r * std::pow(r * r + 1.0, -(n - 1.0)); }, N, spec).value;
    c.gamma_hat_N = TwoPath{*c.D3 / (4.0 * (n - 2.0)),
                            omega / (8.0 * (n - 2.0)) * beta_fn((n + 1.0) / 2.0, (n - 3.0) / 2.0)};

    if (N < 5) return c;

    c.C1 = integrate_halfspace(
               [&](double r, double y) { return (r * r + y * (y + x0)) * std::pow(Du(r, y), -(n - 1.0)); }, N, spec)
               .value;
    c.C2 = integrate_halfspace([&](double r, double y) { return (r * r + y * y) * std::pow(Du(r, y), -n); }, N, spec)
               .value;
    c.C4 = integrate_halfspace([&](double r, double y) { return std::pow(Du(r, y), -(n - 2.0)); }, N, spec).value;
    c.C5 = integrate_halfspace([&](double r, double y) { return std::pow(Du(r, y), -(n - 1.0)); }, N, spec).value;
    c.C6 = integrate_halfspace(
               [&](double r, double y) { return x0 * (y + x0) * std::pow(Du(r, y), -(n - 1.0)); }, N, spec)
               .value;
    c.C6_closed = x0 * omega / (2.0 * (n - 3.0) * std::pow(b, n - 3.0)) *
                  beta_fn((n - 1.0) / 2.0, (n - 1.0) / 2.0);

    c.alpha_N = (n - 2.0) * k * k / 2.0 * *c.C1;
    c.beta_N = std::pow(k, e.two_star) / (2.0 * (n - 2.0)) * *c.C2;
    c.d_N = k * k * *c.C4;

    c.D1 = integrate_halfspace([&](double r, double y) { return r * r * std::pow(Dh(r, y), -(n - 1.0)); }, N, spec)
               .value;
    c.D2 = integrate_halfspace(
               [&](double r, double y) { return y * (y + 1.0) * std::pow(Dh(r, y), -(n - 1.0)); }, N, spec)
               .value;
    c.D4 = integrate_halfspace([&](double r, double y) { return std::pow(Dh(r, y), -(n - 2.0)); }, N, spec).value;

    const double Bp = beta_fn((n + 1.0) / 2.0, (n - 3.0) / 2.0);
    const double Bm = beta_fn((n - 1.0) / 2.0, (n - 1.0) / 2.0);
    const double B0 = beta_fn((n - 1.0) / 2.0, (n - 3.0) / 2.0);
    c.alpha_hat_N = TwoPath{(n - 2.0) / 2.0 * (*c.D1 + *c.D2),
                            omega * (n - 2.0) / (4.0 * (n - 4.0)) * (Bp + Bm / (n - 3.0))};
    c.d_hat_N = TwoPath{*c.D4, omega / (2.0 * (n - 4.0)) * B0};
    return c;
}

double xi_N(int N, const QuadratureSpec& spec) {
    if (N < 5) throw DomainError("xi_N needs N >= 5");
    const ExpansionCoefficients& c = cached_expansion_coefficients(N, spec);
    const TraceConstants& t = cached_trace_constants(N, spec);
    const Exponents e = Exponents::make(N);
    return 2.0 / e.two_lower * t.A_N * std::pow(t.B_N, -e.two_lower / 2.0) * c.gamma_hat_N->quadrature;
}

double theta_of_tau(int N, double tau, const QuadratureSpec& spec, double eps) {
    check_dim(N);
    if (!(tau >= 0.0)) throw DomainError("tau must be nonnegative");
    if (tau == 0.0) return 1.0;
    const TestFunction U(Family::InteriorBubble, N, eps, tau);
    const Exponents& e = U.exps();
    // ||U||_{p}^{p-2} = (int U^p)^{(p-2)/p}
    const double vol = std::pow(norm_Lp_volume(U, e.two_star, spec), (e.two_star - 2.0) / e.two_star);
    const double bdy = std::pow(norm_Lp_boundary(U, e.two_lower, spec), (e.two_lower - 2.0) / e.two_lower);
    return vol / (vol + tau * bdy);
}

namespace {

using Key = std::tuple<int, double, double, int>;

Key key_of(int N, const QuadratureSpec& s) { return {N, s.abs_tol, s.rel_tol, s.max_subdivisions}; }

template <class T, class F>
const T& memoize(std::map<Key, std::shared_future<T>>& table, std::mutex& m, const Key& key, F compute) {
    std::shared_future<T> fut;
    std::promise<T> prom;
    bool owner = false;
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = table.find(key);
        if (it == table.end()) {
            fut = prom.get_future().share();
            table.emplace(key, fut);
            owner = true;
        } else {
            fut = it->second;
        }
    }
    if (owner) {
        try {
            prom.set_value(compute());
        } catch (...) {
            // Drop the failed entry so a later call with a different budget
            // can retry; current waiters see the exception.
            prom.set_exception(std::current_exception());
            std::lock_guard<std::mutex> lock(m);
            table.erase(key);
        }
    }
    // The table keeps its own copy of the shared state, so the reference stays
    // valid after fut goes out of scope.
    return fut.get();
}

}  // namespace

const BubbleConstants& cached_bubble_constants(int N, const QuadratureSpec& spec) {
    static std::map<Key, std::shared_future<BubbleConstants>> table;
    static std::mutex m;
    return memoize(table, m, key_of(N, spec), [&] { return bubble_constants(N, spec); });
}

const TraceConstants& cached_trace_constants(int N, const QuadratureSpec& spec) {
    static std::map<Key, std::shared_future<TraceConstants>> table;
    static std::mutex m;
    return memoize(table, m, key_of(N, spec), [&] { return trace_constants(N, spec); });
}

const ExpansionCoefficients& cached_expansion_coefficients(int N, const QuadratureSpec& spec) {
    static std::map<Key, std::shared_future<ExpansionCoefficients>> table;
    static std::mutex m;
    return memoize(table, m, key_of(N, spec), [&] { return expansion_coefficients(N, spec); });
}

}  // namespace halfspace
