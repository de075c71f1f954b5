#include "halfspace/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "halfspace/errors.hpp"

namespace halfspace {

double rayleigh_volume(const TestFunction& u, const QuadratureSpec& spec) {
    const double den = norm_Lp_K_volume(u, 2.0, spec);
    if (!(den > 0.0) || !std::isfinite(den)) throw DegenerateDenominator("int K u^2 vanishes or is not finite");
    return norm_grad_K(u, spec) / den;
}

double rayleigh_boundary(const TestFunction& u, const QuadratureSpec& spec) {
    const double den = norm_Lp_K_boundary(u, 2.0, spec);
    if (!(den > 0.0) || !std::isfinite(den)) {
        throw DegenerateDenominator("boundary int K u^2 vanishes or is not finite");
    }
    return norm_grad_K(u, spec) / den;
}

RitzBasis RitzBasis::boundary_chain(int N, int size) {
    if (size < 1) throw DomainError("basis size must be >= 1");
    RitzBasis b;
    b.N = N;
    for (int j = 0; j < size; ++j) b.elements.push_back({1.0, 0, j});
    return b;
}

RitzBasis RitzBasis::full(int N, int degree) {
    if (degree < 0) throw DomainError("basis degree must be >= 0");
    RitzBasis b;
    b.N = N;
    for (int m = 0; m <= degree; ++m) {
        for (int i = 0; i <= m; ++i) b.elements.push_back({1.0, i, m - i});
    }
    return b;
}

namespace {

// Polynomial in (r, x_N) keyed by (power of r, power of x_N).
using Poly = std::map<std::pair<int, int>, double>;

// int_{R^N_+} e^{-|x|^2/4} r^a x_N^b dx. Every factor is a Gamma function:
// int_0^inf t^b e^{-t^2/4} dt = 2^b Gamma((b+1)/2).
double half_moment(int a, int b, int N) {
    return sphere_area(N - 1) * std::exp((a + N - 2 + b) * std::log(2.0) + log_gamma_fn(0.5 * (a + N - 1)) +
                                         log_gamma_fn(0.5 * (b + 1)));
}

double boundary_moment(int a, int N) {
    return sphere_area(N - 1) * std::exp((a + N - 2) * std::log(2.0) + log_gamma_fn(0.5 * (a + N - 1)));
}

// K^{1/2} grad u = e^{-|x|^2/8} (grad p - x p / 2) for u = e^{-|x|^2/4} p,
// split into its r and x_N components.
std::pair<Poly, Poly> weighted_gradient(const PolyTerm& t) {
    Poly rc, xc;
    if (t.i > 0) rc[{2 * t.i - 1, t.j}] += 2.0 * t.i * t.coef;
    rc[{2 * t.i + 1, t.j}] += -0.5 * t.coef;
    if (t.j > 0) xc[{2 * t.i, t.j - 1}] += t.j * t.coef;
    xc[{2 * t.i, t.j + 1}] += -0.5 * t.coef;
    return {rc, xc};
}

double pair_integral(const Poly& p, const Poly& q, int N) {
    double s = 0.0;
    for (const auto& [kp, cp] : p) {
        for (const auto& [kq, cq] : q) s += cp * cq * half_moment(kp.first + kq.first, kp.second + kq.second, N);
    }
    return s;
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return out;
}

struct RitzSolve {
    double value;
    double condition;
};

// Smallest mu with energy x = mu boundary x. The boundary Gram is only
// semidefinite (x_N^j vanishes on the boundary for j > 0), so the problem is
// posed as the largest eigenvalue of L^{-1} B L^{-T} with energy = L L^T.
RitzSolve solve_boundary_ritz(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    const Eigen::VectorXd d = A.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd As = d.asDiagonal() * A * d.asDiagonal();
    const Eigen::MatrixXd Bs = d.asDiagonal() * B * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(As, Eigen::EigenvaluesOnly);
    const double emin = ea.eigenvalues().minCoeff(), emax = ea.eigenvalues().maxCoeff();
    const double cond = emin > 0.0 ? emax / emin : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) {
        throw IllConditionedGram("energy Gram condition number " + std::to_string(cond) +
                                 " exceeds 1e12; reduce the basis size");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(As);
    if (llt.info() != Eigen::Success) throw IllConditionedGram("energy Gram is not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd C = L.triangularView<Eigen::Lower>().solve(Bs);
    C = L.triangularView<Eigen::Lower>().solve(C.transpose()).transpose();
    C = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(C, Eigen::EigenvaluesOnly);
    const double top = eb.eigenvalues().maxCoeff();
    if (!(top > 0.0)) throw DegenerateDenominator("basis has no boundary trace");
    return {1.0 / top, cond};
}

}  // namespace

RitzGram ritz_gram(const RitzBasis& basis) {
    const int N = basis.N;
    if (N < 3 || N > kMaxDim) throw DomainError("dimension N must be in [3, 12]");
    const std::size_t n = basis.elements.size();
    if (n == 0) throw DomainError("empty Ritz basis");
    RitzGram g;
    g.energy.assign(n, std::vector<double>(n, 0.0));
    g.volume = g.energy;
    g.boundary = g.energy;
    std::vector<std::pair<Poly, Poly>> grads;
    for (const PolyTerm& t : basis.elements) {
        if (t.i < 0 || t.j < 0) throw DomainError("Ritz powers must be nonnegative");
        grads.push_back(weighted_gradient(t));
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k; l < n; ++l) {
            const PolyTerm& a = basis.elements[k];
            const PolyTerm& b = basis.elements[l];
            const double e = pair_integral(grads[k].first, grads[l].first, N) +
                             pair_integral(grads[k].second, grads[l].second, N);
            const double v = a.coef * b.coef * half_moment(2 * (a.i + b.i), a.j + b.j, N);
            const double s = (a.j == 0 && b.j == 0) ? a.coef * b.coef * boundary_moment(2 * (a.i + b.i), N) : 0.0;
            g.energy[k][l] = g.energy[l][k] = e;
            g.volume[k][l] = g.volume[l][k] = v;
            g.boundary[k][l] = g.boundary[l][k] = s;
        }
    }
    return g;
}

double ritz_boundary_value(const RitzBasis& basis) {
    const RitzGram g = ritz_gram(basis);
    return solve_boundary_ritz(to_eigen(g.energy), to_eigen(g.boundary)).value;
}

EigenEstimate estimate_mu1(int N, int max_basis_size, const QuadratureSpec& spec) {
    spec.validate();
    if (max_basis_size < 1) throw DomainError("max basis size must be >= 1");
    const RitzGram g = ritz_gram(RitzBasis::boundary_chain(N, max_basis_size));
    const Eigen::MatrixXd A = to_eigen(g.energy), B = to_eigen(g.boundary);
    EigenEstimate est;
    for (int m = 1; m <= max_basis_size; ++m) {
        const RitzSolve s = solve_boundary_ritz(A.topLeftCorner(m, m), B.topLeftCorner(m, m));
        // Nested subspaces make the exact values nonincreasing; the clamp
        // only removes last-digit rounding.
        const double v = est.history.empty() ? s.value : std::min(s.value, est.history.back().second);
        est.history.emplace_back(m, v);
        est.gram_condition = s.condition;
    }
    est.value = est.history.back().second;
    est.basis_size = max_basis_size;
    return est;
}

double mu1_separable(int N) {
    if (N < 2) throw DomainError("dimension must be >= 2");
    return std::exp(log_gamma_fn(0.5 * (N + 1)) - log_gamma_fn(0.5 * N));
}

HardyResult hardy_check(const TestFunction& u, const QuadratureSpec& spec) {
    const int N = u.dim();
    const double l2 = integrate_halfspace(
                          [&u](double r, double xn) {
                              const double v = u.value(r, xn);
                              return v * v;
                          },
                          N, spec, u.support_radius())
                          .value;
    HardyResult h;
    h.lhs = 0.25 * N * N * l2;
    h.rhs = integrate_halfspace(
                [&u](double r, double xn) {
                    const Eval e = u.eval(r, xn);
                    const double radial = r * e.d_r + xn * e.d_xn;
                    return radial * radial;
                },
                N, spec, u.support_radius())
                .value;
    h.holds = h.lhs <= h.rhs + spec.abs_tol + spec.rel_tol * std::abs(h.rhs);
    return h;
}

std::vector<TestFunction> random_ritz_combinations(int N, int count, int degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const RitzBasis basis = RitzBasis::full(N, degree);
    std::vector<TestFunction> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        std::vector<PolyTerm> terms = basis.elements;
        for (PolyTerm& t : terms) t.coef = coef(rng);
        out.push_back(TestFunction::custom(N, std::move(terms)));
    }
    return out;
}

}  // namespace halfspace
