#include "halfspace/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "halfspace/constants.hpp"
#include "halfspace/errors.hpp"
#include "halfspace/parallel.hpp"

namespace halfspace {

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::E: return "E";
        case Quantity::P: return "P";
        case Quantity::V: return "V";
        case Quantity::T: return "T";
        case Quantity::Q: return "Q";
    }
    return "?";
}

Quantity parse_quantity(const std::string& s) {
    if (s == "E") return Quantity::E;
    if (s == "P") return Quantity::P;
    if (s == "V") return Quantity::V;
    if (s == "T") return Quantity::T;
    if (s == "Q") return Quantity::Q;
    throw DomainError("unknown quantity '" + s + "' (expected E, P, V, T or Q)");
}

std::string model_name(ModelKind k) {
    switch (k) {
        case ModelKind::C0PlusC2: return "c0+c2*eps^2";
        case ModelKind::C0PlusClog: return "c0+c*eps^2|ln eps|+c'*eps^2";
        case ModelKind::PurePower: return "c*eps^theta";
        case ModelKind::PowerLog: return "c0+c*eps|ln eps|+c'*eps";
    }
    return "?";
}

namespace {

bool is_weighted(Family f) {
    return f == Family::U || f == Family::V || f == Family::UHat || f == Family::VHat;
}

void check_family_dim(Family family, int N) {
    if (!is_weighted(family)) throw DomainError("asymptotics are defined for the u, v, uhat, vhat families");
    if ((family == Family::V || family == Family::VHat) && N != 3) {
        throw DomainError(family_name(family) + " is only used for N = 3");
    }
    if (N < 3 || N > kMaxDim) throw DomainError("dimension N must be in [3, 12]");
}

double measure(Quantity quantity, const TestFunction& u, double q, const QuadratureSpec& spec) {
    const Exponents& e = u.exps();
    switch (quantity) {
        case Quantity::E: return norm_grad_K(u, spec);
        case Quantity::P: return norm_Lp_K_volume(u, 2.0, spec);
        case Quantity::V: return norm_Lp_K_volume(u, e.two_star, spec);
        case Quantity::T: return norm_Lp_K_boundary(u, e.two_lower, spec);
        case Quantity::Q: return norm_Lp_K_boundary(u, q, spec);
    }
    return 0.0;
}

bool has_log_term(ModelKind k) { return k == ModelKind::C0PlusClog || k == ModelKind::PowerLog; }

}  // namespace

std::vector<Sample> sweep(Quantity quantity, Family family, int N, double q, std::vector<double> eps_grid,
                          const QuadratureSpec& spec, int threads) {
    check_family_dim(family, N);
    spec.validate();
    if (eps_grid.empty()) throw DomainError("eps grid is empty");
    for (double e : eps_grid) {
        if (!(e > 0.0 && e <= 0.2)) throw DomainError("eps values must lie in (0, 0.2]");
    }
    if (quantity == Quantity::Q) {
        const double tl = Exponents::make(N).two_lower;
        if (!(q >= 2.0 && q < tl)) throw DomainError("q must lie in [2, 2_*)");
    }
    std::sort(eps_grid.begin(), eps_grid.end(), std::greater<double>());
    eps_grid.erase(std::unique(eps_grid.begin(), eps_grid.end()), eps_grid.end());
    return parallel_map<Sample>(eps_grid.size(), threads, [&](std::size_t i) {
        const TestFunction u(family, N, eps_grid[i]);
        return Sample{eps_grid[i], measure(quantity, u, q, spec)};
    });
}

ExpansionFit fit(const std::vector<Sample>& data_in, const ExpansionModel& model) {
    std::vector<Sample> data = data_in;
    if (data.size() < 3) throw DomainError("a fit needs at least 3 data points");
    std::sort(data.begin(), data.end(), [](const Sample& a, const Sample& b) { return a.eps > b.eps; });
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double e = data[i].eps;
        if (!(e > 0.0) || !std::isfinite(data[i].value)) throw DomainError("fit data must have eps > 0 and finite values");
        if (i > 0 && !(e < data[i - 1].eps)) throw DomainError("eps grid must be strictly decreasing (duplicate eps)");
        if (has_log_term(model.kind) && e > 0.2) throw DomainError("log models require every eps <= 0.2");
    }

    // Basis columns; the first one carries the reported coefficient.
    std::vector<std::function<double(double)>> cols;
    std::string basis;
    const double c0 = model.c0.value_or(0.0);
    auto target = [&](const Sample& s) { return s.value - c0; };
    std::function<double(double)> lead_mag;
    switch (model.kind) {
        case ModelKind::C0PlusC2:
            cols.push_back([](double e) { return e * e; });
            basis = "eps^2";
            lead_mag = cols[0];
            break;
        case ModelKind::C0PlusClog:
            cols.push_back([](double e) { return e * e * std::abs(std::log(e)); });
            cols.push_back([](double e) { return e * e; });
            basis = "eps^2|ln eps|, eps^2";
            lead_mag = cols[0];
            break;
        case ModelKind::PowerLog:
            cols.push_back([](double e) { return e * std::abs(std::log(e)); });
            cols.push_back([](double e) { return e; });
            basis = "eps|ln eps|, eps";
            lead_mag = cols[0];
            break;
        case ModelKind::PurePower:
            cols.push_back([](double e) { return std::log(e); });
            cols.push_back([](double) { return 1.0; });
            basis = "ln eps, 1 (on ln value)";
            lead_mag = [](double) { return 1.0; };
            break;
    }
    if (model.kind == ModelKind::PurePower) {
        if (model.c0 || model.companion_power) throw DomainError("pure power fits take no c0 or companion term");
        for (const Sample& s : data) {
            if (!(s.value > 0.0)) throw DomainError("pure power fits need positive values");
        }
    } else {
        if (model.companion_power) {
            const double p = *model.companion_power;
            cols.push_back([p](double e) { return std::pow(e, p); });
            char buf[32];
            std::snprintf(buf, sizeof buf, ", eps^%g", p);
            basis += buf;
        }
        if (!model.c0) {
            cols.push_back([](double) { return 1.0; });
            basis += ", 1";
        }
    }

    const Eigen::Index m = static_cast<Eigen::Index>(data.size());
    const Eigen::Index n = static_cast<Eigen::Index>(cols.size());
    if (m < n) throw SingularFit("fit has more basis functions than data points");
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Sample& s = data[static_cast<std::size_t>(i)];
        // Rows are scaled by the leading basis magnitude so every eps carries
        // comparable weight in the least-squares problem.
        const double w = 1.0 / lead_mag(s.eps);
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = w * cols[static_cast<std::size_t>(j)](s.eps);
        b(i) = w * (model.kind == ModelKind::PurePower ? std::log(s.value) : target(s));
    }
    // Column equilibration keeps the rank test meaningful across mixed powers.
    Eigen::VectorXd cs(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        cs(j) = A.col(j).norm();
        if (!(cs(j) > 0.0)) throw SingularFit("fit basis column vanishes on the grid");
        A.col(j) /= cs(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (!(sv(n - 1) > 1e-12 * sv(0))) throw SingularFit("fit basis is numerically rank-deficient on this eps grid");
    Eigen::VectorXd x = svd.solve(b);
    const double res = (A * x - b).norm();
    x = x.cwiseQuotient(cs);

    ExpansionFit f;
    f.fitted = x(0);
    f.residual_norm = res;
    f.basis = basis;
    for (const Sample& s : data) f.eps_used.push_back(s.eps);
    for (Eigen::Index j = 0; j < n; ++j) f.coefficients.push_back(x(j));
    f.predicted = model.kind == ModelKind::PurePower ? (model.theta ? model.theta : model.predicted) : model.predicted;
    if (f.predicted) {
        if (*f.predicted == 0.0) throw DegenerateDenominator("predicted coefficient is zero");
        f.rel_dev = std::abs(f.fitted - *f.predicted) / std::abs(*f.predicted);
    }
    return f;
}

ExpansionPlan expansion_plan(Family family, Quantity quantity, int N, double q, const QuadratureSpec& spec) {
    check_family_dim(family, N);
    const Exponents e = Exponents::make(N);
    ExpansionPlan plan;
    plan.default_grid = kDefaultEpsGrid;
    ExpansionModel& m = plan.model;
    // The first omitted order: eps^3 for N = 5 (odd tails of the bubble
    // integrals), eps^4 or smaller otherwise.
    const double companion = N <= 5 ? 3.0 : 4.0;

    if (quantity == Quantity::Q) {
        if (!(q >= 2.0 && q < e.two_lower)) throw DomainError("q must lie in [2, 2_*)");
        if (N == 3 && q == 2.0) {
            m.kind = ModelKind::PowerLog;
            m.c0 = 0.0;
            plan.target = "none (eps|ln eps| and eps orders carry no explicit coefficient)";
            return plan;
        }
        m.kind = ModelKind::PurePower;
        m.theta = N - 1.0 - (N - 2.0) * q / 2.0;
        plan.target = "theta_N = N-1-(N-2)q/2";
        plan.tolerance = 0.03;
        plan.default_grid = kSlopeEpsGrid;
        return plan;
    }

    if (N == 3) {
        // Only the order of the corrections is known here; fits are reported
        // without a prediction.
        const BubbleConstants& bc = cached_bubble_constants(3, spec);
        m.kind = ModelKind::PowerLog;
        const bool hat = family == Family::UHat || family == Family::VHat;
        const TraceConstants* tc = hat ? &cached_trace_constants(3, spec) : nullptr;
        switch (quantity) {
            case Quantity::E: m.c0 = hat ? tc->A_N : bc.K1; break;
            case Quantity::P: m.c0 = 0.0; break;
            case Quantity::V: m.c0 = hat ? std::optional<double>{} : std::optional<double>{bc.K2}; break;
            case Quantity::T:
                m.kind = ModelKind::C0PlusClog;
                m.c0 = hat ? std::pow(tc->B_N, e.two_lower / 2.0) : bc.K3;
                break;
            default: break;
        }
        plan.target = "none (only the order of the correction is known for N = 3)";
        return plan;
    }

    const bool hat = family == Family::UHat;
    if (!hat) {
        const BubbleConstants& bc = cached_bubble_constants(N, spec);
        const ExpansionCoefficients& ec = cached_expansion_coefficients(N, spec);
        if (N == 4 && (quantity == Quantity::E || quantity == Quantity::P)) {
            m.kind = ModelKind::C0PlusClog;
            m.c0 = quantity == Quantity::E ? bc.K1 : 0.0;
            m.companion_power = 3.0;
            m.predicted = e.k_N * e.k_N * sphere_area(4) / 2.0;
            plan.target = "k_4^2 omega_4 / 2";
            plan.tolerance = 0.10;
            return plan;
        }
        m.kind = ModelKind::C0PlusC2;
        m.companion_power = companion;
        plan.tolerance = 0.05;
        switch (quantity) {
            case Quantity::E:
                m.c0 = bc.K1;
                m.predicted = ec.alpha_N;
                plan.target = "alpha_N";
                break;
            case Quantity::P:
                m.c0 = 0.0;
                m.predicted = ec.d_N;
                plan.target = "d_N";
                break;
            case Quantity::V:
                m.c0 = bc.K2;
                if (ec.beta_N) m.predicted = -*ec.beta_N;
                plan.target = "-beta_N";
                break;
            case Quantity::T:
                m.c0 = bc.K3;
                if (ec.gamma_N) m.predicted = -*ec.gamma_N;
                plan.target = "-gamma_N";
                break;
            default: break;
        }
        if (!m.predicted) {
            plan.target = "none";
            plan.tolerance = 0.0;
        }
        return plan;
    }

    const TraceConstants& tc = cached_trace_constants(N, spec);
    const ExpansionCoefficients& ec = cached_expansion_coefficients(N, spec);
    if (N == 4 && (quantity == Quantity::E || quantity == Quantity::P)) {
        m.kind = ModelKind::C0PlusClog;
        m.c0 = quantity == Quantity::E ? tc.A_N : 0.0;
        m.companion_power = 3.0;
        m.predicted = sphere_area(4) / 2.0;
        plan.target = "omega_4 / 2";
        plan.tolerance = 0.10;
        return plan;
    }
    m.kind = ModelKind::C0PlusC2;
    m.companion_power = companion;
    plan.tolerance = 0.05;
    switch (quantity) {
        case Quantity::E:
            m.c0 = tc.A_N;
            if (ec.alpha_hat_N) m.predicted = ec.alpha_hat_N->closed_form;
            plan.target = "alpha_hat_N";
            break;
        case Quantity::P:
            m.c0 = 0.0;
            if (ec.d_hat_N) m.predicted = ec.d_hat_N->closed_form;
            plan.target = "d_hat_N";
            break;
        case Quantity::T:
            // Expansion of the 2_*-th power of the boundary norm.
            m.c0 = std::pow(tc.B_N, e.two_lower / 2.0);
            if (ec.gamma_hat_N) m.predicted = -ec.gamma_hat_N->closed_form;
            plan.target = "-gamma_hat_N";
            break;
        default: break;  // V: limit and coefficient not given; both are fitted.
    }
    if (!m.predicted) {
        plan.target = "none";
        plan.tolerance = 0.0;
    }
    return plan;
}

AsymptoticsReport run_asymptotics(Family family, Quantity quantity, int N, double q,
                                  std::optional<std::vector<double>> eps_grid, const QuadratureSpec& spec,
                                  int threads) {
    AsymptoticsReport rep;
    rep.family = family;
    rep.quantity = quantity;
    rep.N = N;
    rep.q = q;
    rep.plan = expansion_plan(family, quantity, N, q, spec);
    rep.samples = sweep(quantity, family, N, q, eps_grid.value_or(rep.plan.default_grid), spec, threads);
    rep.fit = fit(rep.samples, rep.plan.model);
    rep.passes = !rep.fit.rel_dev || *rep.fit.rel_dev <= rep.plan.tolerance;
    return rep;
}

bool VFamilyBounds::all_ok() const {
    if (rows.empty()) return false;
    for (const VFamilyBoundRow& r : rows) {
        if (!r.energy_ok || !r.mass_ok) return false;
    }
    return d1 > 0.0 && d2 > 0.0;
}

VFamilyBounds verify_v_family_bounds(std::vector<double> eps_list, const QuadratureSpec& spec, int threads) {
    spec.validate();
    if (eps_list.empty()) throw DomainError("eps list is empty");
    for (double e : eps_list) {
        if (!(e > 0.0 && e <= 0.2)) throw DomainError("eps values must lie in (0, 0.2]");
    }
    std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
    eps_list.erase(std::unique(eps_list.begin(), eps_list.end()), eps_list.end());

    VFamilyBounds out;
    const double pi = std::numbers::pi;
    const double sqrt3 = std::sqrt(3.0), sqrt5 = std::sqrt(5.0);
    out.J = integrate_halfspace(
                [](double r, double xn) {
                    const double rho2 = r * r + xn * xn;
                    const double psi = envelope_psi(std::sqrt(rho2)).value;
                    return psi * psi / rho2;
                },
                3, spec)
                .value;
    out.J_closed = pi * std::sqrt(4.0 * sqrt5 * pi);
    out.K1 = cached_bubble_constants(3, spec).K1;

    // d1, d2 come from a least-squares fit of the L^2_K deficit
    // sqrt3 eps J - |v_eps|^2 on the default grid, in the scaled form
    // deficit / eps^2 = d1 |ln eps| + d2.
    const std::vector<Sample> mass = sweep(Quantity::P, Family::V, 3, 2.0, kDefaultEpsGrid, spec, threads);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(mass.size()), 2);
    Eigen::VectorXd b(static_cast<Eigen::Index>(mass.size()));
    for (std::size_t i = 0; i < mass.size(); ++i) {
        const double e = mass[i].eps;
        const auto k = static_cast<Eigen::Index>(i);
        A(k, 0) = std::abs(std::log(e));
        A(k, 1) = 1.0;
        b(k) = (sqrt3 * e * out.J - mass[i].value) / (e * e);
    }
    const Eigen::Vector2d d = A.colPivHouseholderQr().solve(b);
    out.d1 = d(0);
    out.d2 = d(1);

    const double upper_coef = (3.0 + sqrt5) * sqrt3 / 4.0;
    out.rows = parallel_map<VFamilyBoundRow>(eps_list.size(), threads, [&](std::size_t i) {
        const double e = eps_list[i];
        const TestFunction v(Family::V, 3, e);
        VFamilyBoundRow row;
        row.eps = e;
        row.energy = norm_grad_K(v, spec);
        row.energy_bound = out.K1 + upper_coef * e * out.J;
        row.energy_ok = row.energy < row.energy_bound;
        row.mass = norm_Lp_K_volume(v, 2.0, spec);
        row.mass_bound = sqrt3 * e * out.J - out.d1 * e * e * std::abs(std::log(e)) - out.d2 * e * e;
        row.mass_ok = row.mass > row.mass_bound;
        return row;
    });
    return out;
}

}  // namespace halfspace
