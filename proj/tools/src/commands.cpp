#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "halfspace/acceptance.hpp"
#include "halfspace/asymptotics.hpp"
#include "halfspace/constants.hpp"
#include "halfspace/errors.hpp"
#include "halfspace/fiber.hpp"
#include "halfspace/region.hpp"
#include "halfspace/spectral.hpp"
#include "halfspace/thresholds.hpp"
#include "table.hpp"

namespace halfspace::cli {

QuadratureSpec Globals::spec() const {
    QuadratureSpec s;
    s.abs_tol = tol_abs;
    s.rel_tol = tol_rel;
    s.validate();
    return s;
}

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 2;

void emit(const Table& t, const Globals& g, std::ostream& os) {
    if (g.format == "json") t.write_json(os);
    else t.write_csv(os);
}

std::string pass_text(bool ok) { return ok ? "pass" : "fail"; }

Cell opt(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

}  // namespace

int cmd_constants(int N, const QuadratureSpec& spec, const Globals& g, std::ostream& os) {
    if (N < 3 || N > 12) throw DomainError("dimension N must be in [3, 12]");
    Table t({"quantity", "value", "quadrature", "closed_form", "rel_diff", "check"});
    bool all = true;
    auto value = [&](const std::string& name, double v) { t.add({{"quantity", name}, {"value", v}}); };
    auto compare = [&](const std::string& name, double quad, double closed, double tol) {
        const double d = std::abs(quad - closed) / std::abs(closed);
        const bool ok = d <= tol;
        all = all && ok;
        t.add({{"quantity", name},
               {"value", quad},
               {"quadrature", quad},
               {"closed_form", closed},
               {"rel_diff", d},
               {"check", pass_text(ok)}});
    };

    const BubbleConstants& b = cached_bubble_constants(N, spec);
    value("K1", b.K1);
    value("K2", b.K2);
    value("K3", b.K3);
    value("A", b.A);
    {
        const double d = std::abs(b.K1 - b.K2 - b.K3) / b.K1;
        const bool ok = d <= 1e-6;
        all = all && ok;
        t.add({{"quantity", std::string("K1-K2-K3")},
               {"value", b.K1 - b.K2 - b.K3},
               {"rel_diff", d},
               {"check", pass_text(ok)}});
    }
    const TraceConstants& tc = cached_trace_constants(N, spec);
    const Exponents e = Exponents::make(N);
    value("A_N", tc.A_N);
    value("B_N", tc.B_N);
    value("S0", tc.S0);
    compare("A_N/B_N^(2_*/2) vs N-2", tc.A_N / std::pow(tc.B_N, e.two_lower / 2.0), N - 2.0, 1e-6);

    if (N >= 4) {
        const ExpansionCoefficients& c = cached_expansion_coefficients(N, spec);
        value("b", c.b);
        value("Gamma0", c.Gamma0);
        compare("C3", *c.C3, *c.C3_closed, 1e-6);
        if (c.gamma_N) value("gamma_N", *c.gamma_N);
        if (c.D3) value("D3", *c.D3);
        compare("gamma_hat_N", c.gamma_hat_N->quadrature, c.gamma_hat_N->closed_form, 1e-6);
        if (N >= 5) {
            value("C1", *c.C1);
            value("C2", *c.C2);
            value("C4", *c.C4);
            value("C5", *c.C5);
            compare("C6", *c.C6, *c.C6_closed, 1e-6);
            value("D1", *c.D1);
            value("D2", *c.D2);
            value("D4", *c.D4);
            value("alpha_N", *c.alpha_N);
            value("beta_N", *c.beta_N);
            value("d_N", *c.d_N);
            compare("alpha_N/d_N vs N/4", *c.alpha_N / *c.d_N, N / 4.0, 1e-6);
            compare("alpha_hat_N", c.alpha_hat_N->quadrature, c.alpha_hat_N->closed_form, 1e-6);
            compare("d_hat_N", c.d_hat_N->quadrature, c.d_hat_N->closed_form, 1e-6);
            const double xi = xi_N(N, spec);
            value("xi_N", xi);
            compare("(alpha_hat_N+xi_N)/d_hat_N vs N/4+(N-4)/8",
                    (c.alpha_hat_N->quadrature + xi) / c.d_hat_N->quadrature, N / 4.0 + (N - 4) / 8.0, 1e-4);
        }
    }
    value("theta(tau=1)", theta_of_tau(N, 1.0, spec));
    emit(t, g, os);
    return all ? kOk : kFailure;
}

int cmd_thresholds(const std::string& range, bool details, const QuadratureSpec& spec, const Globals& g,
                   std::ostream& os) {
    const std::size_t dots = range.find("..");
    int lo = 0, hi = 0;
    try {
        if (dots == std::string::npos) throw std::invalid_argument("");
        std::size_t p1 = 0, p2 = 0;
        lo = std::stoi(range.substr(0, dots), &p1);
        hi = std::stoi(range.substr(dots + 2), &p2);
        if (p1 != dots || p2 != range.size() - dots - 2) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw DomainError("--dim-range must look like LO..HI, got '" + range + "'");
    }
    if (lo < 3 || hi > 12 || lo > hi) throw DomainError("--dim-range needs 3 <= LO <= HI <= 12");

    Table summary({"N", "lambda_bar", "lambda_hat", "lambda_star", "lower_bound", "upper_bound", "checks", "violated",
                   "all_satisfied"});
    Table detail({"N", "check", "lhs", "rhs", "satisfied"});
    bool all = true;
    for (int N = lo; N <= hi; ++N) {
        const ThresholdReport r = threshold_report(N, spec);
        std::string violated;
        for (const ChainCheck& c : r.chain_checks) {
            if (!c.satisfied) violated += (violated.empty() ? "" : "; ") + c.name;
            detail.add({{"N", static_cast<long long>(N)},
                        {"check", c.name},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"satisfied", c.satisfied}});
        }
        all = all && r.all_satisfied();
        summary.add({{"N", static_cast<long long>(N)},
                     {"lambda_bar", r.lambda_bar},
                     {"lambda_hat", r.lambda_hat},
                     {"lambda_star", opt(r.lambda_star)},
                     {"lower_bound", r.lower_bound},
                     {"upper_bound", r.upper_bound},
                     {"checks", static_cast<long long>(r.chain_checks.size())},
                     {"violated", violated},
                     {"all_satisfied", r.all_satisfied()}});
    }
    emit(details ? detail : summary, g, os);
    return all ? kOk : kFailure;
}

int cmd_asymptotics(const AsymptoticsArgs& a, const QuadratureSpec& spec, const Globals& g, std::ostream& os) {
    const Family family = parse_family(a.family);
    const Quantity quantity = parse_quantity(a.quantity);
    std::optional<std::vector<double>> grid;
    if (!a.eps.empty()) grid = a.eps;
    const AsymptoticsReport r = run_asymptotics(family, quantity, a.N, a.q, grid, spec, g.threads);

    Table t({"record", "N", "family", "quantity", "q", "eps", "value", "model", "basis", "target", "fitted",
             "predicted", "rel_dev", "tolerance", "residual_norm", "bound", "holds", "passes"});
    const std::string fam = family_name(family), qn = quantity_name(quantity);
    for (const Sample& s : r.samples) {
        t.add({{"record", std::string("sample")},
               {"N", static_cast<long long>(a.N)},
               {"family", fam},
               {"quantity", qn},
               {"q", a.q},
               {"eps", s.eps},
               {"value", s.value}});
    }
    t.add({{"record", std::string("fit")},
           {"N", static_cast<long long>(a.N)},
           {"family", fam},
           {"quantity", qn},
           {"q", a.q},
           {"model", model_name(r.plan.model.kind)},
           {"basis", r.fit.basis},
           {"target", r.plan.target},
           {"fitted", r.fit.fitted},
           {"predicted", opt(r.fit.predicted)},
           {"rel_dev", opt(r.fit.rel_dev)},
           {"tolerance", r.fit.predicted ? Cell{r.plan.tolerance} : Cell{}},
           {"residual_norm", r.fit.residual_norm},
           {"passes", r.passes}});
    bool ok = r.passes;

    if (family == Family::V && quantity == Quantity::E) {
        const VFamilyBounds vb = verify_v_family_bounds(a.bound_eps, spec, g.threads);
        t.add({{"record", std::string("J")},
               {"N", 3LL},
               {"family", fam},
               {"value", vb.J},
               {"predicted", vb.J_closed},
               {"rel_dev", std::abs(vb.J - vb.J_closed) / vb.J_closed}});
        t.add({{"record", std::string("mass_deficit_fit")},
               {"N", 3LL},
               {"family", fam},
               {"basis", std::string("eps^2|ln eps|, eps^2")},
               {"fitted", vb.d1},
               {"value", vb.d2},
               {"holds", vb.d1 > 0.0 && vb.d2 > 0.0}});
        for (const VFamilyBoundRow& row : vb.rows) {
            t.add({{"record", std::string("energy_upper_bound")},
                   {"N", 3LL},
                   {"family", fam},
                   {"quantity", std::string("E")},
                   {"eps", row.eps},
                   {"value", row.energy},
                   {"bound", row.energy_bound},
                   {"holds", row.energy_ok}});
            t.add({{"record", std::string("mass_lower_bound")},
                   {"N", 3LL},
                   {"family", fam},
                   {"quantity", std::string("P")},
                   {"eps", row.eps},
                   {"value", row.mass},
                   {"bound", row.mass_bound},
                   {"holds", row.mass_ok}});
        }
        ok = ok && vb.all_ok();
    }
    emit(t, g, os);
    return ok ? kOk : kFailure;
}

int cmd_fiber(const FiberArgs& a, const QuadratureSpec& spec, const Globals& g, std::ostream& os) {
    const std::vector<double> eps = a.eps.empty() ? kConditionEpsGrid : a.eps;
    const ConditionReport r = a.a == 1 ? check_condition_a1(a.N, a.lambda, a.mu, a.q, eps, spec, g.threads)
                                       : check_condition_a0(a.N, a.lambda, a.mu, a.q, eps, spec, g.threads);
    Table t({"N", "a", "lambda", "mu", "q", "family", "form", "eps", "value", "target", "margin", "t_star", "passes",
             "trend", "met"});
    for (const ConditionRow& row : r.rows) {
        t.add({{"N", static_cast<long long>(r.N)},
               {"a", static_cast<long long>(r.a)},
               {"lambda", r.lambda},
               {"mu", r.mu},
               {"q", r.q},
               {"family", family_name(r.family)},
               {"form", std::string(r.quotient_form ? "quotient" : "fiber_sup")},
               {"eps", row.eps},
               {"value", row.value},
               {"target", row.target},
               {"margin", row.target - row.value},
               {"t_star", row.t_star},
               {"passes", row.passes},
               {"trend", trend_name(r.trend)},
               {"met", r.met}});
    }
    emit(t, g, os);
    return r.met ? kOk : kFailure;
}

int cmd_eigen(int N, int basis_size, const QuadratureSpec& spec, const Globals& g, std::ostream& os) {
    Table t({"record", "N", "basis_size", "value", "reference", "rel_dev", "check"});
    const double lam = rayleigh_volume(TestFunction::gaussian(N), spec);
    const double dev = std::abs(lam - N / 2.0) / (N / 2.0);
    const bool lam_ok = dev <= 1e-8;
    t.add({{"record", std::string("lambda1_gaussian_quotient")},
           {"N", static_cast<long long>(N)},
           {"value", lam},
           {"reference", N / 2.0},
           {"rel_dev", dev},
           {"check", pass_text(lam_ok)}});
    const double gb = rayleigh_boundary(TestFunction::gaussian(N), spec);
    t.add({{"record", std::string("mu1_gaussian_quotient")},
           {"N", static_cast<long long>(N)},
           {"basis_size", 1LL},
           {"value", gb}});
    const EigenEstimate est = estimate_mu1(N, basis_size, spec);
    const double exact = mu1_separable(N);
    bool mono = true;
    double prev = INFINITY;
    for (const auto& [size, v] : est.history) {
        const bool step_ok = v <= prev && v >= exact * (1.0 - 1e-9);
        mono = mono && step_ok;
        prev = v;
        t.add({{"record", std::string("mu1_ritz_upper_bound")},
               {"N", static_cast<long long>(N)},
               {"basis_size", static_cast<long long>(size)},
               {"value", v},
               {"reference", exact},
               {"rel_dev", (v - exact) / exact},
               {"check", pass_text(step_ok)}});
    }
    emit(t, g, os);
    return lam_ok && mono ? kOk : kFailure;
}

int cmd_region(const RegionArgs& a, const QuadratureSpec& spec, const Globals& g, std::ostream& os) {
    ProblemParams p;
    p.N = a.N;
    p.a = a.a;
    p.q = a.q;
    p.validate();
    const GridAxis lam = GridAxis::parse(a.lambda_range);
    const GridAxis mu = GridAxis::parse(a.mu_range);
    Mu1Bracket b;
    b.lower = a.mu1_lower;
    b.upper = a.mu1_upper ? *a.mu1_upper : estimate_mu1(a.N, 8, spec).value;
    const double ls = region_lambda_star(a.N, a.a, spec);
    const std::vector<GridRow> rows = emit_grid(p, lam, mu, b, ls, g.threads);
    Table t({"N", "a", "q", "lambda", "mu", "verdict", "clause"});
    bool conflict = false;
    for (const GridRow& r : rows) {
        conflict = conflict || r.conflict;
        t.add({{"N", static_cast<long long>(r.N)},
               {"a", static_cast<long long>(r.a)},
               {"q", r.q},
               {"lambda", r.lambda},
               {"mu", r.mu},
               {"verdict", verdict_name(r.verdict)},
               {"clause", r.clause}});
    }
    emit(t, g, os);
    return conflict ? kFailure : kOk;
}

int cmd_verify_all(const QuadratureSpec& spec, const Globals& g, std::ostream& os) {
    AcceptanceOptions o;
    o.spec = spec;
    o.threads = g.threads;
    o.seed = g.seed;
    Table t({"criterion", "status", "text"});
    bool all = true;
    for (int id = 1; id <= kInProcessCriteria; ++id) {
        const CriterionResult r = run_criterion(id, o);
        all = all && r.passed;
        t.add({{"criterion", static_cast<long long>(id)},
               {"status", std::string(r.passed ? "PASS" : "FAIL")},
               {"text", r.title}});
        for (const std::string& line : r.lines) {
            t.add({{"criterion", static_cast<long long>(id)}, {"status", std::string("detail")}, {"text", line}});
        }
    }
    t.add({{"criterion", 10LL},
           {"status", std::string("EXTERNAL")},
           {"text", std::string("determinism: compare two runs of 'verify-all --threads 1' byte for byte")}});
    emit(t, g, os);
    return all ? kOk : kFailure;
}

}  // namespace halfspace::cli
