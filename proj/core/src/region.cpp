#include "halfspace/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "halfspace/errors.hpp"
#include "halfspace/parallel.hpp"
#include "halfspace/testfun.hpp"
#include "halfspace/thresholds.hpp"

namespace halfspace {

void ProblemParams::validate() const {
    if (N < 3 || N > kMaxDim) throw DomainError("dimension N must be in [3, 12]");
    if (a != 0 && a != 1) throw DomainError("a must be 0 or 1");
    if (!std::isfinite(q) || !std::isfinite(lambda) || !std::isfinite(mu)) {
        throw DomainError("q, lambda and mu must be finite");
    }
    const double tl = Exponents::make(N).two_lower;
    if (!(q >= 2.0 && q < tl)) {
        throw DomainError("q must lie in [2, 2_*) = [2, " + std::to_string(tl) + ") for N = " + std::to_string(N));
    }
}

void Mu1Bracket::validate() const {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower >= 0.0) || !(upper > lower)) {
        throw DomainError("mu1 bracket needs 0 <= lower < upper");
    }
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ExistsPositive: return "ExistsPositive";
        case Verdict::NoPositive: return "NoPositive";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

RegionVerdict classify(const ProblemParams& p, const Mu1Bracket& mu1, double lambda_star) {
    p.validate();
    mu1.validate();
    if (!std::isfinite(lambda_star)) throw DomainError("Lambda* must be finite");
    const double quarter = p.N / 4.0, half = p.N / 2.0;
    const double lam = p.lambda, mu = p.mu;
    const bool q2 = p.q == 2.0;

    RegionVerdict v;
    // Nonexistence: Pohozaev/Hardy for the first two, the eigenvalue
    // characterizations for the last two.
    if (lam < quarter && mu == 0.0) v.nonexistence_matches.push_back("nonexistence: lambda < N/4 and mu = 0");
    if (lam <= quarter && mu < 0.0) v.nonexistence_matches.push_back("nonexistence: lambda <= N/4 and mu < 0");
    if (lam >= half && mu >= 0.0) v.nonexistence_matches.push_back("nonexistence: lambda >= N/2 and mu >= 0");
    // mu >= mu_1 is only certain once mu clears every admissible mu_1.
    if (q2 && lam >= 0.0 && mu >= mu1.upper) {
        v.nonexistence_matches.push_back("nonexistence: q = 2, lambda >= 0 and mu >= mu1 (mu >= bracket upper)");
    }

    if (mu == 0.0 && lam > lambda_star && lam < half) {
        v.existence_matches.push_back("existence: mu = 0 and Lambda* < lambda < N/2");
    }
    if (!q2 && mu > 0.0 && lam >= 0.0 && lam < half) {
        v.existence_matches.push_back("existence: 2 < q < 2_*, mu > 0 and 0 <= lambda < N/2");
    }
    // mu below the eta line is only certain against the smallest admissible mu_1.
    if (q2 && lam >= 0.0 && lam < half && mu > 0.0 && mu1.lower > 0.0 && mu < eta_curve(p.N, lam, mu1.lower)) {
        v.existence_matches.push_back(
            "existence: q = 2, 0 <= lambda < N/2 and 0 < mu < mu1 (1 - 2 lambda/N) (bracket lower)");
    }

    if (!v.existence_matches.empty()) {
        v.verdict = Verdict::ExistsPositive;
        v.clause = v.existence_matches.front();
    } else if (!v.nonexistence_matches.empty()) {
        v.verdict = Verdict::NoPositive;
        v.clause = v.nonexistence_matches.front();
    } else {
        v.verdict = Verdict::Unknown;
        v.clause = "none";
    }
    // A point matching both kinds is reported as Unknown so no verdict is
    // ever issued against a clause that contradicts it.
    if (v.conflict()) {
        v.verdict = Verdict::Unknown;
        v.clause = "conflict";
    }
    return v;
}

double region_lambda_star(int N, int a, const QuadratureSpec& spec) {
    if (a == 1) return lambda_bar(N, spec);
    if (a == 0) return lambda_hat(N);
    throw DomainError("a must be 0 or 1");
}

double eta_curve(int N, double lambda, double mu1_value) {
    if (!(mu1_value > 0.0)) throw DomainError("mu1 must be positive");
    return mu1_value * (1.0 - 2.0 * lambda / N);
}

double GridAxis::at(int k) const {
    if (k == steps - 1) return hi;
    const double t = static_cast<double>(k) / (steps - 1);
    return lo * (1.0 - t) + hi * t;
}

void GridAxis::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid range must be finite");
    if (steps < 2) throw DomainError("grid needs at least 2 points per axis");
    if (!(hi > lo)) throw DomainError("grid range needs lo < hi");
}

GridAxis GridAxis::parse(const std::string& text) {
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
        throw DomainError("range '" + text + "' must have the form lo:hi:step");
    }
    auto num = [&](const std::string& s) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size()) throw DomainError("range '" + text + "': bad number '" + s + "'");
        return v;
    };
    GridAxis g;
    g.lo = num(a);
    g.hi = num(b);
    const double step = num(c);
    if (!(step > 0.0)) throw DomainError("range '" + text + "': step must be positive");
    if (!(g.hi > g.lo)) throw DomainError("range '" + text + "': need lo < hi");
    const double n = std::round((g.hi - g.lo) / step);
    if (n > 1e6) throw DomainError("range '" + text + "' has too many points");
    g.steps = static_cast<int>(n) + 1;
    g.validate();
    return g;
}

std::vector<GridRow> emit_grid(const ProblemParams& tmpl, const GridAxis& lambda_axis, const GridAxis& mu_axis,
                               const Mu1Bracket& mu1, double lambda_star, int threads) {
    tmpl.validate();
    mu1.validate();
    lambda_axis.validate();
    mu_axis.validate();
    const std::size_t nl = static_cast<std::size_t>(lambda_axis.steps);
    const std::size_t nm = static_cast<std::size_t>(mu_axis.steps);
    return parallel_map<GridRow>(nl * nm, threads, [&](std::size_t idx) {
        ProblemParams p = tmpl;
        p.lambda = lambda_axis.at(static_cast<int>(idx / nm));
        p.mu = mu_axis.at(static_cast<int>(idx % nm));
        const RegionVerdict v = classify(p, mu1, lambda_star);
        return GridRow{p.N, p.a, p.q, p.lambda, p.mu, v.verdict, v.clause, v.conflict()};
    });
}

AxisPattern check_mu_zero_axis(const std::vector<GridRow>& rows, double lambda_star) {
    AxisPattern out;
    std::vector<const GridRow*> axis;
    for (const GridRow& r : rows) {
        if (r.mu == 0.0) axis.push_back(&r);
    }
    if (axis.size() < 3) {
        out.detail = "grid has fewer than 3 points on mu = 0";
        return out;
    }
    const int N = axis.front()->N;
    const double quarter = N / 4.0, half = N / 2.0;
    double h = 0.0;
    for (std::size_t i = 1; i < axis.size(); ++i) h = std::max(h, axis[i]->lambda - axis[i - 1]->lambda);
    const double slack = 1e-12 * (1.0 + std::abs(half));

    // Collapse into runs of equal verdicts.
    std::vector<std::pair<Verdict, double>> runs;  // verdict, first lambda of the run
    for (const GridRow* r : axis) {
        if (runs.empty() || runs.back().first != r->verdict) runs.emplace_back(r->verdict, r->lambda);
    }
    std::vector<Verdict> seq;
    for (const auto& r : runs) seq.push_back(r.first);
    const bool with_gap = seq == std::vector<Verdict>{Verdict::NoPositive, Verdict::Unknown, Verdict::ExistsPositive,
                                                      Verdict::NoPositive};
    const bool without_gap =
        seq == std::vector<Verdict>{Verdict::NoPositive, Verdict::ExistsPositive, Verdict::NoPositive};
    std::ostringstream d;
    if (!with_gap && !without_gap) {
        d << "verdict sequence along mu = 0 is";
        for (Verdict v : seq) d << ' ' << verdict_name(v);
        out.detail = d.str();
        return out;
    }
    const double first_open = runs[1].second;
    const double first_exists = runs[with_gap ? 2 : 1].second;
    const double last_no = runs.back().second;
    const bool b1 = first_open >= quarter - slack && first_open < quarter + h + slack;
    const bool b2 = first_exists > lambda_star && first_exists <= lambda_star + h + slack;
    const bool b3 = last_no >= half - slack && last_no < half + h + slack;
    d << "switches at lambda = " << first_open << ", " << first_exists << ", " << last_no << " vs N/4 = " << quarter
      << ", Lambda* = " << lambda_star << ", N/2 = " << half << " (step " << h << ")";
    out.detail = d.str();
    out.ok = b1 && b2 && b3;
    return out;
}

}  // namespace halfspace
