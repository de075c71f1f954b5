#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "halfspace/errors.hpp"

namespace cli = halfspace::cli;

namespace {

// Exit codes: 0 success, 1 usage, 2 identity/criterion failure,
// 3 quadrature failure, 4 geometry failure.
constexpr int kUsage = 1;
constexpr int kFailure = 2;
constexpr int kQuadrature = 3;
constexpr int kGeometry = 4;

std::optional<double> env_tol_rel() {
    const char* v = std::getenv("HALFSPACE_TOL_REL");
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    const double x = std::strtod(v, &end);
    if (end == v || *end != '\0') throw halfspace::DomainError(std::string("HALFSPACE_TOL_REL is not a number: ") + v);
    return x;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerics for the critical Neumann problem with Gaussian weight in the half-space"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::Globals g;
    try {
        if (auto t = env_tol_rel()) g.tol_rel = *t;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    app.add_option("--tol-abs", g.tol_abs, "absolute quadrature tolerance")->capture_default_str();
    app.add_option("--tol-rel", g.tol_rel, "relative quadrature tolerance (default from HALFSPACE_TOL_REL if set)")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads; 1 gives bit-identical reruns")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", g.out, "output file (default: standard output)");
    app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();

    int dim = 0;
    auto* c_const = app.add_subcommand("constants", "bubble, trace and expansion constants with cross-checks");
    c_const->add_option("--dim", dim, "dimension N")->required()->check(CLI::Range(3, 12));

    std::string dim_range;
    bool details = false;
    auto* c_thr = app.add_subcommand("thresholds", "lambda_bar, lambda_hat, lambda* and the bound chain");
    c_thr->add_option("--dim-range", dim_range, "LO..HI with 3 <= LO <= HI <= 12")->required();
    c_thr->add_flag("--details", details, "one row per chain inequality");

    cli::AsymptoticsArgs aa;
    auto* c_asy = app.add_subcommand("asymptotics", "eps sweep of a norm and fit against its expansion");
    c_asy->add_option("--dim", aa.N, "dimension N")->required()->check(CLI::Range(3, 12));
    c_asy->add_option("--family", aa.family, "u, v, uhat or vhat")->required();
    c_asy->add_option("--quantity", aa.quantity, "E, P, V, T or Q")->required();
    c_asy->add_option("--q", aa.q, "boundary exponent for Q")->capture_default_str();
    c_asy->add_option("--eps", aa.eps, "comma-separated eps grid")->delimiter(',');
    c_asy->add_option("--bound-eps", aa.bound_eps, "eps values for the N = 3 v-family bounds")
        ->delimiter(',')
        ->capture_default_str();

    cli::FiberArgs fa;
    auto* c_fib = app.add_subcommand("fiber", "fiber maximization and the compactness-level condition");
    c_fib->add_option("--dim", fa.N, "dimension N")->required()->check(CLI::Range(3, 12));
    c_fib->add_option("--a", fa.a, "0 or 1")->required()->check(CLI::IsMember({0, 1}));
    c_fib->add_option("--lambda", fa.lambda, "lambda")->required();
    c_fib->add_option("--mu", fa.mu, "mu")->capture_default_str();
    c_fib->add_option("--q", fa.q, "boundary exponent")->capture_default_str();
    c_fib->add_option("--eps", fa.eps, "comma-separated eps list")->delimiter(',');

    int basis_size = 8;
    auto* c_eig = app.add_subcommand("eigen", "lambda_1 check and Rayleigh-Ritz upper bounds for mu_1");
    c_eig->add_option("--dim", dim, "dimension N")->required()->check(CLI::Range(3, 12));
    c_eig->add_option("--basis-size", basis_size, "largest Ritz basis")->check(CLI::Range(1, 64))->capture_default_str();

    cli::RegionArgs ra;
    auto* c_reg = app.add_subcommand("region", "classify a (lambda, mu) grid");
    c_reg->add_option("--dim", ra.N, "dimension N")->required()->check(CLI::Range(3, 12));
    c_reg->add_option("--a", ra.a, "0 or 1")->required()->check(CLI::IsMember({0, 1}));
    c_reg->add_option("--q", ra.q, "boundary exponent")->required();
    c_reg->add_option("--lambda-range", ra.lambda_range, "lo:hi:step")->required();
    c_reg->add_option("--mu-range", ra.mu_range, "lo:hi:step")->required();
    c_reg->add_option("--mu1-lower", ra.mu1_lower, "certified lower bound for mu_1 (0 = unknown)")
        ->capture_default_str();
    c_reg->add_option("--mu1-upper", ra.mu1_upper, "upper bound for mu_1 (default: 8-element Ritz bound)");

    auto* c_all = app.add_subcommand("verify-all", "run the acceptance criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    std::ostringstream buf;
    int code = 0;
    try {
        const halfspace::QuadratureSpec spec = g.spec();
        if (*c_const) code = cli::cmd_constants(dim, spec, g, buf);
        else if (*c_thr) code = cli::cmd_thresholds(dim_range, details, spec, g, buf);
        else if (*c_asy) code = cli::cmd_asymptotics(aa, spec, g, buf);
        else if (*c_fib) code = cli::cmd_fiber(fa, spec, g, buf);
        else if (*c_eig) code = cli::cmd_eigen(dim, basis_size, spec, g, buf);
        else if (*c_reg) code = cli::cmd_region(ra, spec, g, buf);
        else if (*c_all) code = cli::cmd_verify_all(spec, g, buf);
    } catch (const halfspace::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const halfspace::NonConvergence& e) {
        std::cerr << "quadrature failure: " << e.what() << '\n';
        return kQuadrature;
    } catch (const halfspace::GeometryError& e) {
        std::cerr << "geometry failure: " << e.what() << '\n';
        return kGeometry;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kFailure;
    }

    if (g.out.empty()) {
        std::cout << buf.str();
        std::cout.flush();
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open '" << g.out << "' for writing\n";
            return kUsage;
        }
        f << buf.str();
        if (!f.flush()) {
            std::cerr << "error: write to '" << g.out << "' failed\n";
            return kUsage;
        }
    }
    return code;
}
