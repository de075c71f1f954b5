#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "halfspace/numerics.hpp"

namespace halfspace::cli {

struct Globals {
    double tol_abs = 1e-10;
    double tol_rel = 1e-8;
    int threads = 1;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 20240917;

    QuadratureSpec spec() const;
};

struct AsymptoticsArgs {
    int N = 0;
    std::string family;
    std::string quantity;
    double q = 2.0;
    std::vector<double> eps;
    std::vector<double> bound_eps = {0.05};
};

struct FiberArgs {
    int N = 0;
    int a = 1;
    double lambda = 0.0;
    double mu = 0.0;
    double q = 2.0;
    std::vector<double> eps;
};

struct RegionArgs {
    int N = 0;
    int a = 1;
    double q = 2.0;
    std::string lambda_range;
    std::string mu_range;
    double mu1_lower = 0.0;
    std::optional<double> mu1_upper;
};

// Each command writes its table to `os` and returns the exit code.
int cmd_constants(int N, const QuadratureSpec& spec, const Globals& g, std::ostream& os);
int cmd_thresholds(const std::string& range, bool details, const QuadratureSpec& spec, const Globals& g,
                   std::ostream& os);
int cmd_asymptotics(const AsymptoticsArgs& a, const QuadratureSpec& spec, const Globals& g, std::ostream& os);
int cmd_fiber(const FiberArgs& a, const QuadratureSpec& spec, const Globals& g, std::ostream& os);
int cmd_eigen(int N, int basis_size, const QuadratureSpec& spec, const Globals& g, std::ostream& os);
int cmd_region(const RegionArgs& a, const QuadratureSpec& spec, const Globals& g, std::ostream& os);
int cmd_verify_all(const QuadratureSpec& spec, const Globals& g, std::ostream& os);

}  // namespace halfspace::cli
