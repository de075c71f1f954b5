#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfspace/numerics.hpp"
#include "halfspace/testfun.hpp"

namespace halfspace {

enum class Quantity { E, P, V, T, Q };
std::string quantity_name(Quantity q);
Quantity parse_quantity(const std::string& s);

enum class ModelKind {
    C0PlusC2,    // c0 + c2 eps^2
    C0PlusClog,  // c0 + c eps^2 |ln eps| + c' eps^2
    PurePower,   // c eps^theta, fitted on log-log data; the fitted value is theta
    PowerLog,    // c0 + c eps |ln eps| + c' eps
};
std::string model_name(ModelKind k);

struct ExpansionModel {
    ModelKind kind = ModelKind::C0PlusC2;
    std::optional<double> predicted;
    std::optional<double> theta;  // expected exponent for PurePower
    // Known eps -> 0 limit; when set it is subtracted instead of fitted.
    std::optional<double> c0;
    // Extra eps^p column absorbing the first omitted order of the remainder.
    std::optional<double> companion_power;
};

struct Sample {
    double eps = 0.0;
    double value = 0.0;
};

struct ExpansionFit {
    double fitted = 0.0;
    std::optional<double> predicted;
    std::optional<double> rel_dev;
    double residual_norm = 0.0;  // 2-norm of the scaled residuals
    std::vector<double> eps_used;
    std::vector<double> coefficients;  // all fitted basis coefficients, leading first
    std::string basis;                 // human-readable model description
};

inline const std::vector<double> kDefaultEpsGrid = {0.15, 0.1, 0.07, 0.05, 0.035, 0.025};
// Power-law exponents are extracted deeper in the asymptotic regime: the
// relative correction to c eps^theta decays only like eps^{N-1-2 theta}.
inline const std::vector<double> kSlopeEpsGrid = {0.01, 0.005, 0.0025, 0.00125, 0.000625};

std::vector<Sample> sweep(Quantity quantity, Family family, int N, double q, std::vector<double> eps_grid,
                          const QuadratureSpec& spec, int threads = 1);

ExpansionFit fit(const std::vector<Sample>& data, const ExpansionModel& model);

// The expansion each supported (family, quantity, N, q) is expected to follow,
// with the known limit and predicted coefficient filled in where one exists.
struct ExpansionPlan {
    ExpansionModel model;
    std::string target;      // what the fitted coefficient is compared to
    double tolerance = 0.0;  // relative; 0 when there is no prediction
    std::vector<double> default_grid;
};
ExpansionPlan expansion_plan(Family family, Quantity quantity, int N, double q, const QuadratureSpec& spec);

struct AsymptoticsReport {
    Family family = Family::U;
    Quantity quantity = Quantity::E;
    int N = 0;
    double q = 2.0;
    ExpansionPlan plan;
    std::vector<Sample> samples;
    ExpansionFit fit;
    // True when there is no prediction or rel_dev is within tolerance.
    bool passes = true;
};

AsymptoticsReport run_asymptotics(Family family, Quantity quantity, int N, double q,
                                  std::optional<std::vector<double>> eps_grid, const QuadratureSpec& spec,
                                  int threads = 1);

// Two-sided check of the N = 3 v-family estimates: the energy stays below
// K1 + (3 + sqrt5) sqrt3 / 4 * eps * J, and the L^2_K mass stays above
// sqrt3 eps J - d1 eps^2 |ln eps| - d2 eps^2, with J = int psi^2 / |x|^2.
struct VFamilyBoundRow {
    double eps = 0.0;
    double energy = 0.0;
    double energy_bound = 0.0;
    bool energy_ok = false;
    double mass = 0.0;
    double mass_bound = 0.0;
    bool mass_ok = false;
};

struct VFamilyBounds {
    double J = 0.0;
    double J_closed = 0.0;  // pi * sqrt(4 sqrt5 pi)
    double K1 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    std::vector<VFamilyBoundRow> rows;
    bool all_ok() const;
};

VFamilyBounds verify_v_family_bounds(std::vector<double> eps_list, const QuadratureSpec& spec, int threads = 1);

}  // namespace halfspace
