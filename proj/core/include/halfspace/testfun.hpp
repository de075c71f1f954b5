#pragma once

#include <string>
#include <vector>

#include "halfspace/numerics.hpp"

namespace halfspace {

// Maximum supported dimension; integrand dynamic range grows quickly with N.
inline constexpr int kMaxDim = 12;

struct Exponents {
    int N = 3;
    double two_star = 6.0;   // 2N/(N-2)
    double two_lower = 4.0;  // 2(N-1)/(N-2)
    double k_N = 0.0;        // (sqrt(N(N-2)))^{(N-2)/2}
    double x_N0 = 0.0;       // sqrt(N/(N-2))

    static Exponents make(int N);
};

enum class Family {
    InteriorBubble,  // bare k_N (eps/(eps^2+|x'|^2+(x_N+eps*tau*x0)^2))^{(N-2)/2}
    TraceBubble,     // bare (eps/(|x'|^2+(x_N+eps)^2))^{(N-2)/2}
    U,               // K^{-1/2} phi U_eps
    V,               // K^{-1/2} psi U_eps
    UHat,            // K^{-1/2} phi Uhat_eps
    VHat,            // K^{-1/2} psi Uhat_eps
    Gaussian,        // exp(-|x|^2/4)
    Custom,          // exp(-|x|^2/4) * sum_k c_k r^{2 i_k} x_N^{j_k}
};

std::string family_name(Family f);
// Accepts the CLI spellings: u, v, uhat, vhat, bubble, trace, gaussian.
Family parse_family(const std::string& s);

struct PolyTerm {
    double coef = 1.0;
    int i = 0;  // power of r^2
    int j = 0;  // power of x_N
};

struct Eval {
    double value = 0.0;
    double d_r = 0.0;
    double d_xn = 0.0;
};

class TestFunction {
public:
    // Weighted families (U, V, UHat, VHat) require eps in (0, 0.5].
    TestFunction(Family family, int N, double eps = 1.0, double tau = 1.0);
    static TestFunction custom(int N, std::vector<PolyTerm> terms);
    static TestFunction gaussian(int N) { return TestFunction(Family::Gaussian, N); }

    Family family() const { return family_; }
    double eps() const { return eps_; }
    double tau() const { return tau_; }
    const Exponents& exps() const { return exps_; }
    int dim() const { return exps_.N; }
    const std::vector<PolyTerm>& terms() const { return terms_; }

    // Radius outside which the function vanishes identically (inf if none).
    double support_radius() const;

    Eval eval(double r, double xn) const;
    double value(double r, double xn) const { return eval(r, xn).value; }

private:
    TestFunction() = default;
    Family family_ = Family::Gaussian;
    double eps_ = 1.0;
    double tau_ = 1.0;
    Exponents exps_;
    std::vector<PolyTerm> terms_;
};

double weight_K(double r, double xn);

// Smooth radial cutoff: 1 on |x| <= 1, 0 on |x| >= 2; derivative in rho = |x|.
struct Radial {
    double value;
    double d_rho;
};
Radial cutoff_phi(double rho);
Radial envelope_psi(double rho);

// int K |grad u|^2 over the half-space (the squared X-norm).
double norm_grad_K(const TestFunction& u, const QuadratureSpec& spec);
// int K |u|^p over the half-space.
double norm_Lp_K_volume(const TestFunction& u, double p, const QuadratureSpec& spec);
// int K(x',0) |u(x',0)|^p over R^{N-1}.
double norm_Lp_K_boundary(const TestFunction& u, double p, const QuadratureSpec& spec);

// Unweighted counterparts, used for the bare bubble constants.
double norm_grad(const TestFunction& u, const QuadratureSpec& spec);
double norm_Lp_volume(const TestFunction& u, double p, const QuadratureSpec& spec);
double norm_Lp_boundary(const TestFunction& u, double p, const QuadratureSpec& spec);

}  // namespace halfspace
