#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubic/eisenstein.hpp"

namespace cubic {

using cd = std::complex<double>;

struct SeriesDivergenceGuard : std::domain_error {
    using std::domain_error::domain_error;
};
struct QuadratureNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RegularizationNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cd to_complex(const Eis& x);

// 1 / Gamma(x), entire; exact zeros at the poles of Gamma
cd rgamma(cd x);

struct JStarSeries {
    cd value;
    double tail_bound = 0;  // bound on the omitted terms
    int terms = 0;
};
// J*_mu(z) = J_mu(z) (z/2)^-mu = sum_n (-1)^n (z/2)^{2n} / (n! Gamma(n + mu + 1)).
// Valid for |z| <= 50; min_terms forces a longer truncation.
JStarSeries j_star_series(cd mu, cd z, int min_terms = 0);
cd j_star(cd mu, cd z);
// J_mu(z) with the principal branch of (z/2)^mu
cd bessel_j(cd mu, cd z);

// B_{nu,p}(z). When nu - p is within kNearInteger of an integer the removable
// singularity is bridged by interpolating between nu0 -+ kNuOffset, nu0 the
// integer point; the error of that step is O(kNuOffset^2).
inline constexpr double kNearInteger = 1e-6;
inline constexpr double kNuOffset = 1e-6;
cd bessel_kernel(cd nu, int p, cd z);

// the two candidate closed forms for B_{1/3,0} on a real argument:
// (J_{-1/3}^2 + J_{1/3}^2) / sin(pi/3) and (J_{-1/3}^2 - J_{1/3}^2) / sin(pi/3)
double b13_plus_form(double x);
double b13_minus_form(double x);

struct TestFunctionPair {
    std::string g_name, V_name;
    double g_lo = 1, g_hi = 2;
    std::function<double(double)> g;  // zero outside [g_lo, g_hi], int g(t) sqrt(t) dt = 1
    double V_lo = 1, V_hi = 2;
    std::function<cd(cd)> V;  // zero outside V_lo <= |z| <= V_hi
    bool V_radial = false;
    // sup |f^(k)| for k = 0, 1, 2, estimated on a fine grid
    std::vector<double> g_derivative_bounds, V_derivative_bounds;
};

// wraps the callbacks so they vanish off their supports and rescales g
TestFunctionPair make_test_pair(std::function<double(double)> g, double g_lo, double g_hi, std::function<cd(cd)> V,
                                double V_lo, double V_hi, bool V_radial, std::string g_name = "custom",
                                std::string V_name = "custom");
// V: "bump-log-annulus"; g: "bump-12"
TestFunctionPair preset_pair(const std::string& V_preset = "bump-log-annulus", const std::string& g_preset = "bump-12");
std::vector<std::string> preset_names();

struct Quadrature {
    cd value;
    double error_estimate = 0;
    long nodes = 0;
};
// h(V, nu, p) = int V(z) B_{nu,p}(z) d+z / |z|^2 over polar coordinates (log r, theta)
Quadrature h_transform_detail(const TestFunctionPair& f, cd nu, int p, double tol = 1e-10);
cd h_transform(const TestFunctionPair& f, cd nu, int p);
// radial V only: the angular average of B_{nu,p} is taken term by term in its double power series
Quadrature h_transform_radial(const TestFunctionPair& f, cd nu, int p, double tol = 1e-10);
cd kernel_angular_average(cd nu, int p, double r);

// int_C e(A w^3 + B w) d+w, e(x) = exp(2 pi i (x + conj x)), with damping exp(-eps |w|^2)
// taken to eps -> 0 by Richardson extrapolation
struct WIntegralLhs {
    cd value;
    double error_estimate = 0;
};
WIntegralLhs cubic_phase_integral(cd A, cd B);
cd cubic_phase_integral_damped(cd A, cd B, double eps);

struct WIntegral {
    cd lhs;
    double lhs_error = 0;
    cd rhs;  // N(b)^{1/2} pi^2 / (3 sin(pi/3)) (|J_{-1/3}|^2 + |J_{1/3}|^2) at 2 pi z b^{1/2}
    bool agree = false;
    cd rhs_kernel;  // same prefactor times sin(pi/3) B_{1/3,0}, i.e. with the difference of squares
    bool kernel_agree = false;
    double rel_err = 0, kernel_rel_err = 0;
};
inline constexpr double kWIntegralTol = 1e-3;
WIntegral kuznetsov_w_integral(const Eis& b, cd z);
// N(b)^{1/3} / N(z)^{1/3} int e(1/2 (w^3 - 3 w b^{1/3} z^{2/3})) d+w
WIntegralLhs w_integral_rescaled(const Eis& b, cd z);

}  // namespace cubic
