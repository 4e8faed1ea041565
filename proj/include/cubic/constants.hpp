#pragma once

#include <complex>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubic/eisenstein.hpp"

namespace cubic {

using Rational = boost::multiprecision::cpp_rational;

struct OutOfRange : std::domain_error {
    using std::domain_error::domain_error;
};

// Hurwitz zeta by Euler-Maclaurin, s > 1, q > 0
long double hurwitz_zeta(long double s, long double q);
long double riemann_zeta(long double s);
// L(s, chi_{-3})
long double l_chi3(long double s);

struct ZetaRoutes {
    double lattice = 0;  // (1/6) sum over nonzero lattice points, smoothed tail
    double product = 0;  // zeta(s) L(s, chi_{-3})
    double diff() const { return lattice - product; }
};
ZetaRoutes zeta_K_routes(double s);
// cached; throws OutOfRange for s < 2, or if the two routes disagree beyond 1e-10
double zeta_K(double s);

double compute_Z_K();
// product of the local factors of Z_K over prime ideals lying over rational primes <= bound,
// with a first-order correction for the omitted N(P)^-2 terms
double z_k_euler_product(i64 prime_bound = 10'000'000);
// the quotient chain as it appears before simplification
double zeta_chain_product();
// exact Euler product of the six unrestricted arithmetic sums whose value Z_K stands for
double six_sums_euler_product(i64 prime_bound = 10'000'000);

// the bracketed finite divisor sums multiplying Z_K in A_{b,D}
Rational divisor_factor(const Eis& b, const Eis& D);
double compute_A_bD(const Eis& b, const Eis& D);
double compute_B_pD(const Eis& p, const Eis& D);
// hilbert_unit is the value supplied for (-1, p^2), a cube root of unity
std::complex<double> compute_K_pD(const Eis& p, const Eis& D, std::complex<double> hilbert_unit = 1.0);

// (1/(1-q) - sum_{i<=4} q^i) phi(p) N(p)^{1/2} = N(p)^{-7/2} with q = 1/N(p), checked after dividing by N(p)^{1/2}
bool tail_identity_check(const Eis& p);

}  // namespace cubic
