#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubic/eisenstein.hpp"
#include "cubic/rootsum.hpp"

namespace cubic {

struct OutOfRegime : std::domain_error {
    using std::domain_error::domain_error;
};

// S(f, c) = sum_{j mod c} e(f(j)/c), f[i] the coefficient of x^i
RootSum s_sum(const std::vector<i64>& f, i64 c);
// S(A x^3, c) from the cube-count table of Z/c
RootSum s_cubic(i64 A, i64 c);
// S(A x^3, c1 c2) = S(A c2^2 x^3, c1) S(A c1^2 x^3, c2) for coprime c1, c2
bool s_multiplicativity(i64 A, i64 c1, i64 c2);

enum class CubRow { k0, k1, k2, k2_three };
struct CubEval {
    CubRow row;
    RootSum closed_form, brute;
    bool agree = false;
};
// closed form of S(A x^3, p^k) by k mod 3; the k = 1 factor S(A x^3, p) is 0 for p = 3 or p = 2 mod 3
// and g(A, pi) + conj for p = 1 mod 3
CubEval cub_case_eval(i64 A, i64 p, int k);

// sum_{y mod delta} (y/delta)_3 e(Tr(A y / delta)), e(x) = exp(2 pi i x), summed directly
RootSum trace_gauss_sum(const Eis& A, const Eis& delta);
// the same sum through the characters module: Tr(z) is the w-coefficient of sqrt(-3) z
RootSum appendix_gauss_sum(const Eis& A, const Eis& delta);
// S(A x^3, p) = g(A, pi) + conj g(A, pi) for both primary pi | p
bool p13_split(i64 A, i64 p);

std::vector<Eis> primary_of_norm(i64 n);
// sum over N(delta) d^3 = c, delta primary, d >= 1 of g(A, delta) d^2 (g(A, 1) = 1)
RootSum pgen_rhs(i64 A, i64 c);
bool pgen_decompose(i64 A, i64 c);

// chi_9(A) = e(j/3) with chi_9(1 + 3v) = e(v/3); returns j. gcd(A, 3) = 1.
int chi9(i64 A);
// 2 cos(2 pi A / 9) = e(1/9) chi_9(A) + e(-1/9) conj chi_9(A), exactly
bool cos_identity(i64 A);
// sum_{x mod 9} chi_9(x)^power e(x/9)
RootSum tau_chi9(int power = 1);

struct QSeries {
    std::complex<double> value;
    double tail_estimate = 0;  // sum over N(delta) > cutoff bounded with |g|^2 <= N(delta)
    long terms = 0;
};
// Q(s, mu) = sum_{delta primary} g(mu, delta)^2 / N(delta)^s truncated at N(delta) <= norm_cutoff; s > 2
QSeries q_series(double s, const Eis& mu, i64 norm_cutoff);

// T(c) = sum_{x mod c, reduced} e(xbar/c) S(x x^3, c), exact from the definition
RootSum t_direct(i64 c);
// T(c) = T_3(j, c3) T_{c3} with c = 3^j c3: the 3-part from the closed forms (chi_9, tau(chi_9)), the prime-to-3
// part from Gauss sums over primary delta of norm c3. nullopt pieces are zero by a branch rule.
struct TBranch {
    std::complex<double> value;
    int j = 0;          // 3-adic valuation of c
    bool zero_by_rule = false;  // j = 1 mod 3 (S(., 3) = 0) or j >= 3 (the 3-part sum vanishes)
};
TBranch t_branch(i64 c);

struct FM0Row {
    double X = 0;
    std::complex<double> direct, branch, j0, j2;
    long moduli = 0;
};
struct FM0Report {
    std::string preset;
    std::vector<FM0Row> rows;
    std::optional<double> slope;
    bool j1_zero = false;
    bool tau_norm_nine = false;
    bool routes_agree = false;
    std::string to_json() const;
};
// F(X) = X^{-3/2} sum_c c^{-1} T(c) W0(c / X^{3/2}), W0 the named g preset, both routes per X
FM0Report f_m0_experiment(const std::vector<double>& xgrid, const std::string& preset = "bump-12");

}  // namespace cubic
