#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubic {

using Rational = boost::multiprecision::cpp_rational;

// a + b w over Q, w^2 = -1 - w
struct QW {
    Rational a, b;

    QW() = default;
    QW(Rational x) : a(std::move(x)) {}
    QW(long x) : a(x) {}
    QW(int x) : a(x) {}
    QW(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    QW conj() const { return {a - b, -b}; }
    Rational norm() const { return a * a - a * b + b * b; }
    QW inverse() const;
    std::string to_string() const;
    friend bool operator==(const QW&, const QW&) = default;
};
QW operator+(const QW& x, const QW& y);
QW operator-(const QW& x, const QW& y);
QW operator-(const QW& x);
QW operator*(const QW& x, const QW& y);
QW operator/(const QW& x, const QW& y);

// power series truncated after x^order
class FormalSeries {
public:
    FormalSeries() = default;
    explicit FormalSeries(int order) : c_(static_cast<size_t>(order) + 1) {}
    FormalSeries(std::vector<QW> coeffs, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const QW& operator[](int i) const { return c_.at(static_cast<size_t>(i)); }
    QW& operator[](int i) { return c_.at(static_cast<size_t>(i)); }
    const std::vector<QW>& coeffs() const { return c_; }

    // 1/s; throws std::domain_error when the constant term is 0
    FormalSeries inverse() const;
    FormalSeries truncated(int order) const;
    FormalSeries shifted(int k) const;  // times x^k

    friend bool operator==(const FormalSeries&, const FormalSeries&) = default;

private:
    std::vector<QW> c_{QW{}};
};
// results carry the smaller truncation order of the operands
FormalSeries operator+(const FormalSeries& x, const FormalSeries& y);
FormalSeries operator-(const FormalSeries& x, const FormalSeries& y);
FormalSeries operator*(const FormalSeries& x, const FormalSeries& y);
FormalSeries operator*(const QW& k, const FormalSeries& x);

// 1 - lambda x + Np^3 x^2
FormalSeries euler_polynomial(const QW& lambda, long Np, int order);

// a_m = a_{n^3 t p^{3m}}, m = 0..M: a_0 = a0, a_1 = lambda a0 - gauss_term,
// a_{m+1} = lambda a_m - Np^3 a_{m-1}. gauss_term = g_2(1,p)(-1,p^2) a1 / N(p); a1 = a_{n^3 t p} is
// carried only through gauss_term.
std::vector<QW> hecke_coefficients(const QW& lambda, const QW& a0, const QW& a1, const QW& gauss_term, long Np, int M);
// (a0 - gauss_term x) / (1 - lambda x + Np^3 x^2) expanded through x^M
FormalSeries generating_function(const QW& lambda, const QW& a0, const QW& gauss_term, long Np, int M);

// H(x) (1 - lambda x + Np^3 x^2) = a0 - gauss_term x through x^M, and the expansion of the rational
// function equals the recursion
bool verify_euler_factor(const QW& lambda, const QW& a0, const QW& a1, const QW& gauss_term, long Np, int M);
// the regrouped form lambda x H = gauss_term x - a0 + H + Np^3 x^2 H
bool verify_regrouped(const QW& lambda, const QW& a0, const QW& gauss_term, long Np, int M);

// formal linear combination of symbols with Q(w) coefficients
using LinearForm = std::map<std::string, QW>;
LinearForm& add_to(LinearForm& f, const LinearForm& g, const QW& k = QW(1));
bool forms_equal(const LinearForm& f, const LinearForm& g);

// Dirichlet series over n = n_j p^m, (n_j, p) = 1, truncated at p^M: coefficient of N(n_j)^-s N(p)^-ms
using SymbolicDirichlet = std::map<std::pair<int, int>, LinearForm>;

struct SeriesSplit {
    SymbolicDirichlet lhs;  // sum over all n of a_{n^3}, each coefficient expanded through the recursion
    SymbolicDirichlet rhs;  // Euler factor inverse times the two coprime-to-p brackets
    bool match = false;
};
// symbols A_j = a_{n_j^3}, B_j = a_{n_j^3 p}, G = g_2(1,p)(-1,p^2); the B-bracket enters with G / N(p)
SeriesSplit series_split(const QW& lambda, long Np, int M, int n_classes = 2);
bool verify_series_split(const QW& lambda, long Np, int M, int n_classes = 2);
// the same identity with numbers substituted for A_j, B_j and G
bool verify_series_split_numeric(const QW& lambda, long Np, int M, const std::vector<QW>& A, const std::vector<QW>& B,
                                 const QW& G);

// a_{p^{3m}} = N(p)^{3m/2}. In the scaled unknowns mu = lambda N(p)^{-3/2}, gamma = gauss_term N(p)^{-3/2}
// the recursion reads b_{m+1} = mu b_m - b_{m-1}, b_1 = mu b_0 - gamma, which stays rational for every N(p).
struct EisensteinLambda {
    QW mu, gamma;           // lambda = mu N(p)^{3/2}, gauss_term = gamma N(p)^{3/2}
    bool consistent = false;  // the solved pair reproduces b_m = 1 through order M
    bool unique = false;      // mu is pinned by every m >= 1 equation on its own
    std::string report() const;
};
EisensteinLambda eisenstein_lambda(int M);

// random exact parameter: a + b w with small rationals
QW random_qw(std::mt19937_64& rng, int max_num = 9, int max_den = 6);

}  // namespace cubic
