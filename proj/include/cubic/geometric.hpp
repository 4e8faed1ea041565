#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubic/bessel.hpp"
#include "cubic/eisenstein.hpp"

namespace cubic {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sum over ideals (n) unfolded to a sum over nonzero n in Z[w]: 1/6 for the units and 1/2 for evenness.
// The m = 0 Poisson term then carries 2/sqrt(3) from the covolume of Z[w], so together
// they give the 1/(6 sqrt 3) that precedes the Poisson-summed form.
inline constexpr double kUnfolding = 1.0 / 12;

struct ExperimentConfig {
    std::vector<double> xgrid{20, 40, 80, 160, 320};
    Eis b{1, 3};
    Eis D{1, 0};
    std::string V_preset = "bump-log-annulus";
    std::string g_preset = "bump-12";
    cd hilbert_unit = 1.0;
    double unfolding = kUnfolding;
    double op_budget = 5e9;  // per X, counted in Kloosterman / character-sum terms
    int jobs = 1;
};

TestFunctionPair resolve_pair(const ExperimentConfig& cfg);

struct NormWindow {
    double lo = 0, hi = 0;
    bool contains(double x) const { return lo < x && x < hi; }
};
// N(n) for which g(N(n)/X) can be nonzero
NormWindow n_window(const TestFunctionPair& f, double X);
// N(c) for which V(4 pi sqrt(n^3 b) / c) can be nonzero, given N(n)
NormWindow c_window(const TestFunctionPair& f, const Eis& b, double n_norm);

// V evaluated at 4 pi sqrt(n^3 b) / c, principal square root
cd v_weight(const TestFunctionPair& f, const Eis& n, const Eis& b, const Eis& c);

struct GeometricTerm {
    Eis n, c;
    cd value;  // g(N(n)/X) S_3(n^3, b, c) N(c)^-1 V(...), before the 1/X and unfolding factors
};

enum class SumOrder { c_outer, n_outer };

struct SideDetail {
    cd value;
    double ops = 0;
    long n_count = 0, c_count = 0, terms = 0;
};

// cost of geometric_side at X in Kloosterman terms; analytic estimate, then exact count if it fits
double geometric_ops_estimate(const ExperimentConfig& cfg, const TestFunctionPair& f, double X);

SideDetail geometric_side_detail(const ExperimentConfig& cfg, const TestFunctionPair& f, double X,
                                 SumOrder order = SumOrder::c_outer);
cd geometric_side(const ExperimentConfig& cfg, double X);
// every nonzero term, in canonical (c, n) order
std::vector<GeometricTerm> geometric_terms(const ExperimentConfig& cfg, const TestFunctionPair& f, double X);

// sum_{x mod c, reduced} (x/c)_3 e(b x^-1 / c) T(x, 0, c) in floating point
cd m0_value(const Eis& b, const Eis& c);

// int_C g(N(t)/X) V(4 pi sqrt(t^3 b) / c) d+t for radial V
double m_zero_weight(const TestFunctionPair& f, const Eis& b, const Eis& c, double X);
// the m = 0 Poisson term: unfolding (2/sqrt 3) X^-1 sum_c N(c)^-2 M0(b, c) I(c, X), with M0 from the closed
// form on squarefree c, the squarefull vanishing where it applies, and the direct local route otherwise
SideDetail m_zero_term_detail(const ExperimentConfig& cfg, const TestFunctionPair& f, double X);
cd m_zero_term(const ExperimentConfig& cfg, double X);
// number of c terms entering m_zero_term (D | c restriction included)
long m_zero_term_count(const ExperimentConfig& cfg, const TestFunctionPair& f, double X);

// b = p: K_{p,D} X^{1/2} h(V,1/3,0). b = p^3: A_{p,D} N(p)^{1/2} (1 + N(p)^-2) (4 pi^3/9) / (6 (sqrt -3)^3 N(D))
// X^{1/2} h(V,1/3,0).
cd main_term(const ExperimentConfig& cfg, double X);
cd main_term_constant(const ExperimentConfig& cfg);
// the branch proportional to g(1, b) / N(b)^{1/2}: nonzero for b = p, exactly zero for b = p^3
cd unramified_branch_constant(const ExperimentConfig& cfg);
// (p, 1) for b = p, (p, 3) for b = p^3; throws otherwise
std::pair<Eis, int> split_b(const Eis& b);

struct ExperimentRow {
    double X = 0;
    bool computed = false;
    std::string note;
    cd geometric, main, residual, m_zero;
    double ops = 0;
};

struct ExperimentReport {
    Eis b, D;
    std::string V_preset, g_preset;
    double h_value = 0;
    std::vector<ExperimentRow> rows;
    std::optional<double> slope_geometric, slope_main, slope_residual, slope_m_zero;
    double op_budget = 0;

    std::string to_json() const;
    std::string to_csv() const;
};

ExperimentReport asymptotic_experiment(const ExperimentConfig& cfg);
// least-squares slope of log|y| against log x; nullopt with fewer than 2 usable points
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cubic
