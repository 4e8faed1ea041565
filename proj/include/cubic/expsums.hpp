#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cubic/characters.hpp"

namespace cubic {

struct ModulusNotPrimary : std::domain_error {
    ModulusNotPrimary() : std::domain_error("modulus is not 1 mod 3") {}
};

struct PreconditionViolated : std::domain_error {
    using std::domain_error::domain_error;
};

// T(A, B, c) = sum_{x mod c} e((A x^3 + B x) / c)
RootSum t_sum(const Eis& A, const Eis& B, const Eis& c);
bool t_sum_crt_check(const Eis& A, const Eis& B, const Eis& c1, const Eis& c2);
bool t_zero_power_reduction(const Eis& A, const Eis& pi, int k);
// sum over ordered primary c1 c2 c3^3 = c of g(A,c1) conj(g(A,c2)) N(c3)^2
RootSum t_zero_decomposition_value(const Eis& A, const Eis& c);
// T(A, 0, pi^k) for pi prime not dividing 3A, via the period-3 reduction in k
RootSum t_zero_closed(const Eis& A, const Eis& pi, int k);
bool t_zero_decomposition(const Eis& A, const Eis& c);

// S_3(mu, nu, c) = sum_{a mod c, reduced} e((mu a + nu a^-1)/c) (a/c)_3
RootSum kloosterman(const Eis& mu, const Eis& nu, const Eis& c);

// |S_3(mu, nu, c)|^2 / (N(gcd(mu, nu, c)) N(c)); gcd(0, 0, c) = c
double weil_ratio(const Eis& mu, const Eis& nu, const Eis& c);
// number of ideal divisors of c
i64 divisor_count(const Eis& c);

struct KatzSides {
    RootSum lhs, rhs;
    bool agree = false;
};
KatzSides katz_sides(const Eis& x, const Eis& m, const Eis& c);
bool verify_katz(const Eis& x, const Eis& m, const Eis& c);

struct LocalEval {
    std::string lemma;
    std::string row;
    std::vector<std::pair<std::string, std::string>> params;
    RootSum closed_form;
    RootSum brute;
    bool agree = false;
    // a competing reading of the same closed form (statement vs proof), when one exists
    bool has_alternative = false;
    std::string pinned;       // label of the reading carried in closed_form
    std::string alternative_label;
    RootSum alternative;
    bool alternative_agree = false;
};

// sum_{x mod pi^k} e((A x^3 - pi^j B x) / pi^k)
LocalEval eval_zerob(const Eis& A, const Eis& B, const Eis& pi, int j, int k);
// sum_{A mod pi^k, reduced} (A/pi^k)_3 e(b (wA)^-1 / pi^k) sum_x e((A w^2 x^3 + pi^j B x) / pi^k)
LocalEval eval_pprime(const Eis& b, const Eis& w, const Eis& B, const Eis& pi, int j, int k);
// same sum with b = pi^l and linear coefficient B
LocalEval eval_ppro(int l, const Eis& w, const Eis& B, const Eis& pi, int k);
// b = pi
LocalEval eval_aco0(const Eis& w, const Eis& B, const Eis& pi, int j, int k);
// b = pi^3
LocalEval eval_aco01(const Eis& w, const Eis& B, const Eis& pi, int j, int k);
// the q = pi^r term of (w/pi^k)_3 sum_q mu(pi^k/q) N(q) sum_{y = m^3 (27bw)^-1 mod q} (y/pi^k)_3 e(y/pi^k);
// for r = k = 1 the whole q-sum
LocalEval eval_hurt(const Eis& m, const Eis& b, const Eis& w, const Eis& pi, int k, int r);
LocalEval eval_sim(const Eis& w, const Eis& c, const Eis& m, const Eis& pi, int i, int j, int k);
// sum_{x mod c, reduced} (x/c)_3 e(b x^-1 / c) T(x, 0, c) for squarefree primary c
LocalEval m0_reduction(const Eis& b, const Eis& c);
// the derived closed form of the sum above, squarefree c only
RootSum m0_closed(const Eis& b, const Eis& c);
// the same sum for any primary c, in O(N(c)) through the local factors of T(x, 0, c)
RootSum m0_sum(const Eis& b, const Eis& c);
// sum_{x mod pi^k, reduced} (x/pi^k)_3 e(b x^-1 / pi^k) T(z x, 0, pi^h), h = k mod 3
LocalEval psq_eval(const Eis& b, const Eis& z, const Eis& pi, int k);
bool squarefull_m0_vanishing(const Eis& b, const Eis& z, const Eis& pi, int k);

namespace kernel {

// e(z/c) as a root sum of modulus N(c)
RootSum e_of(const ResidueRing& ring, const Eis& z);

// sum_{A reduced, chi[A] >= 0} w^chi[A] e(beta (wA)^-1 / c) sum_{x mod c} e((A M x^3 + L x) / c)
RootSum twisted_double(const ResidueRing& ring, const std::vector<std::int8_t>& chi, const Eis& beta,
                       const Eis& w, const Eis& M, const Eis& L);

// (x/c)_3^e as a per-index table (0 where the symbol vanishes is encoded -1)
std::vector<std::int8_t> power_table(const std::vector<std::int8_t>& chi, int e);

}  // namespace kernel

}  // namespace cubic
