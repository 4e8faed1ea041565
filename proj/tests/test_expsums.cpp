#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cubic/expsums.hpp"

using namespace cubic;
using cd = std::complex<double>;

namespace {

// Oracle built on complex floating point only: e(z/c) = exp(2 pi i * coefficient of w in z/c), with the
// coefficient of w in u equal to 2 Im(u)/sqrt(3). Residues mod c are covered by the box [0,N)^2, which hits
// every class exactly N times.
cd to_c(const Eis& z) { return {static_cast<double>(z.a) - 0.5 * static_cast<double>(z.b), std::sqrt(3.0) / 2 * static_cast<double>(z.b)}; }

cd e_float(const Eis& z, const Eis& c) {
    cd q = to_c(z) / to_c(c);
    double coeff = 2 * q.imag() / std::sqrt(3.0);
    coeff -= std::floor(coeff);
    return std::polar(1.0, 2 * M_PI * coeff);
}

template <class F>
cd box_sum(const Eis& c, F f) {
    const i64 n = norm(c);
    cd s = 0;
    for (i64 a = 0; a < n; ++a)
        for (i64 b = 0; b < n; ++b) s += f(Eis{a, b});
    return s / static_cast<double>(n);
}

cd oracle_t(const Eis& A, const Eis& B, const Eis& c) {
    return box_sum(c, [&](const Eis& x) { return e_float(A * x * x * x + B * x, c); });
}

cd sym_c(const CubicSymbol& s) { return s.zero() ? cd(0) : std::polar(1.0, 2 * M_PI * s.j / 3); }

// mod-c inverse by search over the box
Eis inverse_search(const Eis& x, const Eis& c) {
    const i64 n = norm(c);
    for (i64 a = 0; a < n; ++a)
        for (i64 b = 0; b < n; ++b)
            if (divides(c, x * Eis{a, b} - kOne)) return {a, b};
    throw std::domain_error("no inverse");
}

void expect_close(const RootSum& r, cd v, double tol = 1e-6) {
    EXPECT_LT(std::abs(r.value() - v), tol * std::max(1.0, std::abs(v))) << r.value() << " vs " << v;
}

const Eis kP4{-2, 0};
const Eis kP7{-2, -3};
const Eis kP13{4, 3};

}  // namespace

// ---------------------------------------------------------------- T(A,B,c)

TEST(TSum, AgreesWithFloatOracle) {
    for (const Eis& c : primary_elements(60))
        for (const Eis& A : {kOne, Eis{2, 1}, Eis{0, 1}})
            for (const Eis& B : {Eis{0, 0}, kOne, Eis{1, 2}}) expect_close(t_sum(A, B, c), oracle_t(A, B, c));
    expect_close(t_sum(kOne, kOne, kLambda * kLambda), oracle_t(kOne, kOne, kLambda * kLambda));
}

TEST(TSum, PrimeWithoutLinearTerm) {
    for (const Eis& p : primary_primes(120))
        for (const Eis& A : {kOne, Eis{2, 1}, Eis{3, 5}}) {
            if (!coprime(A, p)) continue;
            RootSum g = gauss_sum(1, A, p);
            EXPECT_TRUE(t_sum(A, {0, 0}, p) == g + g.conj());
            EXPECT_TRUE(t_sum(A, {0, 0}, p * p) == RootSum::scalar(norm(p)));
        }
}

TEST(TSum, ZeroArguments) {
    for (const Eis& c : {kP7, kP13 * kP4, Eis{5, 1}}) EXPECT_TRUE(t_sum({0, 0}, {0, 0}, c) == RootSum::scalar(norm(c)));
}

TEST(TSum, ConjugationEquivariance) {
    for (const Eis& c : primary_elements(90))
        for (const Eis& A : {kOne, Eis{2, 1}})
            for (const Eis& B : {Eis{1, 2}, Eis{0, 1}}) {
                cd lhs = t_sum(conj(A), conj(B), conj(c)).value();
                EXPECT_LT(std::abs(lhs - std::conj(t_sum(A, B, c).value())), 1e-9 * static_cast<double>(norm(c)));
            }
}

TEST(TSum, Crt) {
    EXPECT_TRUE(t_sum_crt_check(kOne, kOne, kP7, kOne));
    EXPECT_TRUE(t_sum_crt_check(kOne, kOne, Eis{1, 3}, kP7 * Eis{0, 1}));
    auto ps = primary_elements(150);
    std::mt19937_64 rng(9);
    int n = 0;
    for (const Eis& c1 : ps)
        for (const Eis& c2 : ps) {
            if (norm(c1) == 1 || norm(c2) == 1 || !coprime(c1, c2) || norm(c1 * c2) > 3000 || rng() % 5) continue;
            EXPECT_TRUE(t_sum_crt_check(Eis{2, 1}, Eis{1, 1}, c1, c2));
            ++n;
        }
    EXPECT_GT(n, 10);
    EXPECT_THROW(t_sum_crt_check(kOne, kOne, kP7, kP7), PreconditionViolated);
}

TEST(TSum, PowerReduction) {
    EXPECT_TRUE(t_zero_power_reduction(kOne, kP7, 1));
    EXPECT_TRUE(t_zero_power_reduction(kOne, kP4, 1));
    EXPECT_TRUE(t_zero_power_reduction(kOne, kP7, 2));
    EXPECT_TRUE(t_zero_power_reduction(Eis{2, 1}, kP4, 3));
    EXPECT_THROW(t_zero_power_reduction(kP7, kP7, 1), PreconditionViolated);
}

TEST(TSum, ClosedFormWithoutLinearTerm) {
    for (const Eis& p : {kP4, kP7, kP13})
        for (int k = 0; k <= 6; ++k) {
            if (std::pow(static_cast<double>(norm(p)), k) > 30000) break;
            EXPECT_TRUE(t_zero_closed(Eis{2, 1}, p, k) == t_sum(Eis{2, 1}, {0, 0}, pow(p, static_cast<unsigned>(k))));
        }
}

TEST(TSum, Decomposition) {
    EXPECT_TRUE(t_zero_decomposition(kOne, kP7));
    EXPECT_TRUE(t_zero_decomposition(kOne, kP7 * kP7));
    EXPECT_TRUE(t_zero_decomposition(Eis{2, 1}, kP7 * kP13));
    EXPECT_TRUE(t_zero_decomposition(kOne, pow(kP4, 4)));
    for (const Eis& c : primary_elements(400)) {
        if (!coprime(Eis{2, 1}, c)) continue;
        EXPECT_TRUE(t_zero_decomposition(Eis{2, 1}, c)) << to_string(c);
    }
    EXPECT_THROW(t_zero_decomposition(kP7, kP7), PreconditionViolated);
}

// ---------------------------------------------------------------- Kloosterman and Katz

TEST(Kloosterman, Basics) {
    EXPECT_TRUE(kloosterman(kOne, kOne, kOne) == RootSum::scalar(1));
    for (const Eis& p : primary_primes(100)) EXPECT_TRUE(kloosterman({0, 0}, {0, 0}, p).exact_zero());
    EXPECT_THROW(kloosterman(kOne, kOne, Eis{2, 3}), ModulusNotPrimary);
}

TEST(Kloosterman, AgreesWithFloatOracle) {
    for (const Eis& c : {kP7, kP13, kP4, kP7 * kP7}) {
        cd s = box_sum(c, [&](const Eis& a) -> cd {
            if (!coprime(a, c)) return 0;
            return sym_c(cubic_symbol(a, c)) * e_float(Eis{1, 1} * a + Eis{2, 0} * inverse_search(a, c), c);
        });
        expect_close(kloosterman(Eis{1, 1}, Eis{2, 0}, c), s);
    }
}

TEST(Kloosterman, WeilEnvelopeOnPrimes) {
    for (const Eis& p : primary_primes(200))
        for (const Eis& mu : {kOne, Eis{2, 1}})
            for (const Eis& nu : {kOne, Eis{0, 1}, Eis{3, 1}}) {
                if (!coprime(mu * nu, p)) continue;
                EXPECT_LE(std::norm(kloosterman(mu, nu, p).value()), 4.0 * static_cast<double>(norm(p)) + 1e-9);
            }
}

TEST(Katz, Examples) {
    EXPECT_TRUE(verify_katz(kOne, kOne, Eis{1, 3}));
    for (const Eis& p : primary_primes(200)) EXPECT_TRUE(verify_katz(kOne, kOne, p)) << to_string(p);
    EXPECT_THROW(verify_katz(kP7, kOne, kP7), PreconditionViolated);
    EXPECT_THROW(verify_katz(kOne, kOne, Eis{2, 3}), ModulusNotPrimary);
}

TEST(Katz, ExhaustiveSmallModuli) {
    for (const Eis& c : primary_elements(40)) {
        ResidueRing ring(c);
        for (i64 x : ring.units())
            for (i64 m : ring.units()) EXPECT_TRUE(verify_katz(ring.element(x), ring.element(m), c)) << to_string(c);
    }
}

TEST(Katz, CompositeSquarefree) {
    std::mt19937_64 rng(2);
    for (const Eis& c : primary_elements(150)) {
        if (!is_squarefree(c) || is_prime(c) || norm(c) == 1) continue;
        ResidueRing ring(c);
        auto u = ring.units();
        for (int it = 0; it < 6; ++it) {
            Eis x = ring.element(u[rng() % u.size()]), m = ring.element(u[rng() % u.size()]);
            EXPECT_TRUE(verify_katz(x, m, c));
        }
    }
}

// ---------------------------------------------------------------- local evaluations

TEST(Zerob, TableExamples) {
    for (const Eis& p : {kP7, kP13}) {
        const i64 n = norm(p);
        auto ev = eval_zerob(kOne, Eis{1, 1}, p, 1, 2);
        EXPECT_TRUE(ev.agree);
        EXPECT_TRUE(ev.closed_form == RootSum::scalar(n));
        ev = eval_zerob(kOne, Eis{1, 1}, p, 1, 3);
        EXPECT_TRUE(ev.agree);
        EXPECT_TRUE(ev.closed_form.exact_zero());
    }
    // j = 2 <= k/2 with k = 5: N^2 T(A, -B, p^2); the printed row has +B
    auto ev = eval_zerob(kOne, Eis{1, 1}, kP7, 2, 5);
    EXPECT_TRUE(ev.agree);
    EXPECT_TRUE(ev.closed_form == t_sum(kOne, Eis{-1, -1}, kP7 * kP7).scaled(49));
    EXPECT_TRUE(ev.alternative == t_sum(kOne, Eis{1, 1}, kP7 * kP7).scaled(49));
    EXPECT_FALSE(ev.alternative_agree);
}

TEST(Zerob, AllCellsAgree) {
    for (const Eis& p : {kP4, kP7, kP13})
        for (int k = 1; k <= 5; ++k) {
            if (std::pow(static_cast<double>(norm(p)), k) > 3000) break;
            for (int j = 1; j <= k + 1; ++j)
                for (const Eis& A : {kOne, Eis{2, 1}})
                    for (const Eis& B : {kOne, Eis{1, 2}, Eis{3, 1}}) {
                        if (!coprime(A * B, p)) continue;
                        EXPECT_TRUE(eval_zerob(A, B, p, j, k).agree) << to_string(p) << " j=" << j << " k=" << k;
                    }
        }
}

TEST(Zerob, BruteAgreesWithFloatOracle) {
    Eis c = kP7 * kP7;
    auto ev = eval_zerob(Eis{2, 1}, kOne, kP7, 1, 2);
    expect_close(ev.brute, oracle_t(Eis{2, 1}, -kP7, c));
}

TEST(Pprime, Examples) {
    for (const Eis& p : {kP4, kP7, kP13}) {
        Eis b{2, 1}, w{1, 1}, B{1, 0};
        if (!coprime(b * w * B, p)) b = Eis{1, 1};
        auto ev = eval_pprime(b, w, B, p, 1, 2);
        EXPECT_TRUE(ev.agree);
        EXPECT_TRUE(ev.closed_form.exact_zero());
        ev = eval_pprime(b, w, B, p, 1, 1);
        EXPECT_TRUE(ev.agree) << to_string(p);
        RootSum expect = cubic_symbol(w, p).as_rootsum() * gauss_sum(1, kOne, p).scaled(-1) +
                         cubic_symbol(ResidueRing(p).inverse(b), p).as_rootsum().scaled(norm(p));
        EXPECT_TRUE(ev.closed_form == expect);
        if (norm(p) <= 7) EXPECT_TRUE(eval_pprime(b, w, B, p, 2, 3).agree);
    }
    EXPECT_THROW(eval_pprime(kP7, kOne, kOne, kP7, 1, 1), PreconditionViolated);
}

TEST(Pprime, BruteAgreesWithFloatOracle) {
    // sum_A (A/p)_3 e(b (wA)^-1 / p) sum_x e((A w^2 x^3 + p B x) / p)
    Eis p = kP7, b{2, 1}, w{1, 1}, B{1, 0};
    cd s = box_sum(p, [&](const Eis& A) -> cd {
        if (!coprime(A, p)) return 0;
        return sym_c(cubic_symbol(A, p)) * e_float(b * inverse_search(w * A, p), p) * oracle_t(A * w * w, p * B, p);
    });
    expect_close(eval_pprime(b, w, B, p, 1, 1).brute, s);
}

TEST(Ppro, Examples) {
    for (const Eis& p : {kP4, kP7}) {
        EXPECT_TRUE(eval_ppro(2, kOne, Eis{1, 1}, p, 2).agree);
        EXPECT_TRUE(eval_ppro(2, kOne, Eis{1, 1}, p, 2).closed_form.exact_zero());
        auto ev = eval_ppro(3, Eis{2, 1}, kOne, p, 1);
        EXPECT_TRUE(ev.agree);
        EXPECT_TRUE(ev.closed_form == eval_ppro(2, Eis{2, 1}, kOne, p, 1).closed_form);
    }
}

TEST(Aco0, PinnedStatementReading) {
    for (const Eis& p : {kP7, kP13}) {
        Eis w{2, 0};
        while (cubic_symbol(w, p) == CubicSymbol::omega(0)) w = w + kOmega;
        for (int k = 1; k <= 3; ++k) {
            if (std::pow(static_cast<double>(norm(p)), k) > 3000) break;
            auto ev = eval_aco0(w, kOne, p, 1, k);
            EXPECT_TRUE(ev.agree) << k;
            EXPECT_EQ(ev.pinned, "statement (w/p)");
            if (k <= 2) EXPECT_FALSE(ev.alternative_agree);
        }
    }
}

TEST(Aco01, Rows) {
    const Eis w{2, 1}, B{1, 1};
    const Eis p = kP4;
    for (int k = 1; k <= 5; ++k)
        for (int j = 1; j <= 4; ++j) EXPECT_TRUE(eval_aco01(w, B, p, j, k).agree) << j << " " << k;
    const i64 n = norm(kP7);
    auto ev = eval_aco01(w, B, kP7, 2, 3);
    EXPECT_TRUE(ev.agree);
    EXPECT_TRUE(ev.closed_form == RootSum::scalar(euler_phi(pow(kP7, 3)) * n * n));
    ev = eval_aco01(w, B, kP7, 2, 4);
    EXPECT_TRUE(ev.agree);
    EXPECT_FALSE(ev.closed_form.exact_zero());
}

TEST(Hurt, Rows) {
    const Eis m{1, 1}, b{2, 1}, w{1, 0};
    for (const Eis& p : {kP4, kP7, kP13})
        for (int k = 1; k <= 3; ++k)
            for (int r = (k == 1 ? 1 : 0); r <= k; ++r) {
                auto ev = eval_hurt(m, b, w, p, k, r);
                EXPECT_TRUE(ev.agree) << to_string(p) << " k=" << k << " r=" << r;
                if (r < k) EXPECT_TRUE(ev.closed_form.exact_zero());
            }
    EXPECT_THROW(eval_hurt(m, b, w, kP7, 1, 0), PreconditionViolated);
}

TEST(Sim, NegativePowersAsInverses) {
    const Eis c = kP13 * kP13;
    EXPECT_TRUE(eval_sim(kOne, c, kOne, kP7, 1, 0, -1).agree);
    EXPECT_TRUE(eval_sim(Eis{2, 1}, c, Eis{1, 1}, kP7, 3, 2, -3).agree);
    EXPECT_TRUE(eval_sim(kOne, pow(kP7, 3), kOne, kP4, 0, 0, 0).agree);
    EXPECT_THROW(eval_sim(kOne, kP13, kOne, kP7, 0, 0, 0), PreconditionViolated);
}

TEST(M0, Reduction) {
    for (const Eis& p : primary_primes(60)) {
        auto ev = m0_reduction(Eis{2, 0}, p);
        EXPECT_TRUE(ev.agree);
        // -g + conj((b/p)_3) N
        if (coprime(Eis{2, 0}, p)) {
            RootSum expect = gauss_sum(1, kOne, p).scaled(-1) +
                             cubic_symbol(Eis{2, 0}, p).conj().as_rootsum().scaled(norm(p));
            EXPECT_TRUE(ev.closed_form == expect);
        }
        ev = m0_reduction(p, p);
        EXPECT_TRUE(ev.agree);
        EXPECT_TRUE(ev.brute == gauss_sum(1, kOne, p).scaled(norm(p) - 1));
        EXPECT_FALSE(ev.alternative_agree);
    }
    EXPECT_TRUE(m0_reduction(Eis{2, 0}, kP7 * kP13).agree);
    EXPECT_THROW(m0_reduction(kOne, kP7 * kP7), PreconditionViolated);
}

TEST(M0, GeneralSumAgreesWithFloatOracle) {
    auto oracle = [](const Eis& b, const Eis& c) {
        return box_sum(c, [&](const Eis& x) {
            if (!coprime(x, c)) return cd(0);
            return sym_c(cubic_symbol(x, c)) * e_float(b * inverse_search(x, c), c) * oracle_t(x, {0, 0}, c);
        });
    };
    for (const Eis& c : {kP4 * kP4, kP7 * kP7, kP4 * kP7, kP13, kP4 * kP4 * kP4})
        for (const Eis& b : {kOne, Eis{2, 0}, kP7, kP4 * kP7}) expect_close(m0_sum(b, c), oracle(b, c));
}

TEST(M0, GeneralSumMatchesClosedFormOnSquarefree) {
    for (const Eis& c : primary_elements(400)) {
        if (!is_squarefree(c)) continue;
        for (const Eis& b : {kOne, Eis{2, 0}, kP7})
            if (!divisible_by_lambda(b)) EXPECT_TRUE(m0_sum(b, c) == m0_closed(b, c)) << to_string(c);
    }
    // squarefull part coprime to b kills the sum
    EXPECT_TRUE(m0_sum(kOne, kP7 * kP7 * kP13).exact_zero());
    EXPECT_TRUE(m0_sum(kP4, kP7 * kP7 * kP4).exact_zero());
}

TEST(Psq, Vanishing) {
    for (const Eis& p : {kP4, kP7})
        for (int k = 2; k <= 4; ++k) EXPECT_TRUE(squarefull_m0_vanishing(Eis{1, 1}, Eis{2, 1}, p, k)) << k;
    EXPECT_TRUE(squarefull_m0_vanishing(kOne, kOne, kP13, 2));
    EXPECT_THROW(psq_eval(kOne, kOne, kP7, 1), PreconditionViolated);
}
