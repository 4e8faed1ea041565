#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "cubic/appendix.hpp"
#include "cubic/characters.hpp"

using namespace cubic;
using cd = std::complex<double>;

namespace {

cd e_float(double x) { return std::polar(1.0, 2 * M_PI * x); }

// float sum over j mod c of e(A j^3 / c)
cd s_float(i64 A, i64 c) {
    cd s = 0;
    for (i64 j = 0; j < c; ++j) s += e_float(static_cast<double>((A % c) * (j * j % c) % c * j % c) / static_cast<double>(c));
    return s;
}

}  // namespace

TEST(SSum, Basics) {
    EXPECT_TRUE(s_sum({0, 0, 0, 1}, 1) == RootSum::scalar(1));
    // cubes mod 7: 0, 1 (three times), 6 (three times)
    RootSum fixture = RootSum::scalar(1) + RootSum::root(1, 7, 3) + RootSum::root(6, 7, 3);
    EXPECT_TRUE(s_sum({0, 0, 0, 1}, 7) == fixture);
    EXPECT_NEAR(fixture.value().real(), 4.740938811152205, 1e-12);
    EXPECT_TRUE(s_cubic(1, 7) == fixture);
    for (i64 c : {5, 9, 12, 25, 91})
        for (i64 A : {1, 2, 5}) {
            EXPECT_TRUE(s_sum({0, 0, 0, A}, c) == s_cubic(A, c));
            EXPECT_LT(std::abs(s_cubic(A, c).value() - s_float(A, c)), 1e-9);
        }
    // general polynomial: x^2 + x mod 5
    cd g = 0;
    for (int j = 0; j < 5; ++j) g += e_float((j * j + j) % 5 / 5.0);
    EXPECT_LT(std::abs(s_sum({0, 1, 1}, 5).value() - g), 1e-12);
    EXPECT_THROW(s_sum({1}, 0), std::invalid_argument);
}

TEST(SSum, Multiplicativity) {
    EXPECT_TRUE(s_multiplicativity(1, 7, 13));
    EXPECT_TRUE(s_multiplicativity(1, 9, 7));
    EXPECT_TRUE(s_multiplicativity(2, 7, 1));
    EXPECT_TRUE(s_multiplicativity(5, 8, 27));
    EXPECT_THROW(s_multiplicativity(1, 9, 6), std::invalid_argument);
}

TEST(Cub, Examples) {
    auto e = cub_case_eval(1, 7, 3);
    EXPECT_EQ(e.row, CubRow::k0);
    EXPECT_TRUE(e.closed_form == RootSum::scalar(49));
    EXPECT_TRUE(e.agree);
    for (i64 A : {1, 2, 4, 5}) {
        e = cub_case_eval(A, 3, 2);
        EXPECT_EQ(e.row, CubRow::k2_three);
        EXPECT_TRUE(e.agree);
        EXPECT_NEAR(e.closed_form.value().real(), 3 * (1 + 2 * std::cos(2 * M_PI * static_cast<double>(A) / 9)), 1e-12);
    }
    e = cub_case_eval(1, 5, 1);
    EXPECT_TRUE(e.closed_form.exact_zero());
    EXPECT_TRUE(e.agree);
    EXPECT_TRUE(cub_case_eval(2, 3, 1).brute.exact_zero());
    EXPECT_THROW(cub_case_eval(7, 7, 1), std::invalid_argument);
}

TEST(Cub, ExhaustiveSmallPrimes) {
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
        i64 pk = 1;
        for (int k = 1; k <= 6; ++k) {
            pk *= p;
            if (pk > 200000) break;
            for (i64 A = 1; A < p; ++A) EXPECT_TRUE(cub_case_eval(A, p, k).agree) << p << "^" << k << " A=" << A;
        }
    }
}

TEST(GaussSum, TraceCharacterRoutesAgree) {
    for (const Eis& d : primary_elements(150))
        for (const Eis& A : {kOne, Eis{2, 0}, Eis{1, 1}}) {
            if (norm(d) == 1) continue;
            EXPECT_TRUE(trace_gauss_sum(A, d) == appendix_gauss_sum(A, d)) << to_string(d);
        }
    EXPECT_TRUE(appendix_gauss_sum(kOne, kOne) == RootSum::scalar(1));
}

TEST(P13, Split) {
    EXPECT_TRUE(p13_split(1, 7));
    EXPECT_TRUE(p13_split(2, 13));
    EXPECT_TRUE(p13_split(1, 31));
    for (i64 p = 7; p <= 200; p += 6)
        if (is_prime_int(p))
            for (i64 A : {i64{1}, i64{2}, p - 1}) EXPECT_TRUE(p13_split(A, p)) << p;
    EXPECT_THROW(p13_split(1, 5), std::invalid_argument);
}

TEST(Pgen, Decomposition) {
    EXPECT_TRUE(s_cubic(1, 8) == RootSum::scalar(4));
    EXPECT_TRUE(pgen_rhs(1, 8) == RootSum::scalar(4));
    EXPECT_TRUE(pgen_decompose(1, 7));
    EXPECT_TRUE(pgen_decompose(1, 91));
    for (i64 c = 1; c <= 500; ++c)
        for (i64 A : {1, 2}) {
            if (std::gcd(3 * A, c) != 1) continue;
            EXPECT_TRUE(pgen_decompose(A, c)) << "c=" << c << " A=" << A;
        }
    EXPECT_THROW(pgen_decompose(1, 9), std::invalid_argument);
    EXPECT_EQ(primary_of_norm(7).size(), 2u);
    EXPECT_TRUE(primary_of_norm(5).empty());
}

TEST(Chi9, Identity) {
    EXPECT_EQ(chi9(1), 0);
    EXPECT_EQ(chi9(4), 1);
    EXPECT_EQ(chi9(7), 2);
    for (i64 A : {1, 2, 4, 5, 7, 8}) {
        EXPECT_TRUE(cos_identity(A)) << A;
        EXPECT_EQ(chi9(A), chi9(A + 9));
        for (i64 B : {1, 2, 4, 5, 7, 8}) EXPECT_EQ(chi9(A * B), (chi9(A) + chi9(B)) % 3);
    }
    EXPECT_THROW(chi9(3), std::invalid_argument);
    for (int k : {1, 2}) {
        RootSum t = tau_chi9(k);
        EXPECT_TRUE(t * t.conj() == RootSum::scalar(9));
    }
    EXPECT_TRUE(tau_chi9(2) == tau_chi9(1).conj());
}

TEST(QSeries, Regime) {
    QSeries q = q_series(4, kOne, 10000);
    EXPECT_LT(q.tail_estimate, 1e-4);
    EXPECT_GT(q.terms, 1000);
    EXPECT_THROW(q_series(2, kOne, 100), OutOfRegime);
    EXPECT_THROW(q_series(1.5, kOne, 100), OutOfRegime);
    EXPECT_LT(std::abs(q_series(40, kOne, 500).value - cd(1)), 1e-12);
    // a longer truncation moves the value by less than the tail bound
    QSeries q0 = q_series(4, kOne, 2500);
    EXPECT_LT(std::abs(q.value - q0.value), q0.tail_estimate);
}

TEST(QSeries, TwistByNine) {
    // g(9, d) = conj((9/d)_3) g(1, d), so each term of Q(s, 9) is (9/d)_3 times the term of Q(s, 1)
    const Eis nine{9, 0};
    for (const Eis& d : primary_elements(300)) {
        RootSum g1 = appendix_gauss_sum(kOne, d), g9 = appendix_gauss_sum(nine, d);
        RootSum twisted = cubic_symbol(nine, d).as_rootsum() * g1 * g1;
        EXPECT_TRUE(g9 * g9 == twisted) << to_string(d);
    }
    cd sum = 0;
    for (const Eis& d : primary_elements(2000)) {
        cd g = appendix_gauss_sum(kOne, d).value();
        sum += cubic_symbol(nine, d).as_rootsum().value() * g * g / std::pow(static_cast<double>(norm(d)), 3.0);
    }
    EXPECT_LT(std::abs(q_series(3, nine, 2000).value - sum), 1e-12);
}

TEST(TSum, BranchesMatchDefinition) {
    for (i64 c = 1; c <= 250; ++c) {
        TBranch b = t_branch(c);
        cd d = t_direct(c).value();
        EXPECT_LT(std::abs(b.value - d), 1e-8 * std::max(1.0, std::abs(d))) << c;
        if (b.zero_by_rule) EXPECT_TRUE(t_direct(c).exact_zero()) << c;
        if (b.j % 3 == 1) EXPECT_TRUE(b.zero_by_rule);
    }
    EXPECT_EQ(t_branch(63).j, 2);
    EXPECT_NEAR(t_direct(63).value().real(), t_branch(63).value.real(), 1e-9);
}

TEST(FM0, Experiment) {
    FM0Report r = f_m0_experiment({4, 8, 16, 32, 64});
    ASSERT_TRUE(r.slope.has_value());
    EXPECT_LE(*r.slope, -0.3);
    EXPECT_TRUE(r.routes_agree);
    EXPECT_TRUE(r.j1_zero);
    EXPECT_TRUE(r.tau_norm_nine);
    EXPECT_EQ(r.rows.size(), 5u);
    EXPECT_NE(r.to_json().find("\"preset\""), std::string::npos);
    EXPECT_THROW(f_m0_experiment({4, 8, 16}), std::invalid_argument);
}
