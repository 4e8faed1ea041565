#include "cubic/appendix.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cubic/bessel.hpp"
#include "cubic/characters.hpp"
#include "cubic/geometric.hpp"
#include "cubic/residue.hpp"

namespace cubic {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Eis kSqrtMinus3{1, 2};

i64 ipow(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

// n^(num/3) for an exact cube power n^num
i64 cube_root_power(i64 p, int num) {
    if (num % 3 != 0) throw std::logic_error("cube_root_power: exponent not divisible by 3");
    return ipow(p, num / 3);
}

int valuation(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace

RootSum s_sum(const std::vector<i64>& f, i64 c) {
    if (c < 1) throw std::invalid_argument("s_sum: c >= 1");
    RootSum r(c);
    for (i64 j = 0; j < c; ++j) {
        // Horner mod c
        i64 v = 0;
        for (size_t i = f.size(); i-- > 0;) v = mod(static_cast<i64>((static_cast<__int128>(v) * j + f[i]) % c), c);
        r.add(v);
    }
    return r;
}

RootSum s_cubic(i64 A, i64 c) {
    if (c < 1) throw std::invalid_argument("s_cubic: c >= 1");
    std::vector<i64> count(static_cast<size_t>(c), 0);
    for (i64 j = 0; j < c; ++j) {
        const i64 cube = static_cast<i64>(static_cast<__int128>(j) * j % c * j % c);
        ++count[static_cast<size_t>(cube)];
    }
    RootSum r(c);
    const i64 a = mod(A, c);
    for (i64 t = 0; t < c; ++t)
        if (count[static_cast<size_t>(t)]) r.add(static_cast<i64>(static_cast<__int128>(a) * t % c), count[static_cast<size_t>(t)]);
    return r;
}

bool s_multiplicativity(i64 A, i64 c1, i64 c2) {
    if (std::gcd(c1, c2) != 1) throw std::invalid_argument("s_multiplicativity: c1, c2 not coprime");
    RootSum lhs = s_cubic(A, c1 * c2);
    RootSum rhs = s_cubic(checked_mul(A, c2 * c2), c1) * s_cubic(checked_mul(A, c1 * c1), c2);
    return lhs == rhs;
}

RootSum trace_gauss_sum(const Eis& A, const Eis& delta) {
    ResidueRing ring(delta);
    auto chi = symbol_table(ring);
    const i64 n = ring.size();
    const Eis dc = conj(delta);
    RootSum r(3 * n);
    for (i64 i = 0; i < n; ++i) {
        if (chi[static_cast<size_t>(i)] < 0) continue;
        // Tr(A y / delta) = Tr(A y conj(delta)) / N(delta), Tr(u + v w) = 2u - v
        const Eis z = A * ring.element(i) * dc;
        const i64 tr = mod(2 * z.a - z.b, n);
        r.add(3 * tr + n * chi[static_cast<size_t>(i)]);
    }
    return r;
}

RootSum appendix_gauss_sum(const Eis& A, const Eis& delta) {
    if (norm(delta) == 1) return RootSum::scalar(1);
    return gauss_sum(1, A * kSqrtMinus3, delta);
}

namespace {

Eis primary_factor_of(i64 p) {
    for (const Eis& pi : primary_of_norm(p)) return pi;
    throw std::invalid_argument("no primary element of norm " + std::to_string(p));
}

// S(A x^3, p) by the prime-level rule
RootSum s_prime_rule(i64 A, i64 p) {
    if (p == 3 || p % 3 == 2) return RootSum::scalar(0);
    RootSum g = appendix_gauss_sum(Eis{A, 0}, primary_factor_of(p));
    return g + g.conj();
}

}  // namespace

CubEval cub_case_eval(i64 A, i64 p, int k) {
    if (k < 1 || !is_prime_int(p)) throw std::invalid_argument("cub_case_eval: p prime, k >= 1");
    if (A % p == 0) throw std::invalid_argument("cub_case_eval: gcd(A, p) = 1 required");
    CubEval e;
    e.brute = s_cubic(A, ipow(p, k));
    switch (k % 3) {
        case 0:
            e.row = CubRow::k0;
            e.closed_form = RootSum::scalar(cube_root_power(p, 2 * k));
            break;
        case 1:
            e.row = CubRow::k1;
            e.closed_form = s_prime_rule(A, p).scaled(cube_root_power(p, 2 * k - 2));
            break;
        default:
            if (p != 3) {
                e.row = CubRow::k2;
                e.closed_form = RootSum::scalar(cube_root_power(p, 2 * k - 1));
            } else {
                e.row = CubRow::k2_three;
                // 1 + 2 cos(2 pi A / 9) = 1 + e(A/9) + e(-A/9)
                RootSum t = RootSum::scalar(1) + RootSum::root(A, 9) + RootSum::root(-A, 9);
                e.closed_form = t.scaled(cube_root_power(3, 2 * k - 1));
            }
    }
    e.agree = e.closed_form == e.brute;
    return e;
}

bool p13_split(i64 A, i64 p) {
    if (p % 3 != 1 || !is_prime_int(p)) throw std::invalid_argument("p13_split: p = 1 mod 3 prime");
    if (A % p == 0) throw std::invalid_argument("p13_split: gcd(A, p) = 1 required");
    RootSum s = s_cubic(A, p);
    bool ok = true;
    for (const Eis& pi : primary_of_norm(p)) {
        RootSum g = appendix_gauss_sum(Eis{A, 0}, pi);
        ok = ok && s == g + g.conj();
    }
    return ok;
}

std::vector<Eis> primary_of_norm(i64 n) {
    std::vector<Eis> out;
    if (n == 1) return {kOne};
    const i64 bound = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(n) / 3.0)) + 2;
    for (i64 b = -bound; b <= bound; ++b)
        for (i64 a = -bound; a <= bound; ++a) {
            Eis x{a, b};
            if (norm(x) == n && is_primary(x)) out.push_back(x);
        }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

RootSum pgen_rhs(i64 A, i64 c) {
    RootSum out = RootSum::scalar(0);
    for (i64 d = 1; d * d * d <= c; ++d) {
        if (c % (d * d * d)) continue;
        for (const Eis& delta : primary_of_norm(c / (d * d * d)))
            out = out + appendix_gauss_sum(Eis{A, 0}, delta).scaled(d * d);
    }
    return out;
}

bool pgen_decompose(i64 A, i64 c) {
    if (c < 1 || std::gcd(3 * A, c) != 1) throw std::invalid_argument("pgen_decompose: gcd(3A, c) = 1 required");
    return s_cubic(A, c) == pgen_rhs(A, c);
}

int chi9(i64 A) {
    if (A % 3 == 0) throw std::invalid_argument("chi9: gcd(A, 3) = 1 required");
    // chi_9(-1) = 1 since chi_9 has order 3; fold A = 2 mod 3 onto 1 mod 3
    i64 a = mod(A, 9);
    if (a % 3 == 2) a = 9 - a;
    return static_cast<int>((a - 1) / 3);
}

bool cos_identity(i64 A) {
    const int j = chi9(A);
    RootSum lhs = RootSum::root(A, 9) + RootSum::root(-A, 9);
    RootSum rhs = RootSum::root(1 + 3 * j, 9) + RootSum::root(-1 - 3 * j, 9);
    return lhs == rhs;
}

RootSum tau_chi9(int power) {
    RootSum r(9);
    for (i64 x = 1; x < 9; ++x)
        if (x % 3) r.add(x + 3 * mod(static_cast<i64>(power) * chi9(x), 3));
    return r;
}

QSeries q_series(double s, const Eis& mu, i64 norm_cutoff) {
    if (!(s > 2)) throw OutOfRegime("q_series: absolute convergence needs s > 2");
    QSeries q;
    for (const Eis& delta : primary_elements(norm_cutoff)) {
        const std::complex<double> g = appendix_gauss_sum(mu, delta).value();
        q.value += g * g / std::pow(static_cast<double>(norm(delta)), s);
        ++q.terms;
    }
    // primary elements have density (2 pi / sqrt 3)(1/9) per unit norm; int_C^inf x^{1-s} dx
    const double density = 2 * kPi / std::sqrt(3.0) / 9;
    q.tail_estimate = density * std::pow(static_cast<double>(norm_cutoff), 2 - s) / (s - 2);
    return q;
}

RootSum t_direct(i64 c) {
    if (c < 1) throw std::invalid_argument("t_direct: c >= 1");
    if (c == 1) return RootSum::scalar(1);
    std::vector<i64> count(static_cast<size_t>(c), 0);
    for (i64 k = 0; k < c; ++k) ++count[static_cast<size_t>(static_cast<__int128>(k) * k % c * k % c)];
    std::vector<i64> cubes;
    for (i64 t = 0; t < c; ++t)
        if (count[static_cast<size_t>(t)]) cubes.push_back(t);
    RootSum r(c);
    for (i64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        const i64 xbar = inv_mod(x, c);
        for (i64 t : cubes) r.add(static_cast<i64>((xbar + static_cast<__int128>(x) * t) % c), count[static_cast<size_t>(t)]);
    }
    return r;
}

TBranch t_branch(i64 c) {
    if (c < 1) throw std::invalid_argument("t_branch: c >= 1");
    TBranch t;
    t.j = valuation(c, 3);
    const i64 three_j = ipow(3, t.j), c3 = c / three_j;
    if (t.j % 3 == 1 || t.j >= 3) {
        // j = 1 mod 3: S(., 3^j) carries S(., 3) = 0. j = 0 mod 3, j >= 3: S is constant and the Ramanujan
        // sum c_{3^j}(1) vanishes. j = 2 mod 3, j >= 5: the conductor-9 Gauss sum vanishes modulo 3^j.
        t.zero_by_rule = true;
        return t;
    }
    std::complex<double> t3 = 1;
    if (t.j == 2) {
        // 3 (e(1/9) chi_9(c3) tau(chi_9^2) + e(-1/9) conj chi_9(c3) tau(chi_9))
        const int x = chi9(c3);
        const std::complex<double> chi = std::polar(1.0, 2 * kPi * x / 3);
        t3 = 3.0 * (std::polar(1.0, 2 * kPi / 9) * chi * tau_chi9(2).value() +
                    std::polar(1.0, -2 * kPi / 9) * std::conj(chi) * tau_chi9(1).value());
    }
    // prime-to-3 part: sum over N(delta) d^3 = c3 of d^2 conj((3^{4j}/delta)_3) g(1, delta) G(delta),
    // G(delta) = sum_{B mod c3, reduced} (B/delta)_3 e(B/c3)
    std::complex<double> tc = 0;
    if (c3 == 1) {
        tc = 1;
    } else {
        const Eis r{ipow(3, 4 * t.j), 0};
        for (i64 d = 1; d * d * d <= c3; ++d) {
            if (c3 % (d * d * d)) continue;
            for (const Eis& delta : primary_of_norm(c3 / (d * d * d))) {
                std::complex<double> G = 0;
                if (norm(delta) == 1) {
                    for (i64 B = 1; B < c3; ++B)
                        if (std::gcd(B, c3) == 1) G += std::polar(1.0, 2 * kPi * static_cast<double>(B) / c3);
                } else {
                    for (i64 B = 1; B < c3; ++B) {
                        if (std::gcd(B, c3) != 1) continue;
                        CubicSymbol s = cubic_symbol(Eis{B, 0}, delta);
                        G += std::polar(1.0, 2 * kPi * (static_cast<double>(B) / c3 + s.j / 3.0));
                    }
                }
                const std::complex<double> twist =
                    norm(delta) == 1 ? 1.0 : std::conj(cubic_symbol(r, delta).as_rootsum().value());
                tc += static_cast<double>(d * d) * twist * appendix_gauss_sum(kOne, delta).value() * G;
            }
        }
    }
    t.value = t3 * tc;
    return t;
}

FM0Report f_m0_experiment(const std::vector<double>& xgrid, const std::string& preset) {
    if (xgrid.size() < 2) throw std::invalid_argument("f_m0_experiment: need at least 2 X values");
    auto [mn, mx] = std::minmax_element(xgrid.begin(), xgrid.end());
    if (*mn <= 0 || *mx < 8 * *mn) throw std::invalid_argument("f_m0_experiment: X grid must span a factor 8");
    TestFunctionPair f = preset_pair("bump-log-annulus", preset);
    FM0Report rep;
    rep.preset = preset;
    rep.j1_zero = true;
    for (i64 c : {3, 6, 12, 81 * 2, 81 * 7}) rep.j1_zero = rep.j1_zero && t_direct(c).exact_zero();
    RootSum tt = tau_chi9(1) * tau_chi9(1).conj();
    rep.tau_norm_nine = tt == RootSum::scalar(9);
    rep.routes_agree = true;
    std::vector<double> xs, ys;
    for (double X : xgrid) {
        FM0Row row;
        row.X = X;
        const double scale = std::pow(X, 1.5);
        const i64 c_lo = static_cast<i64>(std::floor(f.g_lo * scale)), c_hi = static_cast<i64>(std::ceil(f.g_hi * scale));
        double mass = 0;
        for (i64 c = std::max<i64>(1, c_lo); c <= c_hi; ++c) {
            const double w = f.g(static_cast<double>(c) / scale);
            if (w == 0) continue;
            ++row.moduli;
            const std::complex<double> d = t_direct(c).value() * w / static_cast<double>(c);
            TBranch b = t_branch(c);
            const std::complex<double> bv = b.value * w / static_cast<double>(c);
            row.direct += d;
            row.branch += bv;
            if (b.j == 0) row.j0 += bv;
            if (b.j == 2) row.j2 += bv;
            mass += std::abs(d);
        }
        row.direct /= scale;
        row.branch /= scale;
        row.j0 /= scale;
        row.j2 /= scale;
        rep.routes_agree = rep.routes_agree && std::abs(row.direct - row.branch) <= 1e-9 * std::max(1.0, mass / scale);
        xs.push_back(X);
        ys.push_back(std::abs(row.direct));
        rep.rows.push_back(row);
    }
    rep.slope = loglog_slope(xs, ys);
    return rep;
}

std::string FM0Report::to_json() const {
    using nlohmann::json;
    auto cj = [](std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
    json j;
    j["preset"] = preset;
    j["rows"] = json::array();
    for (const FM0Row& r : rows)
        j["rows"].push_back(
            {{"X", r.X}, {"direct", cj(r.direct)}, {"branch", cj(r.branch)}, {"j0", cj(r.j0)}, {"j2", cj(r.j2)}, {"moduli", r.moduli}});
    j["slope"] = slope ? json(*slope) : json(nullptr);
    j["j1_zero"] = j1_zero;
    j["tau_norm_nine"] = tau_norm_nine;
    j["routes_agree"] = routes_agree;
    return j.dump(2);
}

}  // namespace cubic
