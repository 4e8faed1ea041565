#include "cubic/expsums.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace cubic {

namespace {

// phase(z * x) = x.a * first + x.b * second (mod N)
std::pair<i64, i64> linear_phase(const ResidueRing& ring, const Eis& z) {
    Eis zr = ring.reduce(z);
    return {ring.phase(zr), ring.phase(ring.mul(zr, kOmega))};
}

i64 apply(const std::pair<i64, i64>& lp, const Eis& x, i64 n) {
    return (x.a % n * lp.first + x.b % n * lp.second) % n;
}

Eis pi_power(const Eis& pi, int e) { return pow(pi, static_cast<unsigned>(e)); }

void require_coprime(const Eis& x, const Eis& c, const char* what) {
    if (!coprime(x, c)) throw PreconditionViolated(what);
}

std::string str(const Eis& x) { return to_string(x); }

RootSum symbol_rs(const CubicSymbol& s) { return s.as_rootsum(); }

}  // namespace

namespace kernel {

RootSum e_of(const ResidueRing& ring, const Eis& z) { return RootSum::root(ring.phase(z), ring.size()); }

std::vector<std::int8_t> power_table(const std::vector<std::int8_t>& chi, int e) {
    std::vector<std::int8_t> out(chi.size());
    for (size_t i = 0; i < chi.size(); ++i) out[i] = chi[i] < 0 ? -1 : static_cast<std::int8_t>(mod(chi[i] * e, 3));
    return out;
}

RootSum twisted_double(const ResidueRing& ring, const std::vector<std::int8_t>& chi, const Eis& beta,
                       const Eis& w, const Eis& M, const Eis& L) {
    const i64 n = ring.size();
    const i64 m3 = 3 * n;
    auto inv = ring.inverse_table();
    Eis bw = ring.mul(beta, ring.inverse(w));
    auto lb = linear_phase(ring, bw);
    std::vector<i64> outer(n, -1);
    for (i64 a = 0; a < n; ++a) {
        if (chi[a] < 0 || inv[a] < 0) continue;
        outer[a] = (3 * apply(lb, ring.element(inv[a]), n) + n * chi[a]) % m3;
    }
    auto ll = linear_phase(ring, L);
    std::vector<i64> hist(m3, 0);
    // 32-bit counts keep the scatter target in cache; each x adds at most n to a bin
    std::vector<std::uint32_t> h32(m3, 0);
    const i64 flush_every = std::max<i64>(1, 4000000000LL / n);
    const i64 row = ring.row_length(), rows = ring.rows();
    for (i64 xi = 0; xi < n; ++xi) {
        if (xi % flush_every == 0 && xi > 0)
            for (i64 t = 0; t < m3; ++t) hist[t] += std::exchange(h32[t], 0);
        Eis x = ring.element(xi);
        Eis y = ring.mul(ring.mul(x, x), x);
        auto d = linear_phase(ring, ring.mul(M, y));
        i64 base = apply(ll, x, n);
        for (i64 r = 0; r < rows; ++r) {
            i64 ph = (base + r % n * d.second) % n;
            const i64* o = outer.data() + r * row;
            for (i64 i = 0; i < row; ++i) {
                if (o[i] >= 0) {
                    i64 t = o[i] + 3 * ph;
                    if (t >= m3) t -= m3;
                    ++h32[t];
                }
                ph += d.first;
                if (ph >= n) ph -= n;
            }
        }
    }
    for (i64 t = 0; t < m3; ++t) hist[t] += h32[t];
    RootSum out(m3);
    out.mult = std::move(hist);
    return out;
}

}  // namespace kernel

RootSum t_sum(const Eis& A, const Eis& B, const Eis& c) {
    ResidueRing ring(c);
    const i64 n = ring.size();
    auto la = linear_phase(ring, A), lb = linear_phase(ring, B);
    RootSum out(n);
    for (i64 xi = 0; xi < n; ++xi) {
        Eis x = ring.element(xi);
        Eis y = ring.mul(ring.mul(x, x), x);
        out.add(apply(la, y, n) + apply(lb, x, n));
    }
    return out;
}

bool t_sum_crt_check(const Eis& A, const Eis& B, const Eis& c1, const Eis& c2) {
    if (!coprime(c1, c2)) throw PreconditionViolated("t_sum_crt_check: moduli not coprime");
    RootSum lhs = t_sum(A, B, c1 * c2);
    RootSum rhs = t_sum(A * c2 * c2, B, c1) * t_sum(A * c1 * c1, B, c2);
    return lhs == rhs;
}

bool t_zero_power_reduction(const Eis& A, const Eis& pi, int k) {
    if (divides(pi, A * Eis{3, 0})) throw PreconditionViolated("t_zero_power_reduction: pi divides 3A");
    i64 np = norm(pi);
    return t_sum(A, {0, 0}, pi_power(pi, k + 3)) == t_sum(A, {0, 0}, pi_power(pi, k)).scaled(np * np);
}

RootSum t_zero_decomposition_value(const Eis& A, const Eis& c) {
    RootSum total = RootSum::scalar(0);
    for (const Eis& c3 : primary_divisors(c)) {
        Eis c33 = c3 * c3 * c3;
        if (!divides(c33, c)) continue;
        Eis rest = exact_div(c, c33);
        auto [u, restp] = primary_associate(rest);
        (void)u;
        i64 n3 = norm(c3);
        for (const Eis& c1 : primary_divisors(restp)) {
            Eis c2 = exact_div(restp, c1);
            total = total + (gauss_sum(1, A, c1) * gauss_sum(1, A, c2).conj()).scaled(n3 * n3);
        }
    }
    return total;
}

bool t_zero_decomposition(const Eis& A, const Eis& c) {
    if (!coprime(A, c)) throw PreconditionViolated("t_zero_decomposition: (A, c) != 1");
    if (divisible_by_lambda(c)) throw ModulusDivisibleByLambda();
    return t_sum(A, {0, 0}, c) == t_zero_decomposition_value(A, primary_associate(c).second);
}

RootSum kloosterman(const Eis& mu, const Eis& nu, const Eis& c) {
    if (!is_primary(c)) throw ModulusNotPrimary();
    ResidueRing ring(c);
    const i64 n = ring.size();
    if (n == 1) return RootSum::scalar(1);
    auto chi = symbol_table(ring);
    auto inv = ring.inverse_table();
    auto lm = linear_phase(ring, mu), ln = linear_phase(ring, nu);
    RootSum out(3 * n);
    for (i64 a = 0; a < n; ++a) {
        if (inv[a] < 0) continue;
        i64 ph = (apply(lm, ring.element(a), n) + apply(ln, ring.element(inv[a]), n)) % n;
        out.add(3 * ph + n * chi[a]);
    }
    return out;
}

double weil_ratio(const Eis& mu, const Eis& nu, const Eis& c) {
    Eis g = c;
    if (!mu.is_zero()) g = gcd(g, mu);
    if (!nu.is_zero()) g = gcd(g, nu);
    const double s = std::norm(kloosterman(mu, nu, c).value());
    return s / static_cast<double>(norm(g)) / static_cast<double>(norm(c));
}

i64 divisor_count(const Eis& c) {
    i64 t = 1;
    Factorization f = factor(c);
    for (const auto& [p, k] : f.factors) t *= k + 1;
    return t * (f.lambda_exponent + 1);
}

KatzSides katz_sides(const Eis& x, const Eis& m, const Eis& c) {
    if (!is_primary(c)) throw ModulusNotPrimary();
    if (!coprime(x * m, c)) throw PreconditionViolated("verify_katz: (xm, c) != 1");
    KatzSides s;
    s.lhs = t_sum(x, m, c);
    ResidueRing ring(c);
    const i64 n = ring.size();
    auto chi = symbol_table(ring);
    auto inv = ring.inverse_table();
    Eis xinv = ring.inverse(x);
    int cx = chi[ring.index(xinv)];
    // m^3 (27 x)^-1, to be multiplied by y^-1
    Eis k = ring.mul(ring.mul(ring.mul(m, m), m), ring.inverse(ring.mul(Eis{27, 0}, x)));
    auto lk = linear_phase(ring, k);
    RootSum rhs(3 * n);
    for (i64 y = 0; y < n; ++y) {
        if (inv[y] < 0) continue;
        i64 ph = mod(ring.phase(ring.element(y)) - apply(lk, ring.element(inv[y]), n), n);
        rhs.add(3 * ph + n * ((cx + chi[y]) % 3));
    }
    if (n == 1) rhs = RootSum::scalar(1);
    s.rhs = rhs;
    s.agree = s.lhs == s.rhs;
    return s;
}

bool verify_katz(const Eis& x, const Eis& m, const Eis& c) { return katz_sides(x, m, c).agree; }

// ---------------------------------------------------------------- local evaluations

namespace {

void finish(LocalEval& ev) { ev.agree = ev.closed_form == ev.brute; }

// closed_form carries the pinned reading, the other one is reported alongside
void finish_with_readings(LocalEval& ev, const std::string& pinned, const RootSum& pinned_value,
                          const std::string& other, const RootSum& other_value) {
    ev.closed_form = pinned_value;
    ev.pinned = pinned;
    ev.has_alternative = true;
    ev.alternative_label = other;
    ev.alternative = other_value;
    ev.agree = pinned_value == ev.brute;
    ev.alternative_agree = other_value == ev.brute;
}

RootSum g1(const Eis& pi) { return gauss_sum(1, kOne, pi); }

i64 ipow(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

// T(A, 0, pi^k) through T(A,0,pi^{k+3}) = N^2 T(A,0,pi^k) and the values at k = 0, 1, 2
RootSum t_zero_closed(const Eis& A, const Eis& pi, int k) {
    const i64 np = norm(pi);
    RootSum base;
    switch (k % 3) {
    case 0: base = RootSum::scalar(1); break;
    case 1: {
        RootSum g = gauss_sum(1, A, pi);
        base = g + g.conj();
        break;
    }
    default: base = RootSum::scalar(np);
    }
    return base.scaled(ipow(np, 2 * (k / 3)));
}

namespace {

// sum_{x mod pi^k} e((A x^3 - pi^j B x) / pi^k) by peeling x = u + pi^{k-1} t
RootSum zerob_derived(const Eis& A, const Eis& B, const Eis& pi, int j, int k) {
    const i64 np = norm(pi);
    if (k <= 0) return RootSum::scalar(1);
    if (j >= k) return t_zero_closed(A, pi, k);
    if (j == 0) return t_sum(A, -B, pi_power(pi, k));
    if (k == 2) return RootSum::scalar(np);
    if (j == 1) return RootSum::scalar(0);
    return zerob_derived(A, B, pi, j - 2, k - 3).scaled(np * np);
}

}  // namespace

LocalEval eval_zerob(const Eis& A, const Eis& B, const Eis& pi, int j, int k) {
    if (j < 1 || k < 1) throw PreconditionViolated("eval_zerob: need j, k >= 1");
    require_coprime(A * B, pi, "eval_zerob: (AB, pi) != 1");
    LocalEval ev;
    ev.lemma = "zerob";
    ev.params = {{"A", str(A)}, {"B", str(B)}, {"pi", str(pi)}, {"j", std::to_string(j)}, {"k", std::to_string(k)}};
    ev.brute = t_sum(A, -(pi_power(pi, j) * B), pi_power(pi, k));
    const i64 np = norm(pi);
    auto T = [&](const Eis& b, int e) {
        if (e == 0) return RootSum::scalar(1);
        return t_sum(A, b, pi_power(pi, e));
    };
    // rows as printed
    RootSum table;
    bool table_defined = true;
    if (2 * j <= k && j % 2 == 0) {
        ev.row = "j<=k/2, j even";
        table = T(B, k - 3 * j / 2).scaled(ipow(np, j));
    } else if (2 * j <= k && k >= 3) {
        ev.row = "j<=k/2, k>=3, j odd";
        table = RootSum::scalar(0);
    } else if (k == 2 && j == 1) {
        ev.row = "k=2, j=1";
        table = RootSum::scalar(np);
    } else if (k % 2 == 0) {
        int h = j - k / 2;
        int e = k - 3 * ceil_div(k, 4);
        if (4 * h <= k) {
            ev.row = "k even, 0<h<=k/4";
            int s = h + k / 4 - ceil_div(k, 4);
            if (e < 0 || s < 0) table_defined = false;
            else table = T(B * pi_power(pi, s), e).scaled(ipow(np, k / 2));
        } else {
            ev.row = "k even, h>k/4";
            if (e < 0) table_defined = false;
            else table = T({0, 0}, e).scaled(ipow(np, k / 2));
        }
    } else {
        int h = j - (k + 1) / 2;
        int e = floor_div(k - 3, 4);
        if (h >= e) {
            ev.row = "k odd, h>=floor((k-3)/4)";
            if (e < 0) table_defined = false;
            else table = T({0, 0}, e).scaled(ipow(np, (k + 1) / 2));
        } else {
            ev.row = "k odd, h<floor((k-3)/4)";
            int s = h + (k + 1) / 4 - ceil_div(k + 1, 4);
            if (s < 0) table_defined = false;
            else table = T(B * pi_power(pi, s), e).scaled(ipow(np, (k + 1) / 2));
        }
    }
    if (!table_defined) {
        ev.row += " (undefined)";
        table = RootSum::scalar(0);
    }
    finish_with_readings(ev, "derived", zerob_derived(A, B, pi, j, k), "table", table);
    return ev;
}

namespace {

// sum_{A mod pi^k, reduced} (A/pi^k)_3 e(beta (wA)^-1 / pi^k) sum_x e((A w^2 x^3 + L x) / pi^k)
RootSum local_double(const Eis& pi, int k, const Eis& beta, const Eis& w, const Eis& L) {
    ResidueRing ring(pi_power(pi, k));
    return kernel::twisted_double(ring, symbol_table(ring), beta, w, w * w, L);
}

RootSum sym(const Eis& x, const Eis& c) { return symbol_rs(cubic_symbol(x, c)); }

// e(z / c) with z given up to inverses mod c
RootSum e_mod(const Eis& z, const Eis& c) { return kernel::e_of(ResidueRing(c), z); }

// B^3 (27 w)^-1 mod c
Eis cube_over_27w(const Eis& B, const Eis& w, const Eis& c) {
    ResidueRing ring(c);
    return ring.mul(ring.mul(ring.mul(B, B), B), ring.inverse(ring.mul({27, 0}, w)));
}

std::vector<std::pair<std::string, std::string>> params_of(
    std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& [k, v] : kv) out.emplace_back(k, v);
    return out;
}

std::string istr(int v) { return std::to_string(v); }

}  // namespace

LocalEval eval_pprime(const Eis& b, const Eis& w, const Eis& B, const Eis& pi, int j, int k) {
    if (j < 1 || k < 1) throw PreconditionViolated("eval_pprime: need j, k >= 1");
    require_coprime(w * B, pi, "eval_pprime: (wB, pi) != 1");
    require_coprime(b, pi, "eval_pprime: (b, pi) != 1");
    LocalEval ev;
    ev.lemma = "pprime";
    ev.params = params_of({{"b", str(b)}, {"w", str(w)}, {"B", str(B)}, {"pi", str(pi)}, {"j", istr(j)}, {"k", istr(k)}});
    ev.brute = local_double(pi, k, b, w, pi_power(pi, std::min(j, k)) * B);
    // for k = 1 every j >= 1 kills the linear term, as at j = k = 1
    if (k == 1) {
        ev.row = j == 1 ? "j=k=1" : "j>k=1";
        ResidueRing ring(pi);
        RootSum mu_g = g1(pi).scaled(mobius(pi));
        ev.closed_form = sym(w, pi) * mu_g + sym(ring.inverse(b), pi).scaled(norm(pi));
    } else {
        ev.row = j < k ? "1<=j<k" : "1<j=k";
        if (j > k) ev.row = "j>k>1";
        ev.closed_form = RootSum::scalar(0);
    }
    finish(ev);
    return ev;
}

LocalEval eval_ppro(int l, const Eis& w, const Eis& B, const Eis& pi, int k) {
    if (k < 1 || l < k) throw PreconditionViolated("eval_ppro: need l >= k >= 1");
    require_coprime(w * B, pi, "eval_ppro: (wB, pi) != 1");
    LocalEval ev;
    ev.lemma = "ppro";
    ev.params = params_of({{"l", istr(l)}, {"w", str(w)}, {"B", str(B)}, {"pi", str(pi)}, {"k", istr(k)}});
    // b = pi^l only matters mod pi^k
    ev.brute = local_double(pi, k, pi_power(pi, k), w, B);
    if (k == 1) {
        ev.row = "l>=k=1";
        ev.closed_form = g1(pi).scaled(mobius(pi)) * sym(w, pi);
    } else {
        ev.row = "l>=k>1";
        ev.closed_form = RootSum::scalar(0);
    }
    finish(ev);
    return ev;
}

LocalEval eval_aco0(const Eis& w, const Eis& B, const Eis& pi, int j, int k) {
    if (j < 1 || k < 1) throw PreconditionViolated("eval_aco0: need j, k >= 1");
    require_coprime(w * B, pi, "eval_aco0: (wB, pi) != 1");
    LocalEval ev;
    ev.lemma = "aco0";
    ev.params = params_of({{"w", str(w)}, {"B", str(B)}, {"pi", str(pi)}, {"j", istr(j)}, {"k", istr(k)}});
    ev.brute = local_double(pi, k, pi, w, pi_power(pi, std::min(j, k)) * B);
    const i64 np = norm(pi);
    RootSum chi_w = sym(w, pi), chi_wbar = chi_w.conj();
    RootSum stmt, proof;
    if (k == 1) {
        ev.row = "j>=1, k=1";
        stmt = (chi_w * g1(pi)).scaled(np - 1);
        proof = (chi_wbar * g1(pi)).scaled(np - 1);
    } else if (k == 2) {
        ev.row = "j>=1, k=2";
        stmt = (chi_w * g1(pi)).scaled(np * np);
        proof = (chi_wbar * g1(pi)).scaled(np);
    } else {
        ev.row = "k>2";
        stmt = proof = RootSum::scalar(0);
    }
    finish_with_readings(ev, "statement (w/p)", stmt, "proof (w^-1/p)", proof);
    return ev;
}

LocalEval eval_aco01(const Eis& w, const Eis& B, const Eis& pi, int j, int k) {
    if (j < 1 || k < 1) throw PreconditionViolated("eval_aco01: need j, k >= 1");
    require_coprime(w * B, pi, "eval_aco01: (wB, pi) != 1");
    LocalEval ev;
    ev.lemma = "aco01";
    ev.params = params_of({{"w", str(w)}, {"B", str(B)}, {"pi", str(pi)}, {"j", istr(j)}, {"k", istr(k)}});
    ev.brute = local_double(pi, k, pi_power(pi, 3), w, pi_power(pi, std::min(j, k)) * B);
    const i64 np = norm(pi);
    RootSum chi_w = sym(w, pi);
    RootSum mu_g = g1(pi).scaled(mobius(pi));
    RootSum stmt, proof;
    bool two = false;
    if (k == 1) {
        ev.row = "j>=1, k=1";
        stmt = (chi_w * g1(pi)).scaled(np - 1);
        proof = (chi_w.conj() * g1(pi)).scaled(np - 1);
        two = true;
    } else if (k == 3 && j >= 2) {
        ev.row = "j>=2, k=3";
        stmt = RootSum::scalar(euler_phi(pi_power(pi, 3)) * np * np);
    } else if (k == 4 && j == 2) {
        ev.row = "j=2, k=4";
        stmt = (chi_w * mu_g + e_mod(cube_over_27w(B, w, pi), pi).scaled(np)).scaled(ipow(np, 5));
    } else if (k == 4 && j >= 3) {
        ev.row = "j>=3, k=4";
        stmt = (chi_w * mu_g + RootSum::scalar(np)).scaled(ipow(np, 5));
    } else if (k >= 5 && j == 2) {
        ev.row = "j=2, k>=5";
        Eis c = pi_power(pi, k - 3);
        stmt = e_mod(cube_over_27w(B, w, c), c).scaled(ipow(np, k + 2));
    } else {
        ev.row = "other (zero)";
        stmt = RootSum::scalar(0);
    }
    if (two) {
        finish_with_readings(ev, "statement (w/p)", stmt, "proof (w^-1/p)", proof);
    } else {
        ev.closed_form = stmt;
        finish(ev);
    }
    return ev;
}

LocalEval eval_hurt(const Eis& m, const Eis& b, const Eis& w, const Eis& pi, int k, int r) {
    if (k < 1 || r < 0 || r > k) throw PreconditionViolated("eval_hurt: need 0 <= r <= k, k >= 1");
    if (k == 1 && r == 0) throw PreconditionViolated("eval_hurt: k = 1 only has the combined r = k row");
    require_coprime(m * b * w, pi, "eval_hurt: (mbw, pi) != 1");
    LocalEval ev;
    ev.lemma = "hurt";
    ev.params = params_of({{"m", str(m)}, {"b", str(b)}, {"w", str(w)}, {"pi", str(pi)}, {"k", istr(k)}, {"r", istr(r)}});
    const Eis c = pi_power(pi, k);
    ResidueRing ring(c);
    const i64 n = ring.size();
    auto chi = symbol_table(ring);
    // y0 = m^3 (27 b w)^-1 mod c
    Eis y0 = ring.mul(ring.mul(ring.mul(m, m), m), ring.inverse(ring.mul(ring.mul({27, 0}, b), w)));
    int cw = chi[ring.index(w)];
    RootSum brute(3 * n);
    for (int rr = (k == 1 ? 0 : r); rr <= r; ++rr) {
        Eis q = pi_power(pi, rr);
        int mu = mobius(pi_power(pi, k - rr));
        if (mu == 0) continue;
        i64 nq = norm(q);
        for (i64 y = 0; y < n; ++y) {
            if (chi[y] < 0) continue;
            if (!divides(q, ring.element(y) - y0)) continue;
            brute.add(3 * ring.phase(ring.element(y)) + n * ((chi[y] + cw) % 3), mu * nq);
        }
    }
    ev.brute = brute;
    RootSum main = (sym(ring.inverse(b), c) * kernel::e_of(ring, y0)).scaled(n);
    if (r < k) {
        ev.row = "r<k";
        ev.closed_form = RootSum::scalar(0);
    } else if (k > 1) {
        ev.row = "r=k>1";
        ev.closed_form = main;
    } else {
        ev.row = "r=k=1";
        ev.closed_form = main + sym(w, pi) * g1(pi).scaled(mobius(pi));
    }
    finish(ev);
    return ev;
}

LocalEval eval_sim(const Eis& w, const Eis& c, const Eis& m, const Eis& pi, int i, int j, int k) {
    if (!is_primary(c)) throw ModulusNotPrimary();
    if (!is_squarefull(c)) throw PreconditionViolated("eval_sim: c not squarefull");
    require_coprime(w * c * m, pi, "eval_sim: (wcm, pi) != 1");
    require_coprime(w * m, c, "eval_sim: (wm, c) != 1");
    LocalEval ev;
    ev.lemma = "sim";
    ev.params = params_of({{"w", str(w)}, {"c", str(c)}, {"m", str(m)}, {"pi", str(pi)},
                           {"i", istr(i)}, {"j", istr(j)}, {"k", istr(k)}});
    ResidueRing ring(c);
    const Eis pinv = ring.inverse(pi);
    auto ppow = [&](int e) { return e >= 0 ? ring.pow(pi, static_cast<u64>(e)) : ring.pow(pinv, static_cast<u64>(-e)); };
    ev.brute = kernel::twisted_double(ring, symbol_table(ring), ppow(i + k), w, ring.mul(ppow(k), ring.mul(w, w)),
                                      -(ring.mul(ppow(j + k), m)));
    Eis arg = ring.mul(ppow(k + 3 * j - i), cube_over_27w(m, w, c));
    ev.row = "c squarefull";
    RootSum chi = sym(ppow(-i), c);
    finish_with_readings(ev, "derived e(-arg/c)", (chi * kernel::e_of(ring, -arg)).scaled(ring.size()),
                         "printed e(arg/c)", (chi * kernel::e_of(ring, arg)).scaled(ring.size()));
    return ev;
}

LocalEval m0_reduction(const Eis& b, const Eis& c) {
    if (!is_primary(c)) throw ModulusNotPrimary();
    if (!is_squarefree(c)) throw PreconditionViolated("m0_reduction: c not squarefree");
    if (divisible_by_lambda(b) && !b.is_zero()) throw PreconditionViolated("m0_reduction: 3 | b");
    LocalEval ev;
    ev.lemma = "m0";
    ev.params = params_of({{"b", str(b)}, {"c", str(c)}});
    ResidueRing ring(c);
    const i64 n = ring.size();
    auto chi = symbol_table(ring);
    auto inv = ring.inverse_table();
    auto lb = linear_phase(ring, b);
    // T(x, 0, c) depends on x only through its class, tabulated per index
    RootSum brute = RootSum::scalar(0);
    std::vector<i64> cubes(n);
    for (i64 t = 0; t < n; ++t) {
        Eis tt = ring.element(t);
        cubes[t] = ring.index(ring.mul(ring.mul(tt, tt), tt));
    }
    for (i64 x = 0; x < n; ++x) {
        if (inv[x] < 0) continue;
        Eis xe = ring.element(x);
        auto lx = linear_phase(ring, xe);
        RootSum tx(n);
        for (i64 t = 0; t < n; ++t) tx.add(apply(lx, ring.element(cubes[t]), n));
        RootSum outer = RootSum::root(3 * apply(lb, ring.element(inv[x]), n) + n * chi[x], 3 * n);
        brute = brute + outer * tx;
    }
    ev.brute = brute;
    RootSum printed = RootSum::scalar(0);
    for (const Eis& c1 : primary_divisors(c)) {
        Eis c2 = exact_div(c, c1);
        printed = printed + (gauss_sum(1, b, c1).scaled(mobius(c1)) * sym(b * b, c2)).scaled(norm(c2));
    }
    RootSum derived = m0_closed(b, c);
    ev.row = coprime(b, c) ? "(b,c)=1" : "(b,c)>1";
    finish_with_readings(ev, "derived R(b,c1)g(1,c1)(c1/c2)(b^2/c2)N(c2)", derived,
                         "printed mu(c1)g(b,c1)(b^2/c2)N(c2)", printed);
    return ev;
}

RootSum m0_closed(const Eis& b, const Eis& c) {
    if (!is_primary(c)) throw ModulusNotPrimary();
    if (!is_squarefree(c)) throw PreconditionViolated("m0_closed: c not squarefree");
    RootSum out = RootSum::scalar(0);
    for (const Eis& c1 : primary_divisors(c)) {
        Eis c2 = exact_div(c, c1);
        out = out + (ramanujan_sum(b, c1) * gauss_sum(1, kOne, c1) * sym(c1, c2) * sym(b * b, c2)).scaled(norm(c2));
    }
    return out;
}

RootSum m0_sum(const Eis& b, const Eis& c) {
    if (!is_primary(c)) throw ModulusNotPrimary();
    ResidueRing ring(c);
    const i64 n = ring.size();
    if (n == 1) return RootSum::scalar(1);
    // T(x, 0, c) = prod_i T(x m_i^2, 0, q_i) over c = prod q_i, m_i = c / q_i, and each local factor
    // depends on x only through the cubic class of x m_i^2 mod pi_i
    struct Local {
        ResidueRing prime_ring;
        std::vector<std::int8_t> chi;
        int shift;
        RootSum by_class[3];
    };
    std::vector<Local> locals;
    for (const auto& [pi, k] : factor(c).factors) {
        Eis q = pi_power(pi, k);
        Local l{ResidueRing(pi), {}, 0, {}};
        l.chi = symbol_table(l.prime_ring);
        CubicSymbol sm = cubic_symbol(exact_div(c, q), pi);
        l.shift = 2 * sm.j;
        for (int j = 0; j < 3; ++j) {
            for (i64 i = 0; i < l.prime_ring.size(); ++i)
                if (l.chi[static_cast<size_t>(i)] == j) {
                    l.by_class[j] = t_sum(l.prime_ring.element(i), {0, 0}, q);
                    break;
                }
        }
        locals.push_back(std::move(l));
    }
    auto chi = symbol_table(ring);
    auto inv = ring.inverse_table();
    auto lb = linear_phase(ring, b);
    std::map<i64, RootSum> buckets;
    for (i64 x = 0; x < n; ++x) {
        if (inv[x] < 0) continue;
        Eis xe = ring.element(x);
        i64 key = 0;
        for (const Local& l : locals)
            key = 3 * key + mod(l.chi[static_cast<size_t>(l.prime_ring.index(xe))] + l.shift, 3);
        auto it = buckets.try_emplace(key, RootSum(3 * n)).first;
        it->second.add(3 * apply(lb, ring.element(inv[x]), n) + n * chi[x]);
    }
    RootSum out = RootSum::scalar(0);
    for (const auto& [key, outer] : buckets) {
        RootSum t = RootSum::scalar(1);
        i64 k = key;
        for (size_t i = locals.size(); i-- > 0;) {
            t = t * locals[i].by_class[k % 3];
            k /= 3;
        }
        out = out + outer * t;
    }
    return out;
}

LocalEval psq_eval(const Eis& b, const Eis& z, const Eis& pi, int k) {
    if (k < 2) throw PreconditionViolated("psq_eval: need k > 1");
    require_coprime(z * b, pi, "psq_eval: (zb, pi) != 1");
    LocalEval ev;
    ev.lemma = "psq";
    ev.params = params_of({{"b", str(b)}, {"z", str(z)}, {"pi", str(pi)}, {"k", istr(k)}});
    const Eis c = pi_power(pi, k);
    ResidueRing ring(c);
    const i64 n = ring.size();
    const int h = k % 3;
    auto chi = symbol_table(ring);
    auto inv = ring.inverse_table();
    auto lb = linear_phase(ring, b);
    RootSum brute = RootSum::scalar(0);
    if (h == 0) {
        RootSum s(3 * n);
        for (i64 x = 0; x < n; ++x)
            if (inv[x] >= 0) s.add(3 * apply(lb, ring.element(inv[x]), n) + n * chi[x]);
        brute = s;
    } else {
        // group x by T(zx, 0, pi^h), which only depends on x mod pi^h
        ResidueRing small(pi_power(pi, h));
        std::vector<RootSum> outer(small.size(), RootSum(3 * n));
        for (i64 x = 0; x < n; ++x)
            if (inv[x] >= 0)
                outer[small.index(ring.element(x))].add(3 * apply(lb, ring.element(inv[x]), n) + n * chi[x]);
        for (i64 s = 0; s < small.size(); ++s) {
            if (outer[s].mass() == 0) continue;
            brute = brute + outer[s] * t_sum(small.mul(z, small.element(s)), {0, 0}, small.modulus());
        }
    }
    ev.brute = brute;
    ev.row = "k=" + istr(k) + ", h=" + istr(h);
    ev.closed_form = RootSum::scalar(0);
    finish(ev);
    return ev;
}

bool squarefull_m0_vanishing(const Eis& b, const Eis& z, const Eis& pi, int k) {
    LocalEval ev = psq_eval(b, z, pi, k);
    return ev.agree && ev.brute.exact_zero();
}

}  // namespace cubic
