#include "cubic/eisenstein.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <tuple>

namespace cubic {

i64 checked_mul(i64 x, i64 y) {
    i64 r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("Eisenstein coordinate overflow");
    return r;
}

i64 checked_add(i64 x, i64 y) {
    i64 r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("Eisenstein coordinate overflow");
    return r;
}

Eis operator+(const Eis& x, const Eis& y) { return {checked_add(x.a, y.a), checked_add(x.b, y.b)}; }
Eis operator-(const Eis& x, const Eis& y) { return x + (-y); }
Eis operator-(const Eis& x) { return {-x.a, -x.b}; }

Eis operator*(const Eis& x, const Eis& y) {
    // (a + bw)(c + dw) = ac - bd + (ad + bc - bd)w
    i64 bd = checked_mul(x.b, y.b);
    i64 re = checked_add(checked_mul(x.a, y.a), -bd);
    i64 im = checked_add(checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a)), -bd);
    return {re, im};
}

Eis& operator+=(Eis& x, const Eis& y) { return x = x + y; }
Eis& operator*=(Eis& x, const Eis& y) { return x = x * y; }

i64 norm(const Eis& x) {
    __int128 a = x.a, b = x.b;
    __int128 n = a * a - a * b + b * b;
    if (n > INT64_MAX) throw std::overflow_error("norm overflow");
    return static_cast<i64>(n);
}

Eis conj(const Eis& x) { return {x.a - x.b, -x.b}; }

Eis pow(Eis x, unsigned e) {
    Eis r = kOne;
    while (e) {
        if (e & 1) r *= x;
        e >>= 1;
        if (e) x *= x;
    }
    return r;
}

const std::vector<Eis>& units() {
    static const std::vector<Eis> u = {{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};
    return u;
}

bool is_unit(const Eis& x) { return norm(x) == 1; }

Eis unit_inverse(const Eis& u) { return conj(u); }

bool divisible_by_lambda(const Eis& x) { return mod(x.a + x.b, 3) == 0; }

bool is_primary(const Eis& x) { return mod(x.a, 3) == 1 && mod(x.b, 3) == 0; }

std::pair<Eis, Eis> primary_associate(const Eis& x) {
    if (divisible_by_lambda(x)) throw NotCoprimeToLambda();
    for (const Eis& u : units()) {
        Eis y = u * x;
        if (is_primary(y)) return {u, y};
    }
    throw std::logic_error("no primary associate");
}

static i64 round_div(__int128 num, i64 den) {
    // nearest integer to num/den, den > 0
    __int128 d = den;
    __int128 q = num >= 0 ? (2 * num + d) / (2 * d) : -((-2 * num + d) / (2 * d));
    return static_cast<i64>(q);
}

std::pair<Eis, Eis> divmod(const Eis& x, const Eis& c) {
    if (c.is_zero()) throw std::domain_error("division by zero");
    i64 n = norm(c);
    Eis cc = conj(c);
    __int128 a = x.a, b = x.b, p = cc.a, q = cc.b;
    __int128 u = a * p - b * q;
    __int128 v = a * q + b * p - b * q;
    Eis quo{round_div(u, n), round_div(v, n)};
    Eis r = x - quo * c;
    return {quo, r};
}

bool divides(const Eis& d, const Eis& x) {
    if (d.is_zero()) return x.is_zero();
    return divmod(x, d).second.is_zero();
}

Eis exact_div(const Eis& x, const Eis& d) {
    auto [q, r] = divmod(x, d);
    if (!r.is_zero()) throw std::domain_error("inexact division");
    return q;
}

static Eis canonical_associate(Eis g) {
    if (g.is_zero()) return g;
    int e = 0;
    while (divisible_by_lambda(g)) {
        g = exact_div(g, kLambda);
        ++e;
    }
    return pow(kLambda, e) * primary_associate(g).second;
}

Eis gcd(Eis x, Eis y) {
    if (x.is_zero() && y.is_zero()) throw std::domain_error("gcd(0, 0)");
    while (!y.is_zero()) {
        Eis r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return canonical_associate(x);
}

ExtGcd ext_gcd(Eis x, Eis y) {
    Eis s0 = kOne, s1 = Eis{0, 0}, t0 = Eis{0, 0}, t1 = kOne;
    while (!y.is_zero()) {
        auto [q, r] = divmod(x, y);
        x = y;
        y = r;
        Eis s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        Eis t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    return {x, s0, t0};
}

bool coprime(const Eis& x, const Eis& y) {
    if (x.is_zero() && y.is_zero()) return false;
    return is_unit(gcd(x, y));
}

bool canonical_less(const Eis& x, const Eis& y) {
    i64 nx = norm(x), ny = norm(y);
    if (nx != ny) return nx < ny;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

Eis Factorization::expand() const {
    Eis r = unit * pow(kLambda, lambda_exponent);
    for (const auto& [p, e] : factors) r *= pow(p, e);
    return r;
}

static Eis split_prime(i64 p) {
    i64 k = 1;
    for (i64 g = 2; k == 1; ++g) k = powmod(g, (p - 1) / 3, p);
    Eis pi = gcd(Eis{p, 0}, Eis{k, -1});
    if (norm(pi) != p) throw std::logic_error("split_prime failed");
    return pi;
}

Factorization factor(const Eis& x) {
    if (x.is_zero()) throw std::domain_error("factor(0)");
    Factorization f;
    Eis rest = x;
    for (auto [p, e] : factor_int(norm(x))) {
        if (p == 3) {
            while (divisible_by_lambda(rest)) {
                rest = exact_div(rest, kLambda);
                ++f.lambda_exponent;
            }
        } else if (p % 3 == 2) {
            Eis q{-p, 0};
            int k = 0;
            while (divides(q, rest)) {
                rest = exact_div(rest, q);
                ++k;
            }
            f.factors.push_back({q, k});
        } else {
            Eis pi = split_prime(p);
            for (Eis cand : {pi, primary_associate(conj(pi)).second}) {
                int k = 0;
                while (divides(cand, rest)) {
                    rest = exact_div(rest, cand);
                    ++k;
                }
                if (k) f.factors.push_back({cand, k});
            }
        }
    }
    if (!is_unit(rest)) throw std::logic_error("factor: leftover non-unit");
    f.unit = rest;
    std::sort(f.factors.begin(), f.factors.end(),
              [](const auto& l, const auto& r) { return canonical_less(l.first, r.first); });
    return f;
}

bool is_prime(const Eis& x) {
    if (x.is_zero() || is_unit(x)) return false;
    auto f = factor(x);
    return (f.lambda_exponent == 1 && f.factors.empty()) ||
           (f.lambda_exponent == 0 && f.factors.size() == 1 && f.factors[0].second == 1);
}

int mobius(const Eis& c) {
    auto f = factor(c);
    if (f.lambda_exponent > 1) return 0;
    int s = f.lambda_exponent ? -1 : 1;
    for (const auto& [p, e] : f.factors) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

i64 euler_phi(const Eis& c) {
    auto f = factor(c);
    i64 r = 1;
    if (f.lambda_exponent) r = 2 * powmod(3, f.lambda_exponent - 1, INT64_MAX);
    for (const auto& [p, e] : f.factors) {
        i64 np = norm(p);
        i64 t = np - 1;
        for (int i = 1; i < e; ++i) t = checked_mul(t, np);
        r = checked_mul(r, t);
    }
    return r;
}

bool is_squarefree(const Eis& c) { return mobius(c) != 0; }

bool is_squarefull(const Eis& c) {
    auto f = factor(c);
    if (f.lambda_exponent == 1) return false;
    for (const auto& [p, e] : f.factors)
        if (e < 2) return false;
    return true;
}

std::vector<Eis> primary_divisors(const Eis& c) {
    auto f = factor(c);
    if (f.lambda_exponent) throw NotCoprimeToLambda();
    std::vector<Eis> out{kOne};
    for (const auto& [p, e] : f.factors) {
        std::vector<Eis> next;
        for (const Eis& d : out) {
            Eis t = d;
            for (int i = 0; i <= e; ++i) {
                next.push_back(t);
                t *= p;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<Eis> elements_up_to(i64 max_norm) {
    std::vector<Eis> out;
    i64 bound = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(max_norm) / 3.0)) + 2;
    for (i64 a = -bound; a <= bound; ++a)
        for (i64 b = -bound; b <= bound; ++b) {
            Eis x{a, b};
            i64 n = norm(x);
            if (n >= 1 && n <= max_norm) out.push_back(x);
        }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<Eis> primary_elements(i64 max_norm) {
    std::vector<Eis> out;
    for (const Eis& x : elements_up_to(max_norm))
        if (is_primary(x)) out.push_back(x);
    return out;
}

std::vector<Eis> primary_primes(i64 max_norm) {
    std::vector<Eis> out;
    for (const Eis& x : primary_elements(max_norm))
        if (is_prime(x)) out.push_back(x);
    return out;
}

Phase additive_character(const Eis& x, const Eis& c) {
    if (c.is_zero()) throw std::domain_error("additive_character: zero modulus");
    i64 n = norm(c);
    __int128 v = static_cast<__int128>(x.b) * c.a - static_cast<__int128>(x.a) * c.b;
    i64 num = static_cast<i64>(((v % n) + n) % n);
    i64 g = std::gcd(num, n);
    return {num / g, n / g};
}

std::string to_string(const Eis& x) {
    if (x.b == 0) return std::to_string(x.a);
    std::string w;
    if (x.b == 1) w = "w";
    else if (x.b == -1) w = "-w";
    else w = std::to_string(x.b) + "*w";
    if (x.a == 0) return w;
    return std::to_string(x.a) + (x.b > 0 ? "+" : "") + w;
}

Eis parse_eis(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty element");
    Eis out;
    size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (any) {
            throw std::invalid_argument("bad element: " + text);
        }
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        i64 coef = 1;
        bool has_num = j > i;
        if (has_num) coef = std::stoll(s.substr(i, j - i));
        i = j;
        bool is_w = false;
        if (i < s.size() && s[i] == '*') {
            ++i;
            if (i >= s.size() || s[i] != 'w') throw std::invalid_argument("bad element: " + text);
        }
        if (i < s.size() && s[i] == 'w') {
            is_w = true;
            ++i;
        }
        if (!has_num && !is_w) throw std::invalid_argument("bad element: " + text);
        if (is_w) out.b += sign * coef;
        else out.a += sign * coef;
        any = true;
    }
    return out;
}

i64 mod(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

i64 powmod(i64 base, u64 e, i64 m) {
    unsigned __int128 r = 1 % m, b = static_cast<u64>(mod(base, m));
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

i64 inv_mod(i64 x, i64 m) {
    i64 a = mod(x, m), b = m, s0 = 1, s1 = 0;
    while (b) {
        i64 q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    if (a != 1) throw std::domain_error("inv_mod: not invertible");
    return mod(s0, m);
}

std::vector<std::pair<i64, int>> factor_int(i64 n) {
    if (n <= 0) throw std::domain_error("factor_int: nonpositive");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool is_prime_int(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace cubic
