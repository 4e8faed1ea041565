#include "cubic/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cubic {

CubicSymbol CubicSymbol::pow(int e) const {
    if (zero()) return e == 0 ? omega(0) : *this;
    return omega(j * e);
}

Eis CubicSymbol::as_eis() const {
    if (zero()) return {0, 0};
    if (j == 0) return kOne;
    if (j == 1) return kOmega;
    return {-1, -1};
}

RootSum CubicSymbol::as_rootsum() const {
    if (zero()) return RootSum::scalar(0);
    return RootSum::root(j, 3);
}

std::string CubicSymbol::to_string() const { return zero() ? "zero" : "w^" + std::to_string(j); }

namespace {

// j with x^((N-1)/3) = w^j mod pi, or -1 when pi | x
int prime_symbol(const ResidueRing& ring, const Eis& x) {
    Eis r = ring.reduce(x);
    if (r.is_zero()) return -1;
    Eis t = ring.pow(r, static_cast<u64>((ring.size() - 1) / 3));
    i64 idx = ring.index(t);
    for (int j = 0; j < 3; ++j)
        if (ring.index(pow(kOmega, j)) == idx) return j;
    throw std::logic_error("prime_symbol: not a cube root of unity");
}

using Table = std::shared_ptr<const std::vector<std::int8_t>>;

Table prime_table(const Eis& pi) {
    static std::mutex mu;
    static std::map<std::pair<i64, i64>, Table> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({pi.a, pi.b});
        if (it != cache.end()) return it->second;
    }
    ResidueRing ring(pi);
    auto t = std::make_shared<std::vector<std::int8_t>>(ring.size(), -1);
    for (i64 i = 0; i < ring.size(); ++i) (*t)[i] = static_cast<std::int8_t>(prime_symbol(ring, ring.element(i)));
    std::lock_guard<std::mutex> lock(mu);
    cache[{pi.a, pi.b}] = t;
    return t;
}

Eis normalize_modulus(const Eis& c) {
    if (c.is_zero()) throw std::domain_error("cubic_symbol: zero modulus");
    if (divisible_by_lambda(c)) throw ModulusDivisibleByLambda();
    return primary_associate(c).second;
}

}  // namespace

CubicSymbol cubic_symbol(const Eis& x, const Eis& c) {
    Eis cp = normalize_modulus(c);
    if (is_unit(cp)) return CubicSymbol::omega(0);
    int j = 0;
    for (const auto& [pi, e] : factor(cp).factors) {
        ResidueRing ring(pi);
        int s = prime_symbol(ring, x);
        if (s < 0) return CubicSymbol::zero_value();
        j += s * e;
    }
    return CubicSymbol::omega(j);
}

bool check_cubic_reciprocity(const Eis& a, const Eis& b) {
    if (!is_primary(a) || !is_primary(b)) throw NotPrimary();
    if (!coprime(a, b)) throw std::domain_error("check_cubic_reciprocity: arguments not coprime");
    return cubic_symbol(a, b) == cubic_symbol(b, a);
}

std::vector<std::int8_t> symbol_table(const ResidueRing& ring) {
    Eis cp = normalize_modulus(ring.modulus());
    std::vector<std::int8_t> out(ring.size(), 0);
    if (is_unit(cp)) return out;
    auto fac = factor(cp).factors;
    std::vector<std::pair<ResidueRing, Table>> parts;
    for (const auto& [pi, e] : fac) parts.push_back({ResidueRing(pi), prime_table(pi)});
    for (i64 i = 0; i < ring.size(); ++i) {
        Eis x = ring.element(i);
        int j = 0;
        for (size_t f = 0; f < fac.size(); ++f) {
            int s = (*parts[f].second)[parts[f].first.index(x)];
            if (s < 0) {
                j = -1;
                break;
            }
            j += s * fac[f].second;
        }
        out[i] = static_cast<std::int8_t>(j < 0 ? -1 : j % 3);
    }
    return out;
}

RootSum gauss_sum(int k, const Eis& a, const Eis& c) {
    if (k != 1 && k != 2) throw std::invalid_argument("gauss_sum: k must be 1 or 2");
    ResidueRing ring(c);
    auto chi = symbol_table(ring);
    i64 n = ring.size();
    i64 m = 3 * n;
    RootSum r(m);
    i64 pa = ring.phase(a), pw = ring.phase(a * kOmega);
    for (i64 i = 0; i < n; ++i) {
        if (chi[i] < 0) continue;
        Eis x = ring.element(i);
        i64 ph = (x.a % n * pa + x.b % n * pw) % n;
        r.add(3 * ph + n * ((k * chi[i]) % 3));
    }
    return r;
}

RootSum ramanujan_sum(const Eis& b, const Eis& c) {
    ResidueRing ring(c);
    i64 n = ring.size();
    RootSum r(n);
    i64 pb = ring.phase(b), pw = ring.phase(b * kOmega);
    for (i64 i = 0; i < n; ++i) {
        Eis x = ring.element(i);
        if (n > 1 && !coprime(x, c)) continue;
        r.add((x.a % n * pb + x.b % n * pw) % n);
    }
    return r;
}

std::vector<Eis> divisors(const Eis& x) {
    auto f = factor(x);
    std::vector<std::pair<Eis, int>> fs = f.factors;
    if (f.lambda_exponent) fs.push_back({kLambda, f.lambda_exponent});
    std::vector<Eis> out{kOne};
    for (const auto& [p, e] : fs) {
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

i64 ramanujan_divisor_formula(const Eis& b, const Eis& c) {
    Eis g = b.is_zero() ? c : gcd(b, c);
    i64 s = 0;
    for (const Eis& q : divisors(g)) s += mobius(exact_div(c, q)) * norm(q);
    return s;
}

}  // namespace cubic
