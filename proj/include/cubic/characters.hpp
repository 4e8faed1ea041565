#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cubic/eisenstein.hpp"
#include "cubic/residue.hpp"
#include "cubic/rootsum.hpp"

namespace cubic {

struct ModulusDivisibleByLambda : std::domain_error {
    ModulusDivisibleByLambda() : std::domain_error("modulus is divisible by lambda") {}
};

struct NotPrimary : std::domain_error {
    NotPrimary() : std::domain_error("argument is not primary") {}
};

// 0 or w^j
struct CubicSymbol {
    int j = 0;  // -1 encodes the value 0
    bool zero() const { return j < 0; }
    static CubicSymbol zero_value() { return {-1}; }
    static CubicSymbol omega(int k) { return {static_cast<int>(mod(k, 3))}; }

    CubicSymbol operator*(const CubicSymbol& o) const {
        if (zero() || o.zero()) return zero_value();
        return omega(j + o.j);
    }
    CubicSymbol conj() const { return zero() ? *this : omega(-j); }
    CubicSymbol pow(int e) const;
    // as an element a + b*w
    Eis as_eis() const;
    RootSum as_rootsum() const;
    std::string to_string() const;
    friend bool operator==(const CubicSymbol&, const CubicSymbol&) = default;
};

CubicSymbol cubic_symbol(const Eis& x, const Eis& c);
bool check_cubic_reciprocity(const Eis& a, const Eis& b);

// per index of ResidueRing(c): -1 where the symbol vanishes, else j with (x/c)_3 = w^j
std::vector<std::int8_t> symbol_table(const ResidueRing& ring);

RootSum gauss_sum(int k, const Eis& a, const Eis& c);
RootSum ramanujan_sum(const Eis& b, const Eis& c);
// sum over q | gcd(b, c) of mu(c/q) N(q)
i64 ramanujan_divisor_formula(const Eis& b, const Eis& c);

// every ideal divisor of x (one generator each), sorted canonically
std::vector<Eis> divisors(const Eis& x);

}  // namespace cubic
