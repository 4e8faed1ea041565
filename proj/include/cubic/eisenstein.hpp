#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubic {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// a + b*w with w^2 = -1 - w. Coordinates are 64-bit; every product is
// overflow-checked, which is ample for the moduli used here.
struct Eis {
    i64 a = 0;
    i64 b = 0;

    constexpr Eis() = default;
    constexpr Eis(i64 a_, i64 b_ = 0) : a(a_), b(b_) {}

    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const Eis&, const Eis&) = default;
};

struct NotCoprimeToLambda : std::domain_error {
    NotCoprimeToLambda() : std::domain_error("element is divisible by lambda = 1-w") {}
};

i64 checked_mul(i64 x, i64 y);
i64 checked_add(i64 x, i64 y);

Eis operator+(const Eis& x, const Eis& y);
Eis operator-(const Eis& x, const Eis& y);
Eis operator-(const Eis& x);
Eis operator*(const Eis& x, const Eis& y);
Eis& operator+=(Eis& x, const Eis& y);
Eis& operator*=(Eis& x, const Eis& y);

inline constexpr Eis kOne{1, 0};
inline constexpr Eis kOmega{0, 1};
inline constexpr Eis kLambda{1, -1};

i64 norm(const Eis& x);
Eis conj(const Eis& x);
Eis pow(Eis x, unsigned e);

// units()[j] for j in 0..5 is (-1)^(j/3) * w^(j%3)
const std::vector<Eis>& units();
bool is_unit(const Eis& x);
Eis unit_inverse(const Eis& u);

bool divisible_by_lambda(const Eis& x);
bool is_primary(const Eis& x);
// returns (u, u*x) with u*x = 1 mod 3
std::pair<Eis, Eis> primary_associate(const Eis& x);

// Euclidean division: x = q*c + r, norm(r) < norm(c)
std::pair<Eis, Eis> divmod(const Eis& x, const Eis& c);
bool divides(const Eis& d, const Eis& x);
Eis exact_div(const Eis& x, const Eis& d);

Eis gcd(Eis x, Eis y);
// s*x + t*y = g with g a gcd (not normalized)
struct ExtGcd { Eis g, s, t; };
ExtGcd ext_gcd(Eis x, Eis y);
bool coprime(const Eis& x, const Eis& y);

struct Factorization {
    Eis unit = kOne;
    int lambda_exponent = 0;
    std::vector<std::pair<Eis, int>> factors;  // primary primes, sorted by (norm, a, b)

    Eis expand() const;
};

Factorization factor(const Eis& x);
bool is_prime(const Eis& x);
int mobius(const Eis& c);
i64 euler_phi(const Eis& c);
bool is_squarefree(const Eis& c);
bool is_squarefull(const Eis& c);

// all primary divisors of c (requires lambda not dividing c), sorted by (norm, a, b)
std::vector<Eis> primary_divisors(const Eis& c);

// primary elements up to the given norm, and primary primes up to it
std::vector<Eis> primary_elements(i64 max_norm);
std::vector<Eis> primary_primes(i64 max_norm);
// all nonzero elements with norm <= max_norm
std::vector<Eis> elements_up_to(i64 max_norm);

// the fractional phase s mod 1 of e(x/c) = exp(2 pi i s)
struct Phase {
    i64 num = 0;
    i64 den = 1;
    friend bool operator==(const Phase&, const Phase&) = default;
};
Phase additive_character(const Eis& x, const Eis& c);

std::string to_string(const Eis& x);
Eis parse_eis(const std::string& text);

bool canonical_less(const Eis& x, const Eis& y);

// rational helpers
i64 mod(i64 x, i64 m);
i64 powmod(i64 base, u64 e, i64 m);
i64 inv_mod(i64 x, i64 m);
std::vector<std::pair<i64, int>> factor_int(i64 n);
bool is_prime_int(i64 n);

}  // namespace cubic
