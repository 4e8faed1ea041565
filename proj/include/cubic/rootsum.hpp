#pragma once

#include <complex>
#include <vector>

#include "cubic/eisenstein.hpp"

namespace cubic {

// sum_k mult[k] * exp(2 pi i k / modulus)
struct RootSum {
    i64 modulus = 1;
    std::vector<i64> mult{0};

    RootSum() = default;
    explicit RootSum(i64 m) : modulus(m), mult(static_cast<size_t>(m), 0) {}

    static RootSum scalar(i64 n);
    // n * exp(2 pi i k / m)
    static RootSum root(i64 k, i64 m, i64 n = 1);

    void add(i64 k, i64 n = 1) { mult[static_cast<size_t>(mod(k, modulus))] += n; }

    RootSum lift(i64 m) const;
    RootSum conj() const;
    RootSum scaled(i64 n) const;
    // multiply by exp(2 pi i k / m)
    RootSum rotated(i64 k, i64 m) const;
    // shrink the modulus as far as the support allows
    RootSum compact() const;

    std::complex<double> value() const;
    i64 mass() const;
    bool exact_zero() const;
};

RootSum operator+(const RootSum& x, const RootSum& y);
RootSum operator-(const RootSum& x, const RootSum& y);
RootSum operator*(const RootSum& x, const RootSum& y);

struct Comparison {
    bool exact = false;    // exact equality in the cyclotomic field
    bool numeric = false;  // |x - y| <= 1e-9 * mass
    double abs_diff = 0;
};
Comparison compare(const RootSum& x, const RootSum& y);
bool operator==(const RootSum& x, const RootSum& y);

}  // namespace cubic
