#include "cubic/rootsum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace cubic {

RootSum RootSum::scalar(i64 n) {
    RootSum r(1);
    r.mult[0] = n;
    return r;
}

RootSum RootSum::root(i64 k, i64 m, i64 n) {
    RootSum r(m);
    r.add(k, n);
    return r;
}

RootSum RootSum::lift(i64 m) const {
    if (m % modulus) throw std::domain_error("RootSum::lift: modulus does not divide target");
    i64 t = m / modulus;
    RootSum r(m);
    for (i64 k = 0; k < modulus; ++k) r.mult[k * t] = mult[k];
    return r;
}

RootSum RootSum::conj() const {
    RootSum r(modulus);
    for (i64 k = 0; k < modulus; ++k) r.mult[(modulus - k) % modulus] = mult[k];
    return r;
}

RootSum RootSum::scaled(i64 n) const {
    RootSum r = *this;
    for (auto& v : r.mult) v = checked_mul(v, n);
    return r;
}

RootSum RootSum::rotated(i64 k, i64 m) const {
    i64 l = std::lcm(modulus, m);
    RootSum base = lift(l);
    RootSum r(l);
    i64 shift = mod(k, m) * (l / m);
    for (i64 j = 0; j < l; ++j) r.mult[(j + shift) % l] = base.mult[j];
    return r;
}

RootSum RootSum::compact() const {
    i64 d = modulus;
    for (i64 k = 0; k < modulus; ++k)
        if (mult[k]) d = std::gcd(d, k);
    if (d == 0 || d == modulus) {
        // supported at k = 0 only (or empty)
        return scalar(mult[0]);
    }
    RootSum r(modulus / d);
    for (i64 k = 0; k < modulus; k += d) r.mult[k / d] = mult[k];
    return r;
}

std::complex<double> RootSum::value() const {
    long double re = 0, im = 0, cre = 0, cim = 0;
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    for (i64 k = 0; k < modulus; ++k) {
        if (!mult[k]) continue;
        long double ang = two_pi * static_cast<long double>(k) / static_cast<long double>(modulus);
        long double yr = static_cast<long double>(mult[k]) * std::cos(ang) - cre;
        long double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        long double yi = static_cast<long double>(mult[k]) * std::sin(ang) - cim;
        long double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

i64 RootSum::mass() const {
    i64 s = 0;
    for (i64 v : mult) s += v < 0 ? -v : v;
    return s;
}

// Z[zeta_M] is the tensor product of Z[zeta_q] over the prime powers q || M.
// Reduce each axis to the power basis 1..zeta_q^{phi(q)-1} and test for zero.
bool RootSum::exact_zero() const {
    auto fac = factor_int(modulus == 1 ? 1 : modulus);
    if (modulus == 1) return mult[0] == 0;
    std::vector<i64> q, p, c, stride;
    for (auto [pr, e] : fac) {
        i64 qq = 1;
        for (int i = 0; i < e; ++i) qq *= pr;
        q.push_back(qq);
        p.push_back(pr);
        c.push_back(inv_mod((modulus / qq) % qq, qq));
    }
    size_t r = q.size();
    stride.assign(r, 1);
    for (size_t i = 1; i < r; ++i) stride[i] = stride[i - 1] * q[i - 1];
    std::vector<i64> t(static_cast<size_t>(modulus), 0);
    for (i64 k = 0; k < modulus; ++k) {
        if (!mult[k]) continue;
        i64 pos = 0;
        for (size_t i = 0; i < r; ++i) pos += ((k % q[i]) * c[i] % q[i]) * stride[i];
        t[pos] += mult[k];
    }
    for (size_t i = 0; i < r; ++i) {
        i64 phi = q[i] - q[i] / p[i];
        i64 step = q[i] / p[i];
        for (i64 pos = 0; pos < modulus; ++pos) {
            i64 ti = (pos / stride[i]) % q[i];
            if (ti < phi || !t[pos]) continue;
            i64 v = t[pos];
            t[pos] = 0;
            for (i64 s = 1; s < p[i]; ++s) t[pos - s * step * stride[i]] -= v;
        }
    }
    for (i64 v : t)
        if (v) return false;
    return true;
}

static i64 common(const RootSum& x, const RootSum& y) { return std::lcm(x.modulus, y.modulus); }

RootSum operator+(const RootSum& x, const RootSum& y) {
    i64 l = common(x, y);
    RootSum a = x.lift(l), b = y.lift(l);
    for (i64 k = 0; k < l; ++k) a.mult[k] += b.mult[k];
    return a;
}

RootSum operator-(const RootSum& x, const RootSum& y) { return x + y.scaled(-1); }

RootSum operator*(const RootSum& x, const RootSum& y) {
    RootSum xc = x.compact(), yc = y.compact();
    i64 l = common(xc, yc);
    RootSum a = xc.lift(l), b = yc.lift(l);
    std::vector<i64> nz;
    for (i64 k = 0; k < l; ++k)
        if (b.mult[k]) nz.push_back(k);
    RootSum r(l);
    for (i64 i = 0; i < l; ++i) {
        if (!a.mult[i]) continue;
        for (i64 j : nz) {
            i64 s = i + j;
            if (s >= l) s -= l;
            r.mult[s] += a.mult[i] * b.mult[j];
        }
    }
    return r;
}

Comparison compare(const RootSum& x, const RootSum& y) {
    RootSum d = x - y;
    Comparison c;
    c.abs_diff = std::abs(d.value());
    double tol = 1e-9 * static_cast<double>(std::max<i64>(1, x.mass() + y.mass()));
    c.numeric = c.abs_diff <= tol;
    c.exact = d.exact_zero();
    return c;
}

bool operator==(const RootSum& x, const RootSum& y) { return (x - y).exact_zero(); }

}  // namespace cubic
