#include "cubic/residue.hpp"

#include <numeric>
#include <tuple>

namespace cubic {

ResidueRing::ResidueRing(const Eis& c) : c_(c) {
    if (c.is_zero()) throw std::domain_error("ResidueRing: zero modulus");
    n_ = norm(c);
    g_ = std::gcd(std::abs(c.a), std::abs(c.b));
    n1_ = n_ / g_;
    // lattice basis c = (ca, cb), c*w = (-cb, ca - cb); combine to get second coordinate g
    Eis cw = c * kOmega;
    i64 x = c.b, y = cw.b;
    i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (y != 0) {
        i64 q = x / y;
        std::tie(x, y) = std::make_pair(y, x - q * y);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (x < 0) {
        x = -x;
        s0 = -s0;
        t0 = -t0;
    }
    if (x != g_) throw std::logic_error("ResidueRing: lattice reduction failed");
    __int128 h = static_cast<__int128>(s0) * c.a + static_cast<__int128>(t0) * cw.a;
    h_ = static_cast<i64>(((h % n1_) + n1_) % n1_);
}

i64 ResidueRing::index(const Eis& z) const {
    i64 a = mod(z.a, n_), b = mod(z.b, n_);
    i64 y = b % g_;
    i64 k = (b - y) / g_;
    __int128 x = static_cast<__int128>(a) - static_cast<__int128>(k) * h_;
    i64 xr = static_cast<i64>(((x % n1_) + n1_) % n1_);
    return xr + n1_ * y;
}

Eis ResidueRing::mul(const Eis& x, const Eis& y) const {
    Eis xr{mod(x.a, n_), mod(x.b, n_)}, yr{mod(y.a, n_), mod(y.b, n_)};
    __int128 bd = static_cast<__int128>(xr.b) * yr.b;
    __int128 re = static_cast<__int128>(xr.a) * yr.a - bd;
    __int128 im = static_cast<__int128>(xr.a) * yr.b + static_cast<__int128>(xr.b) * yr.a - bd;
    return reduce({static_cast<i64>(re % n_), static_cast<i64>(im % n_)});
}

Eis ResidueRing::pow(Eis x, u64 e) const {
    Eis r = reduce(kOne);
    x = reduce(x);
    while (e) {
        if (e & 1) r = mul(r, x);
        e >>= 1;
        if (e) x = mul(x, x);
    }
    return r;
}

i64 ResidueRing::phase(const Eis& z) const {
    __int128 v = static_cast<__int128>(mod(z.b, n_)) * c_.a - static_cast<__int128>(mod(z.a, n_)) * c_.b;
    return static_cast<i64>(((v % n_) + n_) % n_);
}

bool ResidueRing::is_unit(const Eis& z) const { return coprime(reduce(z), c_) || n_ == 1; }

Eis ResidueRing::inverse(const Eis& z) const {
    if (n_ == 1) return {0, 0};
    ExtGcd e = ext_gcd(reduce(z), c_);
    if (!cubic::is_unit(e.g)) throw std::domain_error("ResidueRing::inverse: not a unit");
    return reduce(e.s * unit_inverse(e.g));
}

std::vector<i64> ResidueRing::units() const {
    std::vector<i64> out;
    if (n_ == 1) return {0};
    for (i64 i = 0; i < n_; ++i)
        if (coprime(element(i), c_)) out.push_back(i);
    return out;
}

std::vector<i64> ResidueRing::inverse_table() const {
    std::vector<i64> inv(n_, -1);
    if (n_ == 1) {
        inv[0] = 0;
        return inv;
    }
    for (i64 i = 0; i < n_; ++i) {
        if (inv[i] >= 0) continue;
        ExtGcd e = ext_gcd(element(i), c_);
        if (!cubic::is_unit(e.g)) continue;
        i64 j = index(e.s * unit_inverse(e.g));
        inv[i] = j;
        inv[j] = i;
    }
    return inv;
}

}  // namespace cubic
