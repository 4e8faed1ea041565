#include "cubic/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "cubic/characters.hpp"

namespace cubic {

namespace {

// B_2, B_4, ..., B_20
const long double kBernoulli[] = {1.0L / 6,        -1.0L / 30,      1.0L / 42,          -1.0L / 30,
                                  5.0L / 66,       -691.0L / 2730,  7.0L / 6,           -3617.0L / 510,
                                  43867.0L / 798,  -174611.0L / 330};

constexpr i64 kLatticeX0 = 250'000;
constexpr i64 kLatticeX1 = 1'000'000;

long double smooth_h(long double u) { return u <= 0 ? 0.0L : std::exp(-1.0L / u); }

// 0 below X0, 1 above X1, C-infinity in between
long double smooth_step(long double t) {
    long double u = (t - kLatticeX0) / static_cast<long double>(kLatticeX1 - kLatticeX0);
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    long double a = smooth_h(u), b = smooth_h(1 - u);
    return a / (a + b);
}

// number of (a, b) with a^2 - ab + b^2 = n, for n <= kLatticeX1
const std::vector<std::uint16_t>& lattice_counts() {
    static const std::vector<std::uint16_t> counts = [] {
        std::vector<std::uint16_t> c(kLatticeX1 + 1, 0);
        const i64 bmax = static_cast<i64>(std::sqrt(4.0 * kLatticeX1 / 3.0)) + 1;
        for (i64 b = -bmax; b <= bmax; ++b) {
            // (a - b/2)^2 + 3b^2/4 <= X1
            double rest = static_cast<double>(kLatticeX1) - 0.75 * static_cast<double>(b * b);
            if (rest < 0) continue;
            double r = std::sqrt(rest);
            i64 lo = static_cast<i64>(std::floor(0.5 * static_cast<double>(b) - r)) - 1;
            i64 hi = static_cast<i64>(std::ceil(0.5 * static_cast<double>(b) + r)) + 1;
            for (i64 a = lo; a <= hi; ++a) {
                i64 n = a * a - a * b + b * b;
                if (n <= kLatticeX1) ++c[static_cast<size_t>(n)];
            }
        }
        return c;
    }();
    return counts;
}

long double kahan_add(long double& sum, long double& comp, long double x) {
    long double y = x - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    return sum;
}

std::vector<i64> primes_up_to(i64 n) {
    static std::mutex mu;
    static std::map<i64, std::vector<i64>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<char> composite(static_cast<size_t>(n + 1), 0);
    std::vector<i64> out;
    for (i64 i = 2; i <= n; ++i) {
        if (composite[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) composite[static_cast<size_t>(j)] = 1;
    }
    cache[n] = out;
    return out;
}

// norms of the prime ideals over p
std::vector<long double> ideal_norms_over(i64 p) {
    long double q = static_cast<long double>(p);
    if (p == 3) return {q};
    if (p % 3 == 1) return {q, q};
    return {q * q};
}

// sum over split p > bound of 2 p^-2, about E1(log bound)
long double split_tail(i64 bound) {
    long double x = std::log(static_cast<long double>(bound));
    long double series = 1 - 1 / x + 2 / (x * x) - 6 / (x * x * x) + 24 / (x * x * x * x);
    return std::exp(-x) / x * series;
}

template <class F>
double euler_product(i64 bound, F local) {
    long double logp = 0;
    for (i64 p : primes_up_to(bound))
        for (long double q : ideal_norms_over(p)) logp += std::log(local(1 / q));
    return static_cast<double>(std::exp(logp - split_tail(bound)));
}

Rational rpow(const Rational& x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

Eis primary_part(const Eis& x) { return primary_associate(x).second; }

}  // namespace

long double hurwitz_zeta(long double s, long double q) {
    if (s <= 1 || q <= 0) throw OutOfRange("hurwitz_zeta: need s > 1, q > 0");
    const int n = 24;
    long double sum = 0, comp = 0;
    for (int k = 0; k < n; ++k) kahan_add(sum, comp, std::pow(k + q, -s));
    long double x = n + q;
    kahan_add(sum, comp, std::pow(x, 1 - s) / (s - 1) + std::pow(x, -s) / 2);
    // B_2k / (2k)! * s (s+1) ... (s+2k-2) x^{-s-2k+1}
    long double rising = s, fact = 2, xp = std::pow(x, -s - 1);
    for (int k = 1; k <= 10; ++k) {
        kahan_add(sum, comp, kBernoulli[k - 1] / fact * rising * xp);
        rising *= (s + 2 * k - 1) * (s + 2 * k);
        fact *= (2 * k + 1) * (2 * k + 2);
        xp /= x * x;
    }
    return sum;
}

long double riemann_zeta(long double s) { return hurwitz_zeta(s, 1); }

long double l_chi3(long double s) {
    return std::pow(3.0L, -s) * (hurwitz_zeta(s, 1.0L / 3) - hurwitz_zeta(s, 2.0L / 3));
}

ZetaRoutes zeta_K_routes(double s) {
    if (s < 2) throw OutOfRange("zeta_K: need s >= 2");
    ZetaRoutes r;
    r.product = static_cast<double>(riemann_zeta(s) * l_chi3(s));

    const auto& counts = lattice_counts();
    long double sum = 0, comp = 0;
    for (i64 n = 1; n <= kLatticeX1; ++n) {
        if (!counts[static_cast<size_t>(n)]) continue;
        long double t = static_cast<long double>(n);
        kahan_add(sum, comp, counts[static_cast<size_t>(n)] * std::pow(t, -static_cast<long double>(s)) * (1 - smooth_step(t)));
    }
    // integral of t^-s psi(t) over [X0, X1] by Simpson, then the exact tail beyond X1
    const int m = 200'000;
    const long double a = kLatticeX0, b = kLatticeX1, h = (b - a) / m;
    long double integral = 0;
    for (int i = 0; i <= m; ++i) {
        long double t = a + h * i;
        long double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
        integral += w * std::pow(t, -static_cast<long double>(s)) * smooth_step(t);
    }
    integral *= h / 3;
    integral += std::pow(b, 1 - static_cast<long double>(s)) / (s - 1);
    const long double density = 2 * M_PIl / std::sqrt(3.0L);
    r.lattice = static_cast<double>((sum + density * integral) / 6);
    return r;
}

double zeta_K(double s) {
    static std::mutex mu;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(s);
        if (it != cache.end()) return it->second;
    }
    ZetaRoutes r = zeta_K_routes(s);
    if (std::abs(r.diff()) > 1e-10) throw std::runtime_error("zeta_K: evaluation routes disagree");
    std::lock_guard<std::mutex> lock(mu);
    cache[s] = r.product;
    return r.product;
}

double compute_Z_K() {
    double z12 = zeta_K(12), z5 = zeta_K(5);
    return zeta_K(6) / (z12 * z12 * zeta_K(8) * zeta_K(7) * z5 * z5 * zeta_K(4) * zeta_K(2));
}

double z_k_euler_product(i64 prime_bound) {
    return euler_product(prime_bound, [](long double x) {
        long double xp[13] = {1};
        for (int i = 1; i <= 12; ++i) xp[i] = xp[i - 1] * x;
        auto f = [&xp](int e) { return 1 - xp[e]; };
        return f(12) * f(12) * f(8) * f(7) * f(5) * f(5) * f(4) * f(2) / f(6);
    });
}

double zeta_chain_product() {
    auto z = [](double s) { return zeta_K(s); };
    return z(6) * z(6) / (z(12) * z(12) * z(5) * z(7)) * (z(4) / (z(8) * z(5))) * (z(2) / (z(4) * z(3))) *
           (z(3) / (z(6) * z(4))) * (1 / (z(2) * z(2)));
}

double six_sums_euler_product(i64 prime_bound) {
    return euler_product(prime_bound, [](long double x) {
        long double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
        return (1 - x5 * (1 - x) * (1 - x)) * (1 + x4 - x5) * (1 + x2 - x3) * (1 + x3 - x4) * (1 - x2) * (1 - x2);
    });
}

Rational divisor_factor(const Eis& b, const Eis& D) {
    const Eis bp = primary_part(b), db = primary_part(D * b);
    auto sum_over = [](const Eis& x, auto term) {
        Rational s = 0;
        for (const Eis& r : primary_divisors(x)) {
            int mu = mobius(r);
            Rational inv_n(1, norm(r));
            s += term(mu, Rational(euler_phi(r)), inv_n);
        }
        return s;
    };
    Rational out = 1;
    out *= sum_over(bp, [](int mu, const Rational&, const Rational& q) { return mu * q; });
    out *= sum_over(db, [](int mu, const Rational& phi, const Rational& q) { return mu * mu * phi * phi * rpow(q, 7); });
    out *= sum_over(db, [](int mu, const Rational& phi, const Rational& q) { return mu * phi * rpow(q, 5); });
    out *= sum_over(db, [](int mu, const Rational& phi, const Rational& q) { return mu * phi * rpow(q, 3); });
    out *= sum_over(db, [](int mu, const Rational& phi, const Rational& q) { return mu * phi * rpow(q, 4); });
    out *= sum_over(db, [](int mu, const Rational&, const Rational& q) { return mu * rpow(q, 2); });
    out *= sum_over(bp, [](int mu, const Rational&, const Rational& q) { return mu * mu * rpow(q, 2); });
    return out;
}

double compute_A_bD(const Eis& b, const Eis& D) {
    if (!is_squarefree(D)) throw std::domain_error("compute_A_bD: D not squarefree");
    if (!coprime(b, D)) throw std::domain_error("compute_A_bD: (b, D) != 1");
    return compute_Z_K() * static_cast<double>(divisor_factor(b, D));
}

double compute_B_pD(const Eis& p, const Eis& D) {
    Rational s = 0;
    for (const Eis& r : primary_divisors(primary_part(p))) s += Rational(mobius(r), norm(r));
    return compute_A_bD(p, D) / static_cast<double>(s);
}

std::complex<double> compute_K_pD(const Eis& p, const Eis& D, std::complex<double> hilbert_unit) {
    if (!is_prime(p)) throw std::domain_error("compute_K_pD: p not prime");
    const Eis pp = primary_part(p);
    const double n = static_cast<double>(norm(pp)), nd = static_cast<double>(norm(D));
    std::complex<double> g = gauss_sum(1, kOne, pp).value(), g2 = gauss_sum(2, kOne, pp).value();
    const std::complex<double> sqrt_m3_cubed{0, -3 * std::sqrt(3.0)};
    std::complex<double> bracket = std::sqrt(n) * (1 + 1 / (n * n)) + g2 * hilbert_unit / n * g / std::sqrt(n) * (1 + 1 / n);
    return compute_A_bD(pp, D) * (4 * M_PI * M_PI * M_PI / 9) / (6.0 * sqrt_m3_cubed * nd) * bracket;
}

bool tail_identity_check(const Eis& p) {
    if (!is_prime(p)) throw std::domain_error("tail_identity_check: p not prime");
    const i64 n = norm(p);
    const Rational q(1, n);
    Rational head = 0;
    for (int i = 0; i <= 4; ++i) head += rpow(q, i);
    Rational lhs = (1 / (1 - q) - head) * euler_phi(p);
    return lhs == rpow(q, 4) && 1 / (1 - q) - head == rpow(q, 5) / (1 - q);
}

}  // namespace cubic
