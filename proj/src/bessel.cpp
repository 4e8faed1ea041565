#include "cubic/bessel.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_complex.hpp>

namespace cubic {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos, g = 7
const double kLanczos[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                           771.32342877765313,   -176.61502916214059,   12.507343278686905,
                           -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi x) with the argument reduced first, so zeros at integers are exact
cd sin_pi(cd x) {
    double m = std::round(x.real());
    cd s = std::sin(kPi * (x - m));
    return (static_cast<long long>(m) % 2 == 0) ? s : -s;
}

cd rgamma_right(cd x) {
    x -= 1.0;
    cd a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + static_cast<double>(i));
    cd t = x + 7.5;
    cd log_gamma = 0.5 * std::log(2 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
    return std::exp(-log_gamma);
}

template <class C>
C to_c(cd x) {
    return C(x.real(), x.imag());
}

template <class C>
cd from_c(const C& x) {
    return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

template <class C>
JStarSeries run_series(cd mu, cd z, int n0, cd prefactor, int min_terms) {
    using std::abs;
    const C half_z = to_c<C>(z) / C(2);
    const C w = -(half_z * half_z);
    const C m = to_c<C>(mu);
    C t = C(1);
    for (int k = 1; k <= n0; ++k) t = t * w / C(k);
    C sum = t;
    const double aw = static_cast<double>(abs(w)), amu = std::abs(mu), pref = std::abs(prefactor);
    JStarSeries out;
    for (int n = n0;; ++n) {
        t = t * w / (C(n + 1) * (m + C(n + 1)));
        const double an = static_cast<double>(abs(t));
        // |t_{k+1} / t_k| <= |w| / ((k + 1)(k + 1 - |mu|)), decreasing once k + 1 > |mu|
        const double den = (n + 2) * (n + 2 - amu);
        const double q = den > 0 ? aw / den : 2;
        if (q < 0.5 && n + 1 >= min_terms) {
            const double tail = an / (1 - q) * pref;
            if (tail <= 1e-17 * pref * static_cast<double>(abs(sum)) || tail <= 1e-300) {
                out.tail_bound = tail;
                out.terms = n + 1;
                break;
            }
        }
        sum = sum + t;
        if (n > 100000) throw SeriesDivergenceGuard("j_star: series did not settle");
    }
    out.value = prefactor * from_c<C>(sum);
    return out;
}

cd pow_unit(cd u, int e) {
    cd r = 1;
    cd b = e >= 0 ? u : 1.0 / u;
    for (int i = 0; i < std::abs(e); ++i) r *= b;
    return r;
}

cd kernel_direct(cd nu, int p, cd z) {
    const double r = std::abs(z);
    const cd zc = std::conj(z);
    const cd u = pow_unit(cd(0, 1) * z / r, 2 * p);
    const double lr = std::log(r / 2);
    const cd t1 = std::exp(-2.0 * nu * lr) * u * j_star(-nu + static_cast<double>(p), z) *
                  j_star(-nu - static_cast<double>(p), zc);
    const cd t2 = std::exp(2.0 * nu * lr) / u * j_star(nu - static_cast<double>(p), z) *
                  j_star(nu + static_cast<double>(p), zc);
    return (t1 - t2) / sin_pi(nu - static_cast<double>(p));
}

// c_m(mu) = 1 / (m! Gamma(m + mu + 1))
cd series_coeff(cd mu, int m) {
    cd f = rgamma(mu + static_cast<double>(m + 1));
    for (int k = 2; k <= m; ++k) f /= static_cast<double>(k);
    return f;
}

cd average_direct(cd nu, int p, double r) {
    const double rho = r / 2;
    auto half = [rho](cd mu1, cd mu2, int shift, double sign_nu, cd nu_) {
        // sum_{m >= max(0, -shift)} c_m(mu1) c_{m+shift}(mu2) rho^{4m + 2 shift}
        cd s = 0;
        const int m0 = std::max(0, -shift);
        for (int m = m0; m < m0 + 400; ++m) {
            cd term = series_coeff(mu1, m) * series_coeff(mu2, m + shift) * std::pow(rho, 4 * m + 2 * shift);
            s += term;
            if (m > m0 + 4 && std::abs(term) <= 1e-18 * std::max(std::abs(s), 1e-300)) break;
        }
        return std::exp(sign_nu * 2.0 * nu_ * std::log(rho)) * s;
    };
    const double pd = static_cast<double>(p);
    cd t1 = half(-nu + pd, -nu - pd, p, -1, nu);
    cd t2 = half(nu - pd, nu + pd, -p, 1, nu);
    return (t1 - t2) / sin_pi(nu - pd);
}

template <class F>
cd bridge(cd nu, int p, F f) {
    const cd d = nu - static_cast<double>(p);
    const double m = std::round(d.real());
    if (std::abs(d - m) >= kNearInteger) return f(nu);
    const cd nu0 = static_cast<double>(p) + m;
    const cd lo = f(nu0 - kNuOffset), hi = f(nu0 + kNuOffset);
    return lo + (nu - (nu0 - kNuOffset)) / (2 * kNuOffset) * (hi - lo);
}

double bump(double u) { return std::abs(u) < 1 ? std::exp(1 / (u * u - 1)) : 0.0; }

// trapezoid on [a, b] for integrands vanishing to all orders at both ends
template <class F>
double flat_integral(F f, double a, double b) {
    double prev = 0;
    for (int n = 64; n <= (1 << 20); n *= 2) {
        double h = (b - a) / n, s = 0;
        for (int i = 1; i < n; ++i) s += f(a + h * i);
        s *= h;
        if (n > 64 && std::abs(s - prev) <= 1e-15 * std::abs(s)) return s;
        prev = s;
    }
    return prev;
}

std::vector<double> derivative_bounds(const std::function<double(double)>& f, double a, double b) {
    const int n = 4000;
    const double h = (b - a) / n;
    double d0 = 0, d1 = 0, d2 = 0;
    for (int i = 1; i < n; ++i) {
        double x = a + h * i, fm = f(x - h), f0 = f(x), fp = f(x + h);
        d0 = std::max(d0, std::abs(f0));
        d1 = std::max(d1, std::abs(fp - fm) / (2 * h));
        d2 = std::max(d2, std::abs(fp - 2 * f0 + fm) / (h * h));
    }
    return {d0, d1, d2};
}

}  // namespace

cd to_complex(const Eis& x) {
    return {static_cast<double>(x.a) - 0.5 * static_cast<double>(x.b), std::sqrt(3.0) / 2 * static_cast<double>(x.b)};
}

cd rgamma(cd x) {
    if (x.real() < 0.5) {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        cd s = sin_pi(x);
        if (s == 0.0) return 0;
        return s / (kPi * rgamma_right(1.0 - x));
    }
    return rgamma_right(x);
}

JStarSeries j_star_series(cd mu, cd z, int min_terms) {
    if (std::abs(z) > 50) throw SeriesDivergenceGuard("j_star: |z| > 50 is outside the power-series regime");
    // skip the leading zero coefficients when mu is a negative integer
    int n0 = 0;
    cd pref = rgamma(mu + 1.0);
    while (pref == 0.0) {
        ++n0;
        pref = rgamma(mu + static_cast<double>(n0 + 1));
    }
    // terms peak near |z|/2, with size about exp(|z|); switch to 50 digits once that eats the double margin
    if (std::abs(z) <= 16) return run_series<std::complex<long double>>(mu, z, n0, pref, min_terms);
    return run_series<boost::multiprecision::cpp_complex_50>(mu, z, n0, pref, min_terms);
}

cd j_star(cd mu, cd z) { return j_star_series(mu, z).value; }

cd bessel_j(cd mu, cd z) { return j_star(mu, z) * std::pow(z / 2.0, mu); }

cd bessel_kernel(cd nu, int p, cd z) {
    if (z == 0.0) throw std::domain_error("bessel_kernel: z = 0");
    return bridge(nu, p, [p, z](cd v) { return kernel_direct(v, p, z); });
}

double b13_plus_form(double x) {
    double a = bessel_j(-1.0 / 3, x).real(), b = bessel_j(1.0 / 3, x).real();
    return (a * a + b * b) / std::sin(kPi / 3);
}

double b13_minus_form(double x) {
    double a = bessel_j(-1.0 / 3, x).real(), b = bessel_j(1.0 / 3, x).real();
    return (a * a - b * b) / std::sin(kPi / 3);
}

TestFunctionPair make_test_pair(std::function<double(double)> g, double g_lo, double g_hi, std::function<cd(cd)> V,
                                double V_lo, double V_hi, bool V_radial, std::string g_name, std::string V_name) {
    if (!(0 < g_lo && g_lo < g_hi)) throw std::invalid_argument("make_test_pair: bad g support");
    if (!(0 < V_lo && V_lo < V_hi)) throw std::invalid_argument("make_test_pair: bad V support");
    TestFunctionPair f;
    f.g_name = std::move(g_name);
    f.V_name = std::move(V_name);
    f.g_lo = g_lo;
    f.g_hi = g_hi;
    f.V_lo = V_lo;
    f.V_hi = V_hi;
    f.V_radial = V_radial;
    auto clipped = [g, g_lo, g_hi](double t) { return (t <= g_lo || t >= g_hi) ? 0.0 : g(t); };
    double mass = flat_integral([&](double t) { return clipped(t) * std::sqrt(t); }, g_lo, g_hi);
    if (mass == 0) throw std::invalid_argument("make_test_pair: g has zero mass");
    f.g = [clipped, mass](double t) { return clipped(t) / mass; };
    f.V = [V, V_lo, V_hi](cd z) {
        double r = std::abs(z);
        return (r <= V_lo || r >= V_hi) ? cd(0) : V(z);
    };
    f.g_derivative_bounds = derivative_bounds(f.g, g_lo, g_hi);
    const auto& Vw = f.V;
    f.V_derivative_bounds = derivative_bounds([&Vw](double r) { return std::abs(Vw(r)); }, V_lo, V_hi);
    return f;
}

std::vector<std::string> preset_names() { return {"bump-log-annulus", "bump-12"}; }

TestFunctionPair preset_pair(const std::string& V_preset, const std::string& g_preset) {
    if (V_preset != "bump-log-annulus") throw std::invalid_argument("unknown V preset: " + V_preset);
    if (g_preset != "bump-12") throw std::invalid_argument("unknown g preset: " + g_preset);
    return make_test_pair([](double t) { return bump(2 * t - 3); }, 1, 2,
                          [](cd z) { return cd(bump(std::log(std::abs(z)))); }, std::exp(-1.0), std::exp(1.0), true,
                          g_preset, V_preset);
}

Quadrature h_transform_detail(const TestFunctionPair& f, cd nu, int p, double tol) {
    const double a = std::log(f.V_lo), b = std::log(f.V_hi);
    Quadrature out;
    cd prev = 0;
    for (int level = 0; level <= 6; ++level) {
        const int nu_pts = 32 << level, nth = 16 << level;
        const double hu = (b - a) / nu_pts, ht = 2 * kPi / nth;
        cd s = 0;
        for (int i = 1; i < nu_pts; ++i) {
            const double r = std::exp(a + hu * i);
            for (int j = 0; j < nth; ++j) {
                const cd z = std::polar(r, ht * j);
                const cd v = f.V(z);
                if (v != 0.0) s += v * bessel_kernel(nu, p, z);
            }
        }
        s *= hu * ht;
        out.nodes += static_cast<long>(nu_pts - 1) * nth;
        if (level > 0) {
            out.error_estimate = std::abs(s - prev);
            if (out.error_estimate <= tol) {
                out.value = s;
                return out;
            }
        }
        prev = s;
    }
    throw QuadratureNonConvergence("h_transform: refinement did not settle");
}

cd h_transform(const TestFunctionPair& f, cd nu, int p) { return h_transform_detail(f, nu, p).value; }

cd kernel_angular_average(cd nu, int p, double r) {
    return bridge(nu, p, [p, r](cd v) { return average_direct(v, p, r); });
}

Quadrature h_transform_radial(const TestFunctionPair& f, cd nu, int p, double tol) {
    if (!f.V_radial) throw std::invalid_argument("h_transform_radial: V is not radial");
    const double a = std::log(f.V_lo), b = std::log(f.V_hi);
    Quadrature out;
    cd prev = 0;
    for (int level = 0; level <= 10; ++level) {
        const int n = 32 << level;
        const double h = (b - a) / n;
        cd s = 0;
        for (int i = 1; i < n; ++i) {
            const double r = std::exp(a + h * i);
            const cd v = f.V(r);
            if (v != 0.0) s += v * kernel_angular_average(nu, p, r);
        }
        s *= 2 * kPi * h;
        out.nodes += n - 1;
        if (level > 0) {
            out.error_estimate = std::abs(s - prev);
            if (out.error_estimate <= tol) {
                out.value = s;
                return out;
            }
        }
        prev = s;
    }
    throw QuadratureNonConvergence("h_transform_radial: refinement did not settle");
}

cd cubic_phase_integral_damped(cd A, cd B, double eps) {
    if (A == 0.0) throw std::domain_error("cubic_phase_integral: A = 0");
    // rotate w so the cubic coefficient is real and positive; the damping is rotation invariant
    const cd rho = std::pow(std::abs(A) / A, 1.0 / 3);
    const double a = 2 * std::abs(A);
    const cd bb = 2.0 * B * rho;
    // phase 2 pi (a (x^3 - 3 x y^2) + Re(bb) x - Im(bb) y); the y-integral is Gaussian
    const double L = std::sqrt(40 / eps);
    const double h = std::min(1e-3, 0.1 / (3 * a * L * L + std::abs(bb) + 1));
    const long n = static_cast<long>(2 * L / h) + 1;
    const cd beta = cd(0, -2 * kPi * bb.imag());
    const cd beta2 = beta * beta;
    long double re = 0, im = 0;
    for (long i = 0; i < n; ++i) {
        const double x = -L + h * (static_cast<double>(i) + 0.5);
        const cd alpha(eps, 6 * kPi * a * x);
        const double ph = 2 * kPi * (a * x * x * x + bb.real() * x);
        const cd v = std::polar(std::exp(-eps * x * x), ph) * std::sqrt(kPi / alpha) * std::exp(beta2 / (4.0 * alpha));
        re += v.real();
        im += v.imag();
    }
    return cd(static_cast<double>(re), static_cast<double>(im)) * h;
}

WIntegralLhs cubic_phase_integral(cd A, cd B) {
    const double eps[] = {0.08, 0.04, 0.02, 0.01};
    // Richardson table in eps, ratio 2
    cd t[4][4];
    for (int i = 0; i < 4; ++i) {
        t[i][0] = cubic_phase_integral_damped(A, B, eps[i]);
        double f = 1;
        for (int j = 1; j <= i; ++j) {
            f *= 2;
            t[i][j] = (f * t[i][j - 1] - t[i - 1][j - 1]) / (f - 1);
        }
    }
    WIntegralLhs out;
    out.value = t[3][3];
    out.error_estimate = std::abs(t[3][3] - t[3][2]);
    if (!(out.error_estimate <= kWIntegralTol * std::abs(out.value)))
        throw RegularizationNonConvergence("cubic_phase_integral: eps extrapolation did not settle");
    return out;
}

WIntegral kuznetsov_w_integral(const Eis& b, cd z) {
    if (b.is_zero()) throw std::domain_error("kuznetsov_w_integral: b = 0");
    const cd bc = to_complex(b);
    WIntegral out;
    // e(1/2 (z w^3 / b - 3 w z))
    WIntegralLhs l = cubic_phase_integral(z / (2.0 * bc), -1.5 * z);
    out.lhs = l.value;
    out.lhs_error = l.error_estimate;
    const cd arg = 2 * kPi * z * std::sqrt(bc);
    const double jm = std::norm(bessel_j(-1.0 / 3, arg)), jp = std::norm(bessel_j(1.0 / 3, arg));
    const double pref = std::sqrt(static_cast<double>(norm(b))) * kPi * kPi / (3 * std::sin(kPi / 3));
    out.rhs = pref * (jm + jp);
    out.rhs_kernel = pref * (jm - jp);
    out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
    out.kernel_rel_err = std::abs(out.lhs - out.rhs_kernel) / std::abs(out.rhs_kernel);
    out.agree = out.rel_err <= kWIntegralTol;
    out.kernel_agree = out.kernel_rel_err <= kWIntegralTol;
    return out;
}

WIntegralLhs w_integral_rescaled(const Eis& b, cd z) {
    const cd bc = to_complex(b);
    const cd s = std::pow(bc, 1.0 / 3) * std::pow(z, 2.0 / 3);
    const double fac = std::cbrt(static_cast<double>(norm(b)) / std::norm(z));
    WIntegralLhs inner = cubic_phase_integral(0.5, -1.5 * s);
    inner.value *= fac;
    inner.error_estimate *= fac;
    return inner;
}

}  // namespace cubic
