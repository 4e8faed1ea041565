#include "cubic/hecke.hpp"

#include <sstream>
#include <stdexcept>

namespace cubic {

QW operator+(const QW& x, const QW& y) { return {x.a + y.a, x.b + y.b}; }
QW operator-(const QW& x, const QW& y) { return {x.a - y.a, x.b - y.b}; }
QW operator-(const QW& x) { return {-x.a, -x.b}; }
QW operator*(const QW& x, const QW& y) {
    // (a + b w)(c + d w) = ac - bd + (ad + bc - bd) w
    const Rational bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
}

QW QW::inverse() const {
    if (is_zero()) throw std::domain_error("QW::inverse of 0");
    const Rational n = norm();
    QW c = conj();
    return {c.a / n, c.b / n};
}

QW operator/(const QW& x, const QW& y) { return x * y.inverse(); }

std::string QW::to_string() const {
    std::ostringstream os;
    os << a;
    if (b != 0) os << (b > 0 ? "+" : "-") << abs(b) << "*w";
    return os.str();
}

FormalSeries::FormalSeries(std::vector<QW> coeffs, int order) : c_(static_cast<size_t>(order) + 1) {
    if (order < 0) throw std::invalid_argument("FormalSeries: negative order");
    if (coeffs.size() > c_.size()) throw std::invalid_argument("FormalSeries: more coefficients than the order allows");
    for (size_t i = 0; i < coeffs.size(); ++i) c_[i] = std::move(coeffs[i]);
}

FormalSeries FormalSeries::truncated(int order) const {
    if (order > this->order()) throw std::invalid_argument("FormalSeries: cannot raise the truncation order");
    return FormalSeries(std::vector<QW>(c_.begin(), c_.begin() + order + 1), order);
}

FormalSeries FormalSeries::shifted(int k) const {
    FormalSeries out(order());
    for (int i = 0; i + k <= order(); ++i) out[i + k] = c_[static_cast<size_t>(i)];
    return out;
}

FormalSeries FormalSeries::inverse() const {
    if (c_[0].is_zero()) throw std::domain_error("FormalSeries::inverse: constant term is 0");
    const QW inv0 = c_[0].inverse();
    FormalSeries out(order());
    out[0] = inv0;
    for (int n = 1; n <= order(); ++n) {
        QW s;
        for (int k = 1; k <= n; ++k) s = s + c_[static_cast<size_t>(k)] * out[n - k];
        out[n] = -(s * inv0);
    }
    return out;
}

FormalSeries operator+(const FormalSeries& x, const FormalSeries& y) {
    const int m = std::min(x.order(), y.order());
    FormalSeries out(m);
    for (int i = 0; i <= m; ++i) out[i] = x[i] + y[i];
    return out;
}

FormalSeries operator-(const FormalSeries& x, const FormalSeries& y) {
    const int m = std::min(x.order(), y.order());
    FormalSeries out(m);
    for (int i = 0; i <= m; ++i) out[i] = x[i] - y[i];
    return out;
}

FormalSeries operator*(const FormalSeries& x, const FormalSeries& y) {
    const int m = std::min(x.order(), y.order());
    FormalSeries out(m);
    for (int i = 0; i <= m; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; i + j <= m; ++j) out[i + j] = out[i + j] + x[i] * y[j];
    }
    return out;
}

FormalSeries operator*(const QW& k, const FormalSeries& x) {
    FormalSeries out(x.order());
    for (int i = 0; i <= x.order(); ++i) out[i] = k * x[i];
    return out;
}

FormalSeries euler_polynomial(const QW& lambda, long Np, int order) {
    const Rational n3 = Rational(Np) * Np * Np;
    return FormalSeries({QW(1), -lambda, QW(n3)}, std::max(order, 2)).truncated(order);
}

std::vector<QW> hecke_coefficients(const QW& lambda, const QW& a0, const QW& /*a1*/, const QW& gauss_term, long Np,
                                   int M) {
    if (M < 2) throw std::invalid_argument("hecke_coefficients: M >= 2");
    const QW n3(Rational(Np) * Np * Np);
    std::vector<QW> a(static_cast<size_t>(M) + 1);
    a[0] = a0;
    a[1] = lambda * a0 - gauss_term;
    for (int m = 1; m < M; ++m) a[m + 1] = lambda * a[m] - n3 * a[m - 1];
    return a;
}

FormalSeries generating_function(const QW& lambda, const QW& a0, const QW& gauss_term, long Np, int M) {
    FormalSeries num({a0, -gauss_term}, std::max(M, 1));
    return num.truncated(M) * euler_polynomial(lambda, Np, M).inverse();
}

bool verify_euler_factor(const QW& lambda, const QW& a0, const QW& a1, const QW& gauss_term, long Np, int M) {
    if (M < 4) throw std::invalid_argument("verify_euler_factor: M >= 4");
    FormalSeries H(hecke_coefficients(lambda, a0, a1, gauss_term, Np, M), M);
    FormalSeries lhs = H * euler_polynomial(lambda, Np, M);
    FormalSeries rhs({a0, -gauss_term}, M);
    return lhs == rhs && generating_function(lambda, a0, gauss_term, Np, M) == H;
}

bool verify_regrouped(const QW& lambda, const QW& a0, const QW& gauss_term, long Np, int M) {
    FormalSeries H(hecke_coefficients(lambda, a0, QW(), gauss_term, Np, M), M);
    const QW n3(Rational(Np) * Np * Np);
    FormalSeries lhs = (lambda * H).shifted(1);
    FormalSeries rhs = FormalSeries({QW(), gauss_term}, M) - FormalSeries({a0}, M) + H + (n3 * H).shifted(2);
    return lhs == rhs;
}

LinearForm& add_to(LinearForm& f, const LinearForm& g, const QW& k) {
    for (const auto& [sym, v] : g) {
        QW& slot = f[sym];
        slot = slot + k * v;
        if (slot.is_zero()) f.erase(sym);
    }
    return f;
}

bool forms_equal(const LinearForm& f, const LinearForm& g) {
    LinearForm d = f;
    add_to(d, g, QW(-1));
    return d.empty();
}

namespace {

std::string sym(const char* base, int j) { return std::string(base) + std::to_string(j); }

}  // namespace

SeriesSplit series_split(const QW& lambda, long Np, int M, int n_classes) {
    if (n_classes < 1) throw std::invalid_argument("series_split: n_classes >= 1");
    if (M < 2) throw std::invalid_argument("series_split: M >= 2");
    SeriesSplit out;
    const QW inv_np(Rational(1, Np));
    // by linearity the recursion splits into the A_j part and the G B_j part
    std::vector<QW> alpha = hecke_coefficients(lambda, QW(1), QW(), QW(), Np, M);
    std::vector<QW> beta = hecke_coefficients(lambda, QW(), QW(), inv_np, Np, M);
    for (int j = 0; j < n_classes; ++j)
        for (int m = 0; m <= M; ++m) {
            // the ideal n = n_j p^m contributes a_{n_j^3 p^{3m}}
            LinearForm f;
            add_to(f, {{sym("A", j), QW(1)}}, alpha[static_cast<size_t>(m)]);
            add_to(f, {{sym("GB", j), QW(1)}}, beta[static_cast<size_t>(m)]);
            out.lhs[{j, m}] = f;
        }
    FormalSeries inv = euler_polynomial(lambda, Np, M).inverse();
    for (int j = 0; j < n_classes; ++j)
        for (int m = 0; m <= M; ++m) {
            LinearForm f;
            add_to(f, {{sym("A", j), QW(1)}}, inv[m]);
            if (m >= 1) add_to(f, {{sym("GB", j), QW(1)}}, -(inv_np * inv[m - 1]));
            out.rhs[{j, m}] = f;
        }
    out.match = true;
    for (const auto& [key, f] : out.lhs) out.match = out.match && forms_equal(f, out.rhs.at(key));
    return out;
}

bool verify_series_split(const QW& lambda, long Np, int M, int n_classes) {
    return series_split(lambda, Np, M, n_classes).match;
}

bool verify_series_split_numeric(const QW& lambda, long Np, int M, const std::vector<QW>& A, const std::vector<QW>& B,
                                 const QW& G) {
    if (A.size() != B.size()) throw std::invalid_argument("verify_series_split_numeric: A and B differ in length");
    const QW inv_np(Rational(1, Np));
    FormalSeries inv = euler_polynomial(lambda, Np, M).inverse();
    for (size_t j = 0; j < A.size(); ++j) {
        std::vector<QW> a = hecke_coefficients(lambda, A[j], B[j], G * B[j] * inv_np, Np, M);
        FormalSeries bracket({A[j], -(G * inv_np * B[j])}, M);
        FormalSeries rhs = bracket * inv;
        for (int m = 0; m <= M; ++m)
            if (!(a[static_cast<size_t>(m)] == rhs[m])) return false;
    }
    return true;
}

EisensteinLambda eisenstein_lambda(int M) {
    if (M < 2) throw std::invalid_argument("eisenstein_lambda: M >= 2");
    // target b_m = a_{p^{3m}} N(p)^{-3m/2} = 1; each m >= 1 equation mu b_m = b_{m+1} + b_{m-1} gives mu on its own
    const std::vector<QW> t(static_cast<size_t>(M) + 1, QW(1));
    EisensteinLambda e;
    e.mu = (t[2] + t[0]) / t[1];
    e.unique = true;
    for (int m = 2; m < M; ++m) e.unique = e.unique && (t[m + 1] + t[m - 1]) / t[m] == e.mu;
    e.gamma = e.mu * t[0] - t[1];
    std::vector<QW> seq = hecke_coefficients(e.mu, t[0], QW(), e.gamma, 1, M);
    e.consistent = seq == t;
    return e;
}

std::string EisensteinLambda::report() const {
    std::ostringstream os;
    os << "lambda_p = " << mu.to_string() << " N(p)^(3/2), gauss_term = " << gamma.to_string()
       << " N(p)^(3/2), i.e. g_2(1,p)(-1,p^2) a_p = " << gamma.to_string() << " N(p)^(5/2); consistent "
       << (consistent ? "yes" : "no") << ", unique " << (unique ? "yes" : "no");
    return os.str();
}

QW random_qw(std::mt19937_64& rng, int max_num, int max_den) {
    std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
    return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

}  // namespace cubic
