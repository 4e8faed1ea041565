#include "cubic/geometric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cubic/characters.hpp"
#include "cubic/constants.hpp"
#include "cubic/expsums.hpp"

namespace cubic {

namespace {

constexpr double kPi = 3.14159265358979323846;
// primary c with N(c) <= x number about kPrimaryDensity * x: area 2 pi / sqrt 3, 2/3 prime to lambda, 1/6 primary
const double kPrimaryDensity = 2 * kPi / std::sqrt(3.0) * (2.0 / 3) / 6;

std::vector<Eis> n_list(const TestFunctionPair& f, double X) {
    NormWindow w = n_window(f, X);
    std::vector<Eis> out;
    if (w.hi < 1) return out;
    for (const Eis& n : elements_up_to(static_cast<i64>(std::floor(w.hi))))
        if (w.contains(static_cast<double>(norm(n)))) out.push_back(n);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<Eis> c_list(const Eis& D, double lo, double hi) {
    std::vector<Eis> out;
    if (hi < 1) return out;
    for (const Eis& c : primary_elements(static_cast<i64>(std::floor(hi)))) {
        double nc = static_cast<double>(norm(c));
        if (nc > lo && nc < hi && divides(D, c)) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

// runs task(i) for i in [0, count) on `jobs` threads; results land in per-index slots
template <class F>
void parallel_for(long count, int jobs, F task) {
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<long>(count, 1))));
    if (jobs == 1) {
        for (long i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            try {
                for (long i = next++; i < count; i = next++) task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// sum of N(c) over primary c with lo < N(c) < hi, D | c, to leading order
double norm_mass(double lo, double hi, const Eis& D) {
    if (hi <= lo) return 0;
    return kPrimaryDensity * (hi * hi - lo * lo) / 2 / static_cast<double>(norm(D));
}

double sqrt_norm(const Eis& x) { return std::sqrt(static_cast<double>(norm(x))); }

NormWindow m_zero_c_range(const TestFunctionPair& f, const Eis& b, double X) {
    return {c_window(f, b, f.g_lo * X).lo, c_window(f, b, f.g_hi * X).hi};
}

// a prime p with p^2 | c and (b, p) = 1 makes the m = 0 character sum vanish
bool squarefull_vanishing(const Eis& b, const Eis& c) {
    for (const auto& [p, k] : factor(c).factors)
        if (k >= 2 && !divides(p, b)) return true;
    return false;
}

cd symbol_value(const Eis& x, const Eis& c) {
    CubicSymbol s = cubic_symbol(x, c);
    if (s.zero()) return 0;
    return std::polar(1.0, 2 * kPi * s.j / 3);
}

// the squarefree closed form of the m = 0 sum in floating point; exact root-sum products cost O(N(c)^2)
cd m0_closed_value(const Eis& b, const Eis& c) {
    cd out = 0;
    for (const Eis& c1 : primary_divisors(c)) {
        const i64 r = ramanujan_divisor_formula(b, c1);
        if (r == 0) continue;
        const Eis c2 = exact_div(c, c1);
        const cd sym = symbol_value(c1, c2) * symbol_value(b * b, c2);
        if (sym == 0.0) continue;
        out += static_cast<double>(r) * gauss_sum(1, kOne, c1).value() * sym * static_cast<double>(norm(c2));
    }
    return out;
}

std::map<std::string, double>& h_cache() {
    static std::map<std::string, double> cache;
    return cache;
}

double reference_h(const ExperimentConfig& cfg) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const std::string key = cfg.V_preset + "|" + cfg.g_preset;
    auto it = h_cache().find(key);
    if (it != h_cache().end()) return it->second;
    double h = h_transform(resolve_pair(cfg), 1.0 / 3, 0).real();
    h_cache()[key] = h;
    return h;
}

}  // namespace

TestFunctionPair resolve_pair(const ExperimentConfig& cfg) { return preset_pair(cfg.V_preset, cfg.g_preset); }

NormWindow n_window(const TestFunctionPair& f, double X) { return {f.g_lo * X, f.g_hi * X}; }

NormWindow c_window(const TestFunctionPair& f, const Eis& b, double n_norm) {
    // |4 pi sqrt(n^3 b) / c| = 4 pi (N(n)^3 N(b))^{1/4} / N(c)^{1/2}
    const double k = 16 * kPi * kPi * std::sqrt(n_norm * n_norm * n_norm * static_cast<double>(norm(b)));
    return {k / (f.V_hi * f.V_hi), k / (f.V_lo * f.V_lo)};
}

cd v_weight(const TestFunctionPair& f, const Eis& n, const Eis& b, const Eis& c) {
    const cd nn = to_complex(n);
    const cd z = 4 * kPi * std::sqrt(nn * nn * nn * to_complex(b)) / to_complex(c);
    return f.V(z);
}

double geometric_ops_estimate(const ExperimentConfig& cfg, const TestFunctionPair& f, double X) {
    double est = 0;
    for (const Eis& n : n_list(f, X)) {
        NormWindow w = c_window(f, cfg.b, static_cast<double>(norm(n)));
        est += norm_mass(w.lo, w.hi, cfg.D);
    }
    return est;
}

namespace {

struct Plan {
    std::vector<Eis> ns, cs;
    std::vector<NormWindow> windows;  // per n
    double ops = 0;
};

Plan plan_geometric(const ExperimentConfig& cfg, const TestFunctionPair& f, double X) {
    Plan p;
    p.ns = n_list(f, X);
    if (p.ns.empty()) return p;
    const double est = geometric_ops_estimate(cfg, f, X);
    if (est > 2 * cfg.op_budget) {
        std::ostringstream os;
        os << "geometric_side at X=" << X << ": about " << est << " Kloosterman terms, budget " << cfg.op_budget;
        throw BudgetExceeded(os.str());
    }
    double lo = 1e300, hi = 0;
    for (const Eis& n : p.ns) {
        NormWindow w = c_window(f, cfg.b, static_cast<double>(norm(n)));
        p.windows.push_back(w);
        lo = std::min(lo, w.lo);
        hi = std::max(hi, w.hi);
    }
    p.cs = c_list(cfg.D, lo, hi);
    for (const Eis& c : p.cs)
        for (const NormWindow& w : p.windows)
            if (w.contains(static_cast<double>(norm(c)))) p.ops += static_cast<double>(norm(c));
    if (p.ops > cfg.op_budget) {
        std::ostringstream os;
        os << "geometric_side at X=" << X << ": " << p.ops << " Kloosterman terms, budget " << cfg.op_budget;
        throw BudgetExceeded(os.str());
    }
    return p;
}

// contribution of one (n, c) pair, zero without evaluating the sum when a weight vanishes
bool pair_term(const ExperimentConfig& cfg, const TestFunctionPair& f, double X, const Eis& n, const Eis& c,
               cd& out) {
    const double gw = f.g(static_cast<double>(norm(n)) / X);
    if (gw == 0) return false;
    const cd vw = v_weight(f, n, cfg.b, c);
    if (vw == 0.0) return false;
    const cd s = kloosterman(n * n * n, cfg.b, c).value();
    out = gw * s / static_cast<double>(norm(c)) * vw;
    return true;
}

}  // namespace

std::vector<GeometricTerm> geometric_terms(const ExperimentConfig& cfg, const TestFunctionPair& f, double X) {
    Plan p = plan_geometric(cfg, f, X);
    std::vector<std::vector<GeometricTerm>> per_c(p.cs.size());
    parallel_for(static_cast<long>(p.cs.size()), cfg.jobs, [&](long i) {
        const Eis& c = p.cs[static_cast<size_t>(i)];
        for (size_t j = 0; j < p.ns.size(); ++j) {
            if (!p.windows[j].contains(static_cast<double>(norm(c)))) continue;
            cd v;
            if (pair_term(cfg, f, X, p.ns[j], c, v)) per_c[static_cast<size_t>(i)].push_back({p.ns[j], c, v});
        }
    });
    std::vector<GeometricTerm> out;
    for (auto& v : per_c) out.insert(out.end(), v.begin(), v.end());
    return out;
}

SideDetail geometric_side_detail(const ExperimentConfig& cfg, const TestFunctionPair& f, double X, SumOrder order) {
    SideDetail d;
    if (X <= 0) return d;
    Plan p = plan_geometric(cfg, f, X);
    d.n_count = static_cast<long>(p.ns.size());
    d.c_count = static_cast<long>(p.cs.size());
    d.ops = p.ops;
    cd total = 0;
    if (order == SumOrder::c_outer) {
        std::vector<cd> partial(p.cs.size());
        std::vector<long> counts(p.cs.size(), 0);
        parallel_for(static_cast<long>(p.cs.size()), cfg.jobs, [&](long i) {
            const Eis& c = p.cs[static_cast<size_t>(i)];
            cd s = 0;
            for (size_t j = 0; j < p.ns.size(); ++j) {
                if (!p.windows[j].contains(static_cast<double>(norm(c)))) continue;
                cd v;
                if (pair_term(cfg, f, X, p.ns[j], c, v)) {
                    s += v;
                    ++counts[static_cast<size_t>(i)];
                }
            }
            partial[static_cast<size_t>(i)] = s;
        });
        // fixed reduction order: identical results for any number of jobs
        for (size_t i = 0; i < partial.size(); ++i) {
            total += partial[i];
            d.terms += counts[i];
        }
    } else {
        for (size_t j = 0; j < p.ns.size(); ++j) {
            cd s = 0;
            for (const Eis& c : p.cs) {
                if (!p.windows[j].contains(static_cast<double>(norm(c)))) continue;
                cd v;
                if (pair_term(cfg, f, X, p.ns[j], c, v)) {
                    s += v;
                    ++d.terms;
                }
            }
            total += s;
        }
    }
    d.value = cfg.unfolding / X * total;
    return d;
}

cd geometric_side(const ExperimentConfig& cfg, double X) {
    return geometric_side_detail(cfg, resolve_pair(cfg), X).value;
}

double m_zero_weight(const TestFunctionPair& f, const Eis& b, const Eis& c, double X) {
    if (!f.V_radial) throw std::invalid_argument("m_zero_weight: V must be radial");
    // t = r e^{i theta}: 2 pi int g(r^2 / X) V(4 pi r^{3/2} N(b)^{1/4} / N(c)^{1/2}) r dr
    const double kb = 4 * kPi * std::pow(static_cast<double>(norm(b)), 0.25) / sqrt_norm(c);
    double r_lo = std::sqrt(f.g_lo * X), r_hi = std::sqrt(f.g_hi * X);
    r_lo = std::max(r_lo, std::pow(f.V_lo / kb, 2.0 / 3));
    r_hi = std::min(r_hi, std::pow(f.V_hi / kb, 2.0 / 3));
    if (r_hi <= r_lo) return 0;
    auto integrand = [&](double r) { return f.g(r * r / X) * f.V(cd(kb * std::pow(r, 1.5), 0)).real() * r; };
    double prev = 0;
    for (int n = 32; n <= (1 << 16); n *= 2) {
        const double h = (r_hi - r_lo) / n;
        double s = 0;
        for (int i = 1; i < n; ++i) s += integrand(r_lo + h * i);
        s *= h;
        if (n > 32 && std::abs(s - prev) <= 1e-13 * std::max(std::abs(s), 1e-300)) return 2 * kPi * s;
        prev = s;
    }
    return 2 * kPi * prev;
}

long m_zero_term_count(const ExperimentConfig& cfg, const TestFunctionPair& f, double X) {
    NormWindow w = m_zero_c_range(f, cfg.b, X);
    long count = 0;
    for (const Eis& c : c_list(cfg.D, w.lo, w.hi))
        if (m_zero_weight(f, cfg.b, c, X) != 0) ++count;
    return count;
}

SideDetail m_zero_term_detail(const ExperimentConfig& cfg, const TestFunctionPair& f, double X) {
    SideDetail d;
    if (X <= 0) return d;
    NormWindow w = m_zero_c_range(f, cfg.b, X);
    const double est = norm_mass(w.lo, w.hi, cfg.D);
    if (est > 2 * cfg.op_budget) {
        std::ostringstream os;
        os << "m_zero_term at X=" << X << ": about " << est << " terms, budget " << cfg.op_budget;
        throw BudgetExceeded(os.str());
    }
    std::vector<Eis> cs = c_list(cfg.D, w.lo, w.hi);
    for (const Eis& c : cs) d.ops += static_cast<double>(norm(c));
    if (d.ops > cfg.op_budget) {
        std::ostringstream os;
        os << "m_zero_term at X=" << X << ": " << d.ops << " terms, budget " << cfg.op_budget;
        throw BudgetExceeded(os.str());
    }
    d.c_count = static_cast<long>(cs.size());
    std::vector<cd> partial(cs.size());
    std::vector<char> used(cs.size(), 0);
    parallel_for(static_cast<long>(cs.size()), cfg.jobs, [&](long i) {
        const Eis& c = cs[static_cast<size_t>(i)];
        const double weight = m_zero_weight(f, cfg.b, c, X);
        if (weight == 0) return;
        used[static_cast<size_t>(i)] = 1;
        const cd m0 = m0_value(cfg.b, c);
        const double nc = static_cast<double>(norm(c));
        partial[static_cast<size_t>(i)] = m0 * weight / (nc * nc);
    });
    cd total = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
        total += partial[i];
        d.terms += used[i];
    }
    d.value = cfg.unfolding * 2 / std::sqrt(3.0) / X * total;
    return d;
}

cd m0_value(const Eis& b, const Eis& c) {
    if (is_squarefree(c)) return m0_closed_value(b, c);
    if (squarefull_vanishing(b, c)) return 0;
    return m0_sum(b, c).value();
}

cd m_zero_term(const ExperimentConfig& cfg, double X) { return m_zero_term_detail(cfg, resolve_pair(cfg), X).value; }

std::pair<Eis, int> split_b(const Eis& b) {
    Factorization fb = factor(b);
    if (fb.lambda_exponent != 0 || fb.factors.size() != 1 || (fb.factors[0].second != 1 && fb.factors[0].second != 3))
        throw std::invalid_argument("b must be p or p^3 for a prime p not dividing 3");
    return fb.factors[0];
}

namespace {

// (4 pi^3 / 9) / (6 (sqrt -3)^3 N(D))
cd summary_factor(const Eis& D) {
    const cd sqrt_m3_cubed{0, -3 * std::sqrt(3.0)};
    return (4 * kPi * kPi * kPi / 9) / (6.0 * sqrt_m3_cubed * static_cast<double>(norm(D)));
}

}  // namespace

cd main_term_constant(const ExperimentConfig& cfg) {
    auto [p, e] = split_b(cfg.b);
    if (e == 1) return compute_K_pD(p, cfg.D, cfg.hilbert_unit);
    const double np = static_cast<double>(norm(p));
    return compute_A_bD(p, cfg.D) * std::sqrt(np) * (1 + 1 / (np * np)) * summary_factor(cfg.D);
}

cd main_term(const ExperimentConfig& cfg, double X) {
    if (X <= 0) return 0;
    return main_term_constant(cfg) * std::sqrt(X) * reference_h(cfg);
}

cd unramified_branch_constant(const ExperimentConfig& cfg) {
    auto [p, e] = split_b(cfg.b);
    const Eis bp = primary_associate(cfg.b).second;
    RootSum g = gauss_sum(1, kOne, bp);
    if (g.exact_zero()) return 0;
    const double np = static_cast<double>(norm(p));
    return g.value() * compute_A_bD(p, cfg.D) / std::sqrt(std::pow(np, e)) * summary_factor(cfg.D) / 6.0;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] > 0 && std::abs(y[i]) > 0 && std::isfinite(y[i])) pts.emplace_back(std::log(x[i]), std::log(std::abs(y[i])));
    if (pts.size() < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (auto [a, b] : pts) {
        mx += a;
        my += b;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (auto [a, b] : pts) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
    }
    if (sxx == 0) return std::nullopt;
    return sxy / sxx;
}

ExperimentReport asymptotic_experiment(const ExperimentConfig& cfg) {
    if (cfg.xgrid.size() < 5) throw std::invalid_argument("asymptotic_experiment: need at least 5 X values");
    auto [mn, mx] = std::minmax_element(cfg.xgrid.begin(), cfg.xgrid.end());
    if (*mn <= 0 || *mx < 8 * *mn) throw std::invalid_argument("asymptotic_experiment: X grid must span a factor 8");
    const TestFunctionPair f = resolve_pair(cfg);
    ExperimentReport rep;
    rep.b = cfg.b;
    rep.D = cfg.D;
    rep.V_preset = cfg.V_preset;
    rep.g_preset = cfg.g_preset;
    rep.h_value = reference_h(cfg);
    rep.op_budget = cfg.op_budget;
    std::vector<double> xs, gs, ms, rs, zs, xs_all, ms_all;
    for (double X : cfg.xgrid) {
        ExperimentRow row;
        row.X = X;
        row.main = main_term(cfg, X);
        xs_all.push_back(X);
        ms_all.push_back(std::abs(row.main));
        try {
            SideDetail g = geometric_side_detail(cfg, f, X);
            SideDetail z = m_zero_term_detail(cfg, f, X);
            row.geometric = g.value;
            row.m_zero = z.value;
            row.residual = row.geometric - row.main;
            row.ops = g.ops + z.ops;
            row.computed = true;
            xs.push_back(X);
            gs.push_back(std::abs(row.geometric));
            rs.push_back(std::abs(row.residual));
            zs.push_back(std::abs(row.m_zero));
        } catch (const BudgetExceeded& e) {
            row.note = e.what();
        }
        rep.rows.push_back(row);
    }
    rep.slope_main = loglog_slope(xs_all, ms_all);
    rep.slope_geometric = loglog_slope(xs, gs);
    rep.slope_residual = loglog_slope(xs, rs);
    rep.slope_m_zero = loglog_slope(xs, zs);
    return rep;
}

std::string ExperimentReport::to_json() const {
    using nlohmann::json;
    auto cj = [](cd z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json j;
    j["b"] = to_string(b);
    j["D"] = to_string(D);
    j["V_preset"] = V_preset;
    j["g_preset"] = g_preset;
    j["h_V_1_3_0"] = h_value;
    j["op_budget"] = op_budget;
    j["rows"] = json::array();
    for (const ExperimentRow& r : rows) {
        json jr{{"X", r.X}, {"computed", r.computed}, {"main", cj(r.main)}};
        if (r.computed) {
            jr["geometric"] = cj(r.geometric);
            jr["residual"] = cj(r.residual);
            jr["m_zero"] = cj(r.m_zero);
            jr["ops"] = r.ops;
        } else {
            jr["note"] = r.note;
        }
        j["rows"].push_back(jr);
    }
    j["slope_geometric"] = opt(slope_geometric);
    j["slope_main"] = opt(slope_main);
    j["slope_residual"] = opt(slope_residual);
    j["slope_m_zero"] = opt(slope_m_zero);
    return j.dump(2);
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "X,re,im,main_re,main_im,resid\n";
    for (const ExperimentRow& r : rows) {
        os << r.X << ',';
        if (r.computed)
            os << r.geometric.real() << ',' << r.geometric.imag();
        else
            os << "nan,nan";
        os << ',' << r.main.real() << ',' << r.main.imag() << ',';
        if (r.computed)
            os << std::abs(r.residual);
        else
            os << "nan";
        os << '\n';
    }
    return os.str();
}

}  // namespace cubic
