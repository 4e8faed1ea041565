#include "cubic/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cubic/appendix.hpp"
#include "cubic/bessel.hpp"
#include "cubic/characters.hpp"
#include "cubic/constants.hpp"
#include "cubic/expsums.hpp"
#include "cubic/geometric.hpp"
#include "cubic/hecke.hpp"

namespace cubic {

using Task = std::function<CellRecord()>;
using Params = std::vector<std::pair<std::string, std::string>>;

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_complex(std::complex<double> z) {
    const double scale = std::max(1.0, std::abs(z));
    double re = z.real(), im = z.imag();
    if (std::abs(re) < 1e-9 * scale) re = 0;
    if (std::abs(im) < 1e-9 * scale) im = 0;
    char buf[64];
    if (im == 0)
        std::snprintf(buf, sizeof buf, "%.12g", re);
    else
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
    return buf;
}

std::vector<CellRecord> run_cells(const std::vector<Task>& tasks, int jobs, bool timing) {
    std::vector<CellRecord> out(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < tasks.size(); i = next++) {
            auto t0 = std::chrono::steady_clock::now();
            out[i] = tasks[i]();
            if (timing)
                out[i].elapsed_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

long VerificationReport::agreed() const {
    return static_cast<long>(std::count_if(cells.begin(), cells.end(), [](const CellRecord& c) { return c.agree; }));
}

namespace {

nlohmann::ordered_json config_json(const std::string& suite, const SuiteConfig& c) {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["max_norm"] = c.max_norm;
    j["kmax"] = c.kmax;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    return j;
}

}  // namespace

std::string VerificationReport::config_hash() const { return fnv1a_hex(config_json(suite, config).dump()); }

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["tool_version"] = kToolVersion;
    j["config"] = config_json(suite, config);
    j["config_hash"] = config_hash();
    auto& arr = j["cells"] = nlohmann::ordered_json::array();
    for (const CellRecord& c : cells) {
        nlohmann::ordered_json r;
        r["suite"] = c.suite;
        r["lemma"] = c.lemma;
        r["row"] = c.row;
        nlohmann::ordered_json p = nlohmann::ordered_json::object();
        for (const auto& [k, v] : c.params) p[k] = v;
        r["params"] = p;
        r["closed_form"] = c.closed_form;
        r["brute"] = c.brute;
        r["agree"] = c.agree;
        if (!c.pinned.empty()) r["pinned"] = c.pinned;
        if (c.alternative)
            r["alternative"] = {{"label", c.alternative->label},
                                {"value", c.alternative->value},
                                {"agree", c.alternative->agree}};
        r["elapsed_ms"] = std::round(c.elapsed_ms * 1000) / 1000;
        arr.push_back(std::move(r));
    }
    j["summary"] = {{"total", total()}, {"agree", agreed()}, {"disagree", failed()}};
    return j.dump(2) + "\n";
}

std::string VerificationReport::to_csv() const {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    std::ostringstream os;
    os << "suite,lemma,row,params,closed_form,brute,agree,elapsed_ms\n";
    for (const CellRecord& c : cells) {
        std::string p;
        for (const auto& [k, v] : c.params) p += (p.empty() ? "" : ";") + k + "=" + v;
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", c.elapsed_ms);
        os << c.suite << ',' << c.lemma << ',' << quote(c.row) << ',' << quote(p) << ',' << quote(c.closed_form) << ','
           << quote(c.brute) << ',' << (c.agree ? "true" : "false") << ',' << ms << '\n';
    }
    return os.str();
}

namespace {

const Eis kPi4{-2, 0};
const Eis kPi7{-2, -3};
const Eis kPi13{4, 3};
const std::vector<Eis> kLocalPrimes{kPi4, kPi7, kPi13};

std::string fmt(const RootSum& r) { return format_complex(r.value()); }
std::string fmt(double x) { return format_complex(x); }
std::string s(const Eis& x) { return to_string(x); }
std::string s(i64 x) { return std::to_string(x); }

std::uint64_t cell_seed(const SuiteConfig& cfg, const std::string& key) {
    return cfg.seed ^ std::stoull(fnv1a_hex(key), nullptr, 16);
}

std::vector<Eis> units_of(const Eis& c) {
    ResidueRing ring(c);
    std::vector<Eis> out;
    for (i64 i : ring.units()) out.push_back(ring.element(i));
    return out;
}

// want distinct tuples from the product of the pools, or all of them when there are fewer
std::vector<std::vector<Eis>> tuples(const std::vector<std::vector<Eis>>& pools, int want, std::uint64_t seed) {
    double total = 1;
    for (const auto& p : pools) total *= static_cast<double>(p.size());
    std::vector<std::vector<Eis>> out;
    if (total == 0) return out;
    if (total <= want) {
        std::vector<size_t> idx(pools.size(), 0);
        while (true) {
            std::vector<Eis> t;
            for (size_t i = 0; i < pools.size(); ++i) t.push_back(pools[i][idx[i]]);
            out.push_back(std::move(t));
            size_t i = 0;
            while (i < pools.size() && ++idx[i] == pools[i].size()) idx[i++] = 0;
            if (i == pools.size()) break;
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    std::set<std::vector<size_t>> seen;
    while (static_cast<int>(out.size()) < want) {
        std::vector<size_t> idx;
        for (const auto& p : pools) idx.push_back(static_cast<size_t>(rng() % p.size()));
        if (!seen.insert(idx).second) continue;
        std::vector<Eis> t;
        for (size_t i = 0; i < pools.size(); ++i) t.push_back(pools[i][idx[i]]);
        out.push_back(std::move(t));
    }
    return out;
}

CellRecord from_local(const std::string& suite, const LocalEval& ev) {
    CellRecord c;
    c.suite = suite;
    c.lemma = ev.lemma;
    c.row = ev.row;
    c.params = ev.params;
    c.closed_form = fmt(ev.closed_form);
    c.brute = fmt(ev.brute);
    c.agree = ev.agree;
    if (ev.has_alternative) {
        c.pinned = ev.pinned;
        c.alternative = Alternative{ev.alternative_label, fmt(ev.alternative), ev.alternative_agree};
    }
    return c;
}

CellRecord simple(const std::string& suite, const std::string& lemma, const std::string& row, Params params,
                  std::string closed, std::string brute, bool agree) {
    CellRecord c;
    c.suite = suite;
    c.lemma = lemma;
    c.row = row;
    c.params = std::move(params);
    c.closed_form = std::move(closed);
    c.brute = std::move(brute);
    c.agree = agree;
    return c;
}

// (pi, k) with N(pi^k) <= cap, k <= kmax
std::vector<std::pair<Eis, int>> local_moduli(const SuiteConfig& cfg, int kmin = 1) {
    std::vector<std::pair<Eis, int>> out;
    const i64 cap = std::min<i64>(cfg.max_norm, 100000);
    for (const Eis& p : kLocalPrimes) {
        i64 n = 1;
        for (int k = 1; k <= cfg.kmax; ++k) {
            n *= norm(p);
            if (n > cap) break;
            if (k >= kmin) out.emplace_back(p, k);
        }
    }
    return out;
}

std::string key(const std::string& lemma, const Eis& p, int k, int extra) {
    return lemma + "|" + s(p) + "|" + std::to_string(k) + "|" + std::to_string(extra);
}

// ---------------------------------------------------------------- suites

void katz(const SuiteConfig& cfg, std::vector<Task>& t) {
    auto cell = [](Eis x, Eis m, Eis c, std::string row) {
        return [=] {
            KatzSides k = katz_sides(x, m, c);
            return simple("katz", "katz", row, {{"x", s(x)}, {"m", s(m)}, {"c", s(c)}}, fmt(k.rhs), fmt(k.lhs), k.agree);
        };
    };
    for (const Eis& c : primary_elements(cfg.max_norm)) {
        auto u = units_of(c);
        for (const Eis& x : u)
            for (const Eis& m : u) t.push_back(cell(x, m, c, "exhaustive"));
    }
    // sampled range above the exhaustive one
    for (const Eis& c : primary_elements(4 * cfg.max_norm)) {
        if (norm(c) <= cfg.max_norm) continue;
        auto u = units_of(c);
        for (const auto& tp : tuples({u, u}, 4, cell_seed(cfg, "katz|" + s(c)))) t.push_back(cell(tp[0], tp[1], c, "sampled"));
    }
}

void weil(const SuiteConfig& cfg, std::vector<Task>& t) {
    for (const Eis& c : primary_elements(cfg.max_norm)) {
        if (norm(c) == 1) continue;
        ResidueRing ring(c);
        std::vector<Eis> all;
        for (i64 i = 0; i < ring.size(); ++i) all.push_back(ring.element(i));
        const int want = std::max(50, cfg.samples);
        for (const auto& tp : tuples({all, all}, want, cell_seed(cfg, "weil|" + s(c)))) {
            Eis mu = tp[0], nu = tp[1];
            t.push_back([=] {
                const double r = weil_ratio(mu, nu, c);
                const i64 tau = divisor_count(c);
                const bool prime = is_prime(c);
                CellRecord rec = simple("weil", "weil", prime ? "prime" : "composite",
                                        {{"mu", s(mu)}, {"nu", s(nu)}, {"c", s(c)}},
                                        "tau(c)^2 = " + s(tau * tau), fmt(r), r <= static_cast<double>(tau * tau) + 1e-9);
                rec.pinned = "tau(c)^2 envelope";
                rec.alternative = Alternative{"constant 4", "4", r <= 4 + 1e-9};
                return rec;
            });
        }
    }
}

template <class F>
void local_grid(const SuiteConfig& cfg, std::vector<Task>& t, const std::string& suite, int kmin, int pools,
                std::function<std::vector<int>(int k)> extras, F eval) {
    for (auto [p, k] : local_moduli(cfg, kmin)) {
        auto u = units_of(pow(p, static_cast<unsigned>(k)));
        std::vector<std::vector<Eis>> pl(static_cast<size_t>(pools), u);
        for (int e : extras(k))
            for (const auto& tp : tuples(pl, cfg.samples, cell_seed(cfg, key(suite, p, k, e))))
                t.push_back([=] { return from_local(suite, eval(tp, p, k, e)); });
    }
}

std::vector<int> one_to(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

void zerob(const SuiteConfig& cfg, std::vector<Task>& t) {
    local_grid(cfg, t, "zerob", 1, 2, [](int k) { return one_to(k + 1); },
               [](const std::vector<Eis>& v, Eis p, int k, int j) { return eval_zerob(v[0], v[1], p, j, k); });
}

void pprime(const SuiteConfig& cfg, std::vector<Task>& t) {
    local_grid(cfg, t, "pprime", 1, 3, [](int k) { return one_to(k + 1); },
               [](const std::vector<Eis>& v, Eis p, int k, int j) { return eval_pprime(v[0], v[1], v[2], p, j, k); });
}

void ppro(const SuiteConfig& cfg, std::vector<Task>& t) {
    local_grid(cfg, t, "ppro", 1, 2, [](int k) { return std::vector<int>{k, k + 1}; },
               [](const std::vector<Eis>& v, Eis p, int k, int l) { return eval_ppro(l, v[0], v[1], p, k); });
}

void aco0(const SuiteConfig& cfg, std::vector<Task>& t) {
    local_grid(cfg, t, "aco0", 1, 2, [](int k) { return one_to(k + 1); },
               [](const std::vector<Eis>& v, Eis p, int k, int j) { return eval_aco0(v[0], v[1], p, j, k); });
}

void aco01(const SuiteConfig& cfg, std::vector<Task>& t) {
    local_grid(cfg, t, "aco01", 1, 2, [](int k) { return one_to(std::max(k + 1, 4)); },
               [](const std::vector<Eis>& v, Eis p, int k, int j) { return eval_aco01(v[0], v[1], p, j, k); });
}

void hurt(const SuiteConfig& cfg, std::vector<Task>& t) {
    local_grid(cfg, t, "hurt", 1, 3,
               [](int k) {
                   std::vector<int> r;
                   for (int i = (k == 1 ? 1 : 0); i <= k; ++i) r.push_back(i);
                   return r;
               },
               [](const std::vector<Eis>& v, Eis p, int k, int r) { return eval_hurt(v[0], v[1], v[2], p, k, r); });
}

void psq(const SuiteConfig& cfg, std::vector<Task>& t) {
    local_grid(cfg, t, "psq", 2, 2, [](int) { return std::vector<int>{0}; },
               [](const std::vector<Eis>& v, Eis p, int k, int) { return psq_eval(v[0], v[1], p, k); });
}

void sim(const SuiteConfig& cfg, std::vector<Task>& t) {
    const i64 cap = std::min<i64>(cfg.max_norm, 2500);
    for (const Eis& p : kLocalPrimes) {
        if (norm(p) > cfg.max_norm) continue;
        // squarefull moduli from the other primes of the set
        std::vector<Eis> moduli;
        for (const Eis& q : kLocalPrimes) {
            if (q == p) continue;
            for (unsigned e = 2; e <= 4; ++e)
                if (norm(pow(q, e)) <= cap) moduli.push_back(pow(q, e));
        }
        std::vector<Eis> others;
        for (const Eis& q : kLocalPrimes)
            if (!(q == p)) others.push_back(q);
        if (norm(others[0] * others[0] * others[1] * others[1]) <= cap)
            moduli.push_back(others[0] * others[0] * others[1] * others[1]);
        for (const Eis& c : moduli) {
            // units mod c, shifted by multiples of c until coprime to p
            std::vector<Eis> u;
            for (Eis x : units_of(c)) {
                while (!coprime(x, p)) x = x + c;
                u.push_back(x);
            }
            for (int i : {0, 1, 3})
                for (int j : {0, 2})
                    for (int k : {-3, -1, 0}) {
                        const int tag = 100 * i + 10 * j + (k + 5);
                        for (const auto& tp : tuples({u, u}, cfg.samples, cell_seed(cfg, key("sim", p * c, 0, tag))))
                            t.push_back([=] { return from_local("sim", eval_sim(tp[0], c, tp[1], p, i, j, k)); });
                    }
        }
    }
}

void m0(const SuiteConfig& cfg, std::vector<Task>& t) {
    // squarefree moduli from the set
    std::vector<Eis> sqf;
    for (int mask = 1; mask < 8; ++mask) {
        Eis c = kOne;
        for (int i = 0; i < 3; ++i)
            if (mask >> i & 1) c = c * kLocalPrimes[static_cast<size_t>(i)];
        if (norm(c) <= cfg.max_norm) sqf.push_back(c);
    }
    std::sort(sqf.begin(), sqf.end(), canonical_less);
    for (const Eis& c : sqf) {
        ResidueRing ring(c);
        std::vector<Eis> bs;
        for (i64 i = 0; i < ring.size(); ++i) {
            Eis b = ring.element(i);
            if (divisible_by_lambda(b)) b = b + c;
            bs.push_back(b);
        }
        for (const auto& tp : tuples({bs}, cfg.samples, cell_seed(cfg, "m0|" + s(c)))) {
            Eis b = tp[0];
            t.push_back([=] { return from_local("m0", m0_reduction(b, c)); });
            t.push_back([=] {
                RootSum local = m0_sum(b, c), closed = m0_closed(b, c);
                return simple("m0", "m0", "local route, squarefree", {{"b", s(b)}, {"c", s(c)}}, fmt(closed), fmt(local),
                              local == closed);
            });
        }
    }
    // a squarefull part coprime to b kills the sum
    for (auto [p, k] : local_moduli(cfg, 2)) {
        Eis c = pow(p, static_cast<unsigned>(k));
        for (const auto& tp : tuples({units_of(c)}, cfg.samples, cell_seed(cfg, key("m0sf", p, k, 0)))) {
            Eis b = tp[0];
            t.push_back([=] {
                RootSum v = m0_sum(b, c);
                return simple("m0", "m0", "squarefull, (b,c)=1", {{"b", s(b)}, {"c", s(c)}}, "0", fmt(v), v.exact_zero());
            });
        }
    }
}

void gauss(const SuiteConfig& cfg, std::vector<Task>& t) {
    for (const Eis& p : primary_primes(cfg.max_norm))
        t.push_back([=] {
            RootSum g = gauss_sum(1, kOne, p);
            return simple("gauss", "gauss", "|g(1,p)|^2 = N(p)", {{"p", s(p)}}, s(norm(p)), fmt(g * g.conj()),
                          g * g.conj() == RootSum::scalar(norm(p)));
        });
    // vanishing on prime powers; moduli up to 100 times the cap
    for (const Eis& p : primary_primes(cfg.max_norm))
        for (unsigned k = 2; k <= 4; ++k) {
            Eis c = pow(p, k);
            if (norm(c) > 100 * cfg.max_norm) break;
            for (const auto& tp : tuples({units_of(c)}, cfg.samples, cell_seed(cfg, key("gvan", p, static_cast<int>(k), 0)))) {
                Eis r = tp[0];
                t.push_back([=] {
                    RootSum g = gauss_sum(1, r, c);
                    return simple("gauss", "gauss", "g(r,p^k) = 0", {{"r", s(r)}, {"p", s(p)}, {"k", s(k)}}, "0", fmt(g),
                                  g.exact_zero());
                });
            }
        }
    for (const Eis& c : primary_elements(cfg.max_norm)) {
        if (norm(c) == 1) continue;
        t.push_back([=] {
            // twist law over every reduced residue
            RootSum g1 = gauss_sum(1, kOne, c), g2 = gauss_sum(2, kOne, c);
            bool ok = true;
            long n = 0;
            for (const Eis& a : units_of(c)) {
                CubicSymbol sy = cubic_symbol(a, c);
                ok = ok && gauss_sum(1, a, c) == sy.conj().as_rootsum() * g1 && gauss_sum(2, a, c) == sy.as_rootsum() * g2;
                ++n;
            }
            return simple("gauss", "gauss", "twist law, all reduced a", {{"c", s(c)}, {"residues", s(n)}},
                          "g_k(a,c) = (a/c)^-k g_k(1,c)", ok ? "holds" : "fails", ok);
        });
        if (is_squarefree(c))
            t.push_back([=] {
                RootSum v = gauss_sum(1, kOne, c) * gauss_sum(2, kOne, c);
                return simple("gauss", "gauss", "g g_2 = N(f)", {{"f", s(c)}}, s(norm(c)), fmt(v),
                              v == RootSum::scalar(norm(c)));
            });
    }
}

void crt(const SuiteConfig& cfg, std::vector<Task>& t) {
    auto ps = primary_elements(cfg.max_norm);
    for (const Eis& c1 : ps)
        for (const Eis& c2 : ps) {
            if (norm(c1) == 1 || norm(c2) == 1 || !canonical_less(c1, c2) || !coprime(c1, c2) ||
                norm(c1) * norm(c2) > cfg.max_norm)
                continue;
            for (const Eis& A : {kOne, Eis{2, 1}})
                for (const Eis& B : {Eis{0, 0}, kOne, Eis{1, 2}})
                    t.push_back([=] {
                        RootSum lhs = t_sum(A, B, c1 * c2);
                        RootSum rhs = t_sum(A * c2 * c2, B, c1) * t_sum(A * c1 * c1, B, c2);
                        return simple("crt", "crt", "T(A,B,c1c2)",
                                      {{"A", s(A)}, {"B", s(B)}, {"c1", s(c1)}, {"c2", s(c2)}}, fmt(rhs), fmt(lhs),
                                      lhs == rhs);
                    });
        }
}

void t00y(const SuiteConfig& cfg, std::vector<Task>& t) {
    for (const Eis& c : primary_elements(cfg.max_norm))
        for (const Eis& A : {kOne, Eis{2, 1}}) {
            if (!coprime(A, c)) continue;
            t.push_back([=] {
                RootSum lhs = t_sum(A, {0, 0}, c), rhs = t_zero_decomposition_value(A, c);
                return simple("t00y", "t00y", "decomposition", {{"A", s(A)}, {"c", s(c)}}, fmt(rhs), fmt(lhs), lhs == rhs);
            });
        }
    for (auto [p, k] : local_moduli(cfg))
        t.push_back([=] {
            const Eis A{2, 1};
            RootSum closed = t_zero_closed(A, p, k), brute = t_sum(A, {0, 0}, pow(p, static_cast<unsigned>(k)));
            return simple("t00y", "t00y", "prime power", {{"A", s(A)}, {"pi", s(p)}, {"k", s(k)}}, fmt(closed), fmt(brute),
                          closed == brute);
        });
}

void constants(const SuiteConfig&, std::vector<Task>& t) {
    for (double sv : {2.0, 4.0, 5.0, 6.0, 7.0, 8.0, 12.0})
        t.push_back([=] {
            ZetaRoutes r = zeta_K_routes(sv);
            return simple("constants", "zeta_K", "two routes, 1e-10", {{"s", fmt(sv)}}, fmt(r.product), fmt(r.lattice),
                          std::abs(r.diff()) <= 1e-10);
        });
    t.push_back([] {
        const double z = compute_Z_K(), e = z_k_euler_product();
        return simple("constants", "Z_K", "Euler product, 1e-8", {}, fmt(z), fmt(e), std::abs(z - e) <= 1e-8);
    });
    for (const Eis& p : {kPi7, kPi13})
        t.push_back([=] {
            const bool ok = tail_identity_check(p);
            return simple("constants", "tail", "exact rational", {{"p", s(p)}}, "N(p)^-7/2", ok ? "equal" : "differs", ok);
        });
    t.push_back([] {
        const double a = compute_A_bD(kOne, kOne), z = compute_Z_K();
        return simple("constants", "A_bD", "A_{1,1} = Z_K", {{"b", "1"}, {"D", "1"}}, fmt(z), fmt(a),
                      a == z && divisor_factor(kOne, kOne) == 1);
    });
}

void bessel(const SuiteConfig&, std::vector<Task>& t) {
    for (double z : {0.3, 0.5, 1.0, 2.0, 5.0})
        t.push_back([=] {
            const double k = bessel_kernel(1.0 / 3, 0, z).real();
            const double minus = b13_minus_form(z), plus = b13_plus_form(z);
            auto rel = [&](double v) { return std::abs(k - v) / std::max(std::abs(v), 1e-300); };
            CellRecord c = simple("bessel", "B_{1/3,0}", "kernel vs closed form, 1e-8", {{"z", fmt(z)}}, fmt(minus), fmt(k),
                                  rel(minus) <= 1e-8);
            c.pinned = "(J_{-1/3}^2 - J_{1/3}^2)/sin(pi/3)";
            c.alternative = Alternative{"(J_{-1/3}^2 + J_{1/3}^2)/sin(pi/3)", fmt(plus), rel(plus) <= 1e-8};
            return c;
        });
    for (double z : {0.5, 1.0})
        t.push_back([=] {
            WIntegral w = kuznetsov_w_integral(kOne, z);
            CellRecord c = simple("bessel", "w-integral", "quadrature vs Bessel form, 1e-3", {{"b", "1"}, {"z", fmt(z)}},
                                  format_complex(w.rhs_kernel), format_complex(w.lhs), w.kernel_agree);
            c.pinned = "difference of squares";
            c.alternative = Alternative{"sum of squares", format_complex(w.rhs), w.agree};
            return c;
        });
}

void hecke(const SuiteConfig& cfg, std::vector<Task>& t) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, 4);
    const long norms[] = {4, 7, 13, 19, 25};
    const int M = 10;
    for (int it = 0; it < 100; ++it) {
        QW lambda = random_qw(rng), a0 = random_qw(rng), a1 = random_qw(rng), g = random_qw(rng);
        long np = norms[pick(rng)];
        t.push_back([=] {
            FormalSeries H = generating_function(lambda, a0, g, np, M);
            auto a = hecke_coefficients(lambda, a0, a1, g, np, M);
            bool ok = verify_euler_factor(lambda, a0, a1, g, np, M) && verify_regrouped(lambda, a0, g, np, M);
            return simple("hecke", "euler_factor", "order 10",
                          {{"lambda", lambda.to_string()}, {"a0", a0.to_string()}, {"gauss_term", g.to_string()},
                           {"Np", std::to_string(np)}},
                          H[M].to_string(), a[M].to_string(), ok);
        });
    }
    for (int it = 0; it < 100; ++it) {
        QW lambda = random_qw(rng);
        long np = norms[pick(rng)];
        t.push_back([=] {
            SeriesSplit sp = series_split(lambda, np, M, 2);
            auto show = [](const LinearForm& f) {
                std::string o;
                for (const auto& [k, v] : f) o += (o.empty() ? "" : " + ") + ("(" + v.to_string() + ")" + k);
                return o.empty() ? std::string("0") : o;
            };
            return simple("hecke", "series_split", "order 10, 2 classes",
                          {{"lambda", lambda.to_string()}, {"Np", std::to_string(np)}}, show(sp.rhs.at({1, M})),
                          show(sp.lhs.at({1, M})), sp.match);
        });
    }
    t.push_back([] {
        EisensteinLambda e = eisenstein_lambda(10);
        return simple("hecke", "eisenstein_lambda", "a_{p^3m} = N(p)^{3m/2}", {{"order", "10"}},
                      "mu = " + e.mu.to_string() + ", gamma = " + e.gamma.to_string(), e.report(), e.consistent && e.unique);
    });
}

void appendix(const SuiteConfig& cfg, std::vector<Task>& t) {
    for (i64 p = 2; p <= 31; ++p) {
        if (!is_prime_int(p)) continue;
        i64 pk = 1;
        for (int k = 1; k <= 6; ++k) {
            pk *= p;
            if (pk > cfg.max_norm) break;
            for (i64 A = 1; A < p; ++A)
                t.push_back([=] {
                    CubEval e = cub_case_eval(A, p, k);
                    static const char* rows[] = {"k=0 mod 3", "k=1 mod 3", "k=2 mod 3", "k=2 mod 3, p=3"};
                    return simple("appendix", "cub", rows[static_cast<int>(e.row)], {{"A", s(A)}, {"p", s(p)}, {"k", s(k)}},
                                  fmt(e.closed_form), fmt(e.brute), e.agree);
                });
        }
    }
    for (i64 p = 7; p <= std::min<i64>(cfg.max_norm, 200); p += 6) {
        if (!is_prime_int(p)) continue;
        t.push_back([=] {
            bool ok = true;
            for (i64 A = 1; A < p; ++A) ok = ok && p13_split(A, p);
            return simple("appendix", "p13", "all A mod p, both primary pi", {{"p", s(p)}}, "g(A,pi) + conj",
                          fmt(s_cubic(1, p)), ok);
        });
    }
    for (i64 c = 1; c <= std::min<i64>(cfg.max_norm, 500); ++c)
        for (i64 A : {1, 2}) {
            if (std::gcd(3 * A, c) != 1) continue;
            t.push_back([=] {
                RootSum lhs = s_cubic(A, c), rhs = pgen_rhs(A, c);
                return simple("appendix", "pgen", "N(delta) d^3 = c", {{"A", s(A)}, {"c", s(c)}}, fmt(rhs), fmt(lhs),
                              lhs == rhs);
            });
        }
    for (i64 A : {1, 2, 4, 5, 7, 8})
        t.push_back([=] {
            const int j = chi9(A);
            return simple("appendix", "chi9", "2cos(2 pi A/9) identity", {{"A", s(A)}}, "chi_9 = w^" + std::to_string(j),
                          fmt(2 * std::cos(2 * M_PI * static_cast<double>(A) / 9)), cos_identity(A));
        });
    t.push_back([] {
        RootSum tau = tau_chi9(1);
        RootSum n = tau * tau.conj();
        return simple("appendix", "tau_chi9", "|tau|^2 = 9", {}, "9", fmt(n), n == RootSum::scalar(9));
    });
    for (i64 c = 1; c <= std::min<i64>(cfg.max_norm, 400); ++c)
        t.push_back([=] {
            TBranch b = t_branch(c);
            RootSum d = t_direct(c);
            const bool ok = std::abs(b.value - d.value()) <= 1e-8 * std::max(1.0, std::abs(d.value())) &&
                            (!b.zero_by_rule || d.exact_zero());
            return simple("appendix", "T(c)", "j=" + std::to_string(b.j), {{"c", s(c)}}, format_complex(b.value), fmt(d),
                          ok);
        });
}

// V on a thin annulus, so that a small X already carries a few dozen moduli
TestFunctionPair narrow_pair() {
    TestFunctionPair ref = preset_pair();
    const double lo = 2.0, hi = 2.3;
    const double mid = (std::log(lo) + std::log(hi)) / 2, half = (std::log(hi) - std::log(lo)) / 2;
    auto bump = [](double u) { return std::abs(u) < 1 ? std::exp(1 / (u * u - 1)) : 0.0; };
    return make_test_pair(
        ref.g, ref.g_lo, ref.g_hi, [=](cd z) { return cd(bump((std::log(std::abs(z)) - mid) / half)); }, lo, hi, true,
        "bump-12", "narrow");
}

void experiment(const SuiteConfig& cfg, std::vector<Task>& t) {
    t.push_back([] {
        ExperimentConfig ec;
        ec.xgrid = {2.5};
        TestFunctionPair f = narrow_pair();
        SideDetail a = geometric_side_detail(ec, f, 2.5, SumOrder::c_outer);
        SideDetail b = geometric_side_detail(ec, f, 2.5, SumOrder::n_outer);
        const bool ok = std::abs(a.value - b.value) <= 1e-12 * std::max(1e-300, std::abs(a.value));
        return simple("experiment", "geometric", "c-outer vs n-outer", {{"X", "2.5"}, {"V", "narrow"}, {"b", "1+3*w"}},
                      format_complex(a.value), format_complex(b.value), ok);
    });
    for (const Eis& c : primary_elements(std::min<i64>(cfg.max_norm, 300)))
        t.push_back([=] {
            const Eis b{1, 3};
            cd f = m0_value(b, c);
            RootSum e = m0_sum(b, c);
            return simple("experiment", "m0_value", "float vs exact", {{"b", s(b)}, {"c", s(c)}}, format_complex(f), fmt(e),
                          std::abs(f - e.value()) <= 1e-8 * std::max(1.0, std::abs(e.value())));
        });
    t.push_back([] {
        FM0Report r = f_m0_experiment({4, 8, 16, 32, 64});
        std::string slope = r.slope ? fmt(*r.slope) : "none";
        return simple("experiment", "f_m0", "direct vs branch route", {{"xgrid", "4:64:*2"}, {"preset", r.preset}},
                      "slope <= -0.3", slope, r.routes_agree && r.slope && *r.slope <= -0.3);
    });
}

using Builder = void (*)(const SuiteConfig&, std::vector<Task>&);

const std::vector<std::pair<std::string, Builder>>& builders() {
    static const std::vector<std::pair<std::string, Builder>> b{
        {"katz", katz},   {"weil", weil},     {"zerob", zerob},         {"pprime", pprime},   {"ppro", ppro},
        {"aco0", aco0},   {"aco01", aco01},   {"hurt", hurt},           {"sim", sim},         {"m0", m0},
        {"gauss", gauss}, {"crt", crt},       {"t00y", t00y},           {"psq", psq},         {"constants", constants},
        {"bessel", bessel}, {"hecke", hecke}, {"appendix", appendix},   {"experiment", experiment}};
    return b;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, f] : builders()) n.push_back(name);
        n.push_back("all");
        return n;
    }();
    return names;
}

VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    std::vector<Task> tasks;
    bool found = false;
    for (const auto& [n, build] : builders())
        if (name == "all" || name == n) {
            build(cfg, tasks);
            found = true;
        }
    if (!found) throw std::invalid_argument("unknown suite: " + name);
    VerificationReport r;
    r.suite = name;
    r.config = cfg;
    r.cells = run_cells(tasks, cfg.jobs, cfg.timing);
    return r;
}

}  // namespace cubic
