// One PASS/FAIL line per acceptance criterion. Criteria 4, 5 and 8 are known to fail as stated (see README);
// the exit code is nonzero only when some other criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "cubic/bessel.hpp"
#include "cubic/expsums.hpp"
#include "cubic/geometric.hpp"
#include "cubic/suites.hpp"

using namespace cubic;

namespace {

const std::set<int> kKnownRed{4, 5, 8};
int unexpected = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(int n, bool pass, const std::string& detail, double secs) {
    std::printf("criterion %d: %s | %s | %.1fs\n", n, pass ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass && !kKnownRed.count(n)) ++unexpected;
}

void info(const std::string& text) {
    std::printf("    %s\n", text.c_str());
    std::fflush(stdout);
}

std::string tally(const VerificationReport& r) {
    return std::to_string(r.agreed()) + "/" + std::to_string(r.total()) + " cells agree";
}

SuiteConfig cfg_with(i64 max_norm) {
    SuiteConfig c;
    c.max_norm = max_norm;
    c.timing = false;
    return c;
}

void katz() {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = run_suite("katz", cfg_with(50));
    long sampled = std::count_if(r.cells.begin(), r.cells.end(), [](const CellRecord& c) { return c.row == "sampled"; });
    const double secs = seconds_since(t0);
    line(1, r.failed() == 0 && sampled >= 100 && secs <= 300,
         tally(r) + ", " + std::to_string(sampled) + " sampled triples with 50 < N(c) <= 200", secs);
}

void local_lemmas() {
    auto t0 = std::chrono::steady_clock::now();
    SuiteConfig c = cfg_with(100000);
    c.kmax = 5;
    c.samples = 20;
    long total = 0, agree = 0, pinned = 0, pinned_ok = 0;
    std::string per;
    for (const char* s : {"zerob", "pprime", "ppro", "aco0", "aco01", "hurt", "sim", "psq", "m0"}) {
        auto t1 = std::chrono::steady_clock::now();
        VerificationReport r = run_suite(s, c);
        total += r.total();
        agree += r.agreed();
        for (const CellRecord& cell : r.cells)
            if (cell.lemma == "aco0") {
                ++pinned;
                pinned_ok += cell.pinned == "statement (w/p)" && cell.agree;
            }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s %ld/%ld (%.0fs)", s, r.agreed(), r.total(), seconds_since(t1));
        info(buf);
    }
    const double secs = seconds_since(t0);
    line(2, agree == total && pinned > 0 && pinned_ok == pinned && secs <= 1800,
         std::to_string(agree) + "/" + std::to_string(total) + " cells agree, aco0 pinned to the statement reading in " +
             std::to_string(pinned_ok) + "/" + std::to_string(pinned) + " cells",
         secs);
}

void gauss() {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = run_suite("gauss", cfg_with(200));
    line(3, r.failed() == 0, tally(r) + " (vanishing, |g|^2 = N, twist law, g g_2 = N(f))", seconds_since(t0));
}

void weil() {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = run_suite("weil", cfg_with(500));
    double worst = 0, worst_prime = 0;
    std::string where;
    long over4 = 0;
    for (const CellRecord& c : r.cells) {
        const double v = std::stod(c.brute);
        if (v > worst) {
            worst = v;
            where = c.params[2].second;
        }
        if (c.row == "prime") worst_prime = std::max(worst_prime, v);
        over4 += !c.alternative->agree;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "|S_3|^2/(N(gcd)N(c)) <= 4 fails in %ld of %ld samples, worst %.4f at c = %s", over4,
                  r.total(), worst, where.c_str());
    line(4, over4 == 0, buf, seconds_since(t0));
    std::snprintf(buf, sizeof buf, "prime moduli: worst ratio %.4f (<= 4 holds); tau(c)^2 envelope: %s", worst_prime,
                  tally(r).c_str());
    info(buf);
}

void bessel() {
    auto t0 = std::chrono::steady_clock::now();
    bool plus_ok = true;
    double minus_worst = 0, plus_worst = 0;
    for (double z : {0.3, 0.5, 1.0, 2.0, 5.0}) {
        const double k = bessel_kernel(1.0 / 3, 0, z).real();
        const double rp = std::abs(k - b13_plus_form(z)) / std::abs(b13_plus_form(z));
        const double rm = std::abs(k - b13_minus_form(z)) / std::abs(b13_minus_form(z));
        plus_ok = plus_ok && rp <= 1e-8;
        plus_worst = std::max(plus_worst, rp);
        minus_worst = std::max(minus_worst, rm);
    }
    bool w_plus = true, w_kernel = true;
    double w_plus_err = 0, w_kernel_err = 0;
    for (double z : {0.5, 1.0}) {
        WIntegral w = kuznetsov_w_integral(kOne, z);
        w_plus = w_plus && w.agree;
        w_kernel = w_kernel && w.kernel_agree;
        w_plus_err = std::max(w_plus_err, w.rel_err);
        w_kernel_err = std::max(w_kernel_err, w.kernel_rel_err);
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "B_{1/3,0} = (|J_{-1/3}|^2 + |J_{1/3}|^2)/sin(pi/3): worst rel err %.3g; w-integral vs plus form: worst "
                  "rel err %.3g",
                  plus_worst, w_plus_err);
    line(5, plus_ok && w_plus, buf, seconds_since(t0));
    std::snprintf(buf, sizeof buf, "difference-of-squares form: kernel rel err %.3g, w-integral rel err %.3g (%s)",
                  minus_worst, w_kernel_err, w_kernel && minus_worst <= 1e-8 ? "agrees" : "disagrees");
    info(buf);
}

void constants() {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = run_suite("constants", cfg_with(1));
    line(6, r.failed() == 0, tally(r) + " (zeta_K two routes, Z_K Euler product, tail identity, A_{1,1} = Z_K)",
         seconds_since(t0));
}

void hecke() {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = run_suite("hecke", cfg_with(1));
    line(7, r.failed() == 0, tally(r) + " (100 Euler-factor tuples, 100 series splits, order 10)", seconds_since(t0));
    for (const CellRecord& c : r.cells)
        if (c.lemma == "eisenstein_lambda") info(c.brute);
}

void geometric() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;  // b = 1+3w (norm 7), D = 1, reference presets, X in {20, ..., 320}
    ExperimentReport r = asymptotic_experiment(cfg);
    long done = std::count_if(r.rows.begin(), r.rows.end(), [](const ExperimentRow& x) { return x.computed; });
    const bool ok = r.slope_geometric && *r.slope_geometric >= 0.3 && *r.slope_geometric <= 0.7 && r.slope_m_zero &&
                    *r.slope_m_zero <= -0.3;
    TestFunctionPair f = resolve_pair(cfg);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%ld of %zu grid points within the %.0e-op budget; needed %.2e ops at X=20, %.2e at X=320",
                  done, r.rows.size(), cfg.op_budget, geometric_ops_estimate(cfg, f, 20), geometric_ops_estimate(cfg, f, 320));
    line(8, ok, buf, seconds_since(t0));
}

void appendix() {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = run_suite("appendix", cfg_with(1000000));
    std::string per;
    for (const char* lemma : {"cub", "p13", "pgen", "chi9"}) {
        long n = 0, ok = 0;
        for (const CellRecord& c : r.cells)
            if (c.lemma == lemma) {
                ++n;
                ok += c.agree;
            }
        per += std::string(per.empty() ? "" : ", ") + lemma + " " + std::to_string(ok) + "/" + std::to_string(n);
    }
    line(9, r.failed() == 0, per + "; " + tally(r), seconds_since(t0));
}

}  // namespace

int main() {
    katz();
    local_lemmas();
    gauss();
    weil();
    bessel();
    constants();
    hecke();
    geometric();
    appendix();
    std::printf("known-red criteria: 4, 5, 8; unexpected failures: %d\n", unexpected);
    return unexpected == 0 ? 0 : 1;
}
