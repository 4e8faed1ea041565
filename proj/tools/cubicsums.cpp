#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubic/appendix.hpp"
#include "cubic/constants.hpp"
#include "cubic/geometric.hpp"
#include "cubic/suites.hpp"

using namespace cubic;

namespace {

constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Eis parse_element(const std::string& flag, const std::string& text) {
    try {
        return parse_eis(text);
    } catch (const std::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

// "20:320:*2", "1:5:+1" or "20,40,80"
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    try {
        if (text.find(':') == std::string::npos) {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        } else {
            const size_t a = text.find(':'), b = text.find(':', a + 1);
            if (b == std::string::npos || b + 2 > text.size()) throw std::invalid_argument("want lo:hi:*r or lo:hi:+s");
            const double lo = std::stod(text.substr(0, a)), hi = std::stod(text.substr(a + 1, b - a - 1));
            const char op = text[b + 1];
            const double step = std::stod(text.substr(b + 2));
            if (op == '*' && step > 1 && lo > 0)
                for (double x = lo; x <= hi * (1 + 1e-12); x *= step) out.push_back(x);
            else if (op == '+' && step > 0)
                for (double x = lo; x <= hi + 1e-12 * std::abs(hi); x += step) out.push_back(x);
            else
                throw std::invalid_argument("bad step");
        }
    } catch (const std::exception& e) {
        throw UsageError(std::string("--xgrid: ") + e.what());
    }
    if (out.empty()) throw UsageError("--xgrid: empty grid");
    return out;
}

// "1", "w" or "w^2" (also 0, 1, 2 as the exponent of w)
cd parse_unit(const std::string& text) {
    int j = -1;
    if (text == "1" || text == "0") j = 0;
    if (text == "w" || text == "w^1") j = 1;
    if (text == "w^2" || text == "w2" || text == "2") j = 2;
    if (j < 0) throw UsageError("--hilbert-unit: expected 1, w or w^2");
    return std::polar(1.0, 2 * M_PI * j / 3);
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("--out: cannot open " + out);
    f << text;
}

nlohmann::ordered_json complex_json(cd z) { return {{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}}; }

int finish_report(const VerificationReport& r, const std::string& format, const std::string& out) {
    emit(format == "csv" ? r.to_csv() : r.to_json(), out);
    std::cerr << r.suite << ": " << r.agreed() << "/" << r.total() << " cells agree\n";
    return r.failed() == 0 ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cubic exponential sums: lemma verification, constants and experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string suite = "all", out, format = "json", xgrid, preset, p_text, D_text = "1", b_text = "1+3*w", unit_text = "1";
    SuiteConfig scfg;
    double budget = 5e9;
    bool no_timing = false;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--out", out, "output file (stdout by default)");
        sc->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sc->add_option("--jobs", scfg.jobs, "worker threads (0 = all cores)");
    };
    auto verify_opts = [&](CLI::App* sc) {
        sc->add_option("--max-norm", scfg.max_norm, "modulus norm cap")->check(CLI::PositiveNumber);
        sc->add_option("--kmax", scfg.kmax, "largest prime-power exponent")->check(CLI::Range(1, 12));
        sc->add_option("--samples", scfg.samples, "parameter tuples per cell")->check(CLI::Range(1, 100000));
        sc->add_option("--seed", scfg.seed, "sampling seed");
        sc->add_flag("--no-timing", no_timing, "write 0 for every elapsed field");
    };

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suite_names()));
    verify_opts(verify);
    common(verify);

    auto* constants = app.add_subcommand("constants", "Z_K, A_{p,D}, B_{p,D}, K_{p,D}");
    constants->add_option("--p", p_text, "primary prime, e.g. 1+3*w")->required();
    constants->add_option("--D", D_text, "level");
    constants->add_option("--hilbert-unit", unit_text, "value of (-1, p^2): 1, w or w^2");
    constants->add_option("--out", out, "output file");

    auto* experiment = app.add_subcommand("experiment", "geometric side against the main term over an X grid");
    experiment->add_option("--xgrid", xgrid, "lo:hi:*r, lo:hi:+s or a comma list");
    experiment->add_option("--b", b_text, "b = p or p^3");
    experiment->add_option("--D", D_text, "level");
    experiment->add_option("--preset", preset, "V preset, g preset or V,g");
    experiment->add_option("--hilbert-unit", unit_text, "value of (-1, p^2): 1, w or w^2");
    experiment->add_option("--budget", budget, "operation budget per X")->check(CLI::PositiveNumber);
    common(experiment);

    auto* hecke = app.add_subcommand("hecke-verify", "formal Hecke identities");
    verify_opts(hecke);
    common(hecke);

    auto* appendix = app.add_subcommand("appendix", "rational cubic sums and the F(X) experiment");
    appendix->add_option("--xgrid", xgrid, "X grid for F(X); omitted: no experiment");
    appendix->add_option("--preset", preset, "g preset for W0");
    verify_opts(appendix);
    common(appendix);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    scfg.timing = !no_timing;

    try {
        if (*verify) return finish_report(run_suite(suite, scfg), format, out);

        if (*hecke) return finish_report(run_suite("hecke", scfg), format, out);

        if (*constants) {
            const Eis p = parse_element("--p", p_text), D = parse_element("--D", D_text);
            if (!is_primary(p) || !is_prime(p)) throw UsageError("--p: expected a primary prime");
            if (!is_primary(D)) throw UsageError("--D: expected a primary element");
            const cd unit = parse_unit(unit_text);
            nlohmann::ordered_json j;
            j["p"] = to_string(p);
            j["D"] = to_string(D);
            j["hilbert_unit"] = unit_text;
            j["Z_K"] = compute_Z_K();
            j["A"] = compute_A_bD(p, D);
            j["B"] = compute_B_pD(p, D);
            j["K"] = complex_json(compute_K_pD(p, D, unit));
            j["divisor_factor"] = divisor_factor(p, D).str();
            emit(j.dump(2) + "\n", out);
            return 0;
        }

        if (*experiment) {
            ExperimentConfig cfg;
            if (!xgrid.empty()) cfg.xgrid = parse_grid(xgrid);
            cfg.b = parse_element("--b", b_text);
            cfg.D = parse_element("--D", D_text);
            cfg.hilbert_unit = parse_unit(unit_text);
            cfg.op_budget = budget;
            cfg.jobs = scfg.jobs;
            if (!preset.empty()) {
                const size_t comma = preset.find(',');
                if (comma != std::string::npos) {
                    cfg.V_preset = preset.substr(0, comma);
                    cfg.g_preset = preset.substr(comma + 1);
                } else if (preset == cfg.V_preset || preset == cfg.g_preset) {
                    // a single known name leaves the other preset at its default
                } else {
                    throw UsageError("--preset: unknown preset " + preset);
                }
            }
            try {
                resolve_pair(cfg);
                split_b(cfg.b);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            ExperimentReport r = asymptotic_experiment(cfg);
            emit(format == "csv" ? r.to_csv() : r.to_json(), out);
            for (const ExperimentRow& row : r.rows)
                if (!row.computed) {
                    std::cerr << "X=" << row.X << ": " << row.note << "\n";
                    return kExitBudget;
                }
            return 0;
        }

        if (*appendix) {
            VerificationReport r = run_suite("appendix", scfg);
            if (xgrid.empty()) return finish_report(r, format, out);
            FM0Report f = f_m0_experiment(parse_grid(xgrid), preset.empty() ? "bump-12" : preset);
            const bool f_ok = f.routes_agree && f.j1_zero && f.tau_norm_nine;
            if (format == "csv") {
                std::ostringstream os;
                os << r.to_csv() << "\nX,direct_re,direct_im,branch_re,branch_im,moduli\n";
                for (const FM0Row& row : f.rows)
                    os << row.X << ',' << row.direct.real() << ',' << row.direct.imag() << ',' << row.branch.real() << ','
                       << row.branch.imag() << ',' << row.moduli << '\n';
                emit(os.str(), out);
            } else {
                auto j = nlohmann::ordered_json::parse(r.to_json());
                j["f_m0"] = nlohmann::ordered_json::parse(f.to_json());
                emit(j.dump(2) + "\n", out);
            }
            return r.failed() == 0 && f_ok ? 0 : kExitCheck;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
