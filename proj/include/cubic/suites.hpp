#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubic/eisenstein.hpp"

namespace cubic {

inline constexpr const char* kToolVersion = "1.0.0";

struct SuiteConfig {
    i64 max_norm = 50;  // cap on the modulus norm (per suite meaning in the README)
    int kmax = 5;
    int samples = 20;  // parameter tuples per cell; all of them when fewer exist
    int jobs = 1;
    bool timing = true;
    std::uint64_t seed = 20160407;
};

struct Alternative {
    std::string label, value;
    bool agree = false;
};

struct CellRecord {
    std::string suite, lemma, row;
    std::vector<std::pair<std::string, std::string>> params;
    std::string closed_form, brute;
    bool agree = false;
    std::string pinned;
    std::optional<Alternative> alternative;
    double elapsed_ms = 0;
};

struct VerificationReport {
    std::string suite;
    SuiteConfig config;
    std::vector<CellRecord> cells;

    long total() const { return static_cast<long>(cells.size()); }
    long agreed() const;
    long failed() const { return total() - agreed(); }
    std::string config_hash() const;
    std::string to_json() const;
    std::string to_csv() const;
};

const std::vector<std::string>& suite_names();
// throws std::invalid_argument for an unknown name; "all" runs every suite in order
VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg);

// cells run in parallel over an atomic cursor; results keep the task order
std::vector<CellRecord> run_cells(const std::vector<std::function<CellRecord()>>& tasks, int jobs, bool timing);

// 64-bit FNV-1a, hex
std::string fnv1a_hex(const std::string& text);
std::string format_complex(std::complex<double> z);

}  // namespace cubic
