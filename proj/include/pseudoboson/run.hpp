#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pseudoboson/moments.hpp"

namespace pseudoboson {

inline constexpr const char* kReportSchema = "pseudoboson-report/1";
inline constexpr const char* kArtifactVersion = "0.1.0";

// One flat key set shared by all subcommands; every numeric range is checked
// against the module preconditions before any computation starts.
struct RunConfig {
    std::string command;
    double k1 = 0.0, k2 = 0.0;
    int nmax = 6, lmax = 6;
    Complex z{}, zp{};
    int nodes = 24;
    double scale = 1.0;
    double m = 1.0, gamma = 1.0, k = 1.0;
    Complex Gamma{1.0, 0.0};
    std::optional<Complex> delta;  // absent: taken from the phase solver
    int n = 1000;
    std::uint64_t seed = 7;
    std::optional<double> tol;  // absent: per-command default
    bool timing = false;        // wall_ms fields report 0 unless enabled
    std::string output;         // empty: stdout
    std::string format = "json";

    double tolerance() const;  // resolved tolerance
    void validate() const;     // throws ConfigError
};

// Merge keys from a flat JSON object (a --config file or a report's config
// echo).  Unknown keys are rejected.
void apply_json_config(RunConfig& cfg, const nlohmann::json& j);

struct Report {
    nlohmann::ordered_json body;
    int failures = 0;
    ComplexMatrix gram;  // Gram matrix of the run, when one was computed
    std::vector<std::string> gram_labels;
};

Report run(const RunConfig& cfg);

inline int exit_code_for(const Report& r) { return r.failures == 0 ? 0 : 2; }

// Deterministic rendering: insertion-ordered fields, floats with 17
// significant digits.
std::string render_json(const nlohmann::ordered_json& j);

// Complex cells as "re+imj" strings, row/column labels "n.l".
std::string render_gram_csv(const ComplexMatrix& g, const std::vector<std::string>& labels);

void write_file_atomic(const std::string& path, const std::string& content);

Complex parse_complex(const std::string& text);  // "re" or "re,im"

}  // namespace pseudoboson
