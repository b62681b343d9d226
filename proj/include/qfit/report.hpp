#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfit/state.hpp"
#include "qfit/statelib.hpp"

namespace qfit {

// Key order is part of the output contract, hence ordered_json throughout.
using json = nlohmann::ordered_json;

struct OutputPathError : std::runtime_error {
    explicit OutputPathError(const std::string& what) : std::runtime_error(what) {}
};

// Parsed state description as accepted by the CLI.
struct StateSpec {
    std::string kind;
    int n = 0;
    double q = 0.5;
    double phi = 0.0;
    double m = 0.0;
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<int, int>> edges;
    Vec amplitudes;

    static StateSpec parse(const json& j);
    // Accepts inline JSON (first non-space character '{') or a file path.
    static StateSpec load(const std::string& arg);

    PureState build() const;
    // Present for the graph-backed kinds only.
    std::optional<Graph> graph() const;
    // Normalized parameter echo embedded in reports.
    json echo() const;
};

// Full analysis of one pure state: moments, optima, verdict, references.
json analyze_report(const StateSpec& spec, int restarts, std::uint64_t seed);

// JSON text with every real printed at 17 significant digits. Byte-stable
// for identical inputs; ends with a newline.
std::string dump_report(const json& j);

// Two-column human view of an analysis report. Derived output only; nothing
// parses it back.
std::string render_table(const json& report);

// ghz_q usefulness sweep as CSV (header q,fq_clu,fq_lu_lower,fq_lu_upper,useful).
void run_sweep(std::ostream& out, const std::string& family, int n_qubits, double from, double to,
               int steps, int restarts, std::uint64_t seed);

struct OracleOutcome {
    std::string text;
    bool pass = false;
};

// Runs one brute-force cross-check against the fast path.
OracleOutcome run_oracle(const StateSpec& spec, const std::string& check, double resolution_deg,
                         int restarts, std::uint64_t seed);

// Structural validator for the subset of JSON Schema used by the shipped
// schema: type, properties, required, additionalProperties, items, enum,
// and nullable unions via "type": [..].
bool validate_schema(const json& value, const json& schema, std::string* why = nullptr);

}  // namespace qfit
