#pragma once

#include <stdexcept>
#include <string>

namespace qfit {

inline constexpr const char* kVersion = "0.1.0";

// Every numeric threshold used by the library lives here so tests and
// callers agree on what "equal" and "strictly greater" mean.
struct Tolerances {
    double hermiticity = 1e-12;   // max |M - M^dag| entry
    double unit_norm = 1e-12;     // |norm - 1|
    double psd = 1e-10;           // eigenvalues >= -psd
    double entrywise = 1e-10;     // matrix comparisons
    double predicate = 1e-9;      // margin for strict-inequality verdicts
    double imag_residue = 1e-10;  // allowed imaginary part of real-valued results
    double degeneracy = 1e-9;     // relative eigenvalue tie threshold
    double certification = 1e-7;  // |bound - value| for certified optima
    double spectral_floor = 1e-12;  // eigenvalue pairs below this are skipped
};

struct Limits {
    int max_pure_qubits = 14;
    int max_mixed_qubits = 10;
};

struct Config {
    Tolerances tol;
    Limits limits;
};

// Mutable process-wide configuration. Adjust once at startup if needed;
// the library only reads it afterwards.
Config& config();

struct DimensionCapError : std::runtime_error {
    explicit DimensionCapError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularOutcomeError : std::runtime_error {
    explicit SingularOutcomeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qfit
