#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "qfit/covariance.hpp"
#include "qfit/state.hpp"

namespace qfit {

// Parameters of sqrt(q)|0..0> + e^{i phi} sqrt(1-q)|1..1> recovered by the
// family detector.
struct GhzFamily {
    double q = 0.5;
    double phi = 0.0;
};

struct UsefulnessVerdict {
    bool useful_clu = false;
    bool useful_lu = false;
    double fq_clu = 0.0;
    double fq_lu = 0.0;
    Direction optimal_direction{0.0, 0.0, 1.0};
    bool direction_degenerate = false;
    // Set when the best Fisher information sits on the shot-noise value
    // within the predicate tolerance; the verdict is then "not useful".
    bool boundary = false;
    std::optional<GhzFamily> family;
};

struct FilterBranch {
    double probability = 0.0;
    PureState state;
};

// Two-qubit correlator test along the given axis: true iff
// <sigma_n sigma_n> exceeds N/(N-1) <sigma_n>^2 by more than 1e-10.
bool symmetric_condition(const PureState& state, const Direction& direction);

// Full verdict for a permutation-symmetric entangled pure state. The
// collective optimum is also the local-unitary optimum for this class, so
// fq_lu = fq_clu. Detects the biased-GHZ family when the canonicalized
// two-qubit moments match it.
UsefulnessVerdict classify_symmetric(const PureState& state);

// Closed-form usefulness window of ghz_q states. For N = 2 every entangled
// member is useful.
bool ghz_q_useful(int n_qubits, double q);

// (lower, upper) bracket of max(0, F_Q^max - N) over local unitaries.
// The bracket collapses when the optimizer certifies the upper bound.
std::pair<double, double> usefulness_measure(const MixedState& state, int restarts = 16,
                                             std::uint64_t seed = 1);

// One-qubit filter sqrt(1-q)|0><0| + sqrt(q)|1><1| (and its complement)
// applied to qubit 1 of ghz_q(n, q, phi): branch probabilities and
// normalized post-measurement states.
std::array<FilterBranch, 2> locc_filter_demo(int n_qubits, double q, double phi = 0.0);

}  // namespace qfit
