#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qfit/state.hpp"
#include "qfit/types.hpp"

namespace qfit {

// 3x3 covariance of the collective spin components. For mixed sources the
// entries carry the spectral weights of the quantum Fisher information, so
// 4 n^T gamma n is the QFI of J_n in both cases.
struct CollectiveCovariance {
    Mat3 m;
    bool mixed_source = false;
};

// 3N x 3N covariance of all single-qubit Pauli operators, ordered qubit by
// qubit (x, y, z within each block).
struct LocalCovariance {
    RMat m;
    int n_qubits = 0;
    bool mixed_source = false;
};

// One unit vector per qubit.
struct DirectionAssignment {
    std::vector<Vec3> dirs;

    int size() const { return static_cast<int>(dirs.size()); }
    Eigen::VectorXd stacked() const;
};

struct CluOptimum {
    Direction direction;
    double fq = 0.0;
    bool degenerate = false;
};

struct LuOptimum {
    double upper_bound = 0.0;
    double best_value = 0.0;
    DirectionAssignment assignment;
    bool certified = false;
};

struct SymmetricSpectrum {
    double lambda1 = 0.0;        // top eigenvalue of A + (N-1)B
    double lambda2 = 0.0;        // top eigenvalue of A - B
    Direction n_max;             // maximizer of the collective branch
    bool tie = false;
    Vec3 collective_eigs;        // spectrum of A + (N-1)B
    Vec3 relative_eigs;          // spectrum of A - B (multiplicity N-1 in gamma_r)
};

CollectiveCovariance gamma_c(const PureState& state);
CollectiveCovariance gamma_c(const MixedState& state);

// Best collective rotation axis: 4 lambda_max(gamma) with the maximizing
// eigenvector. Near-equal top eigenvalues set the degeneracy flag; the
// reported direction is then the lexicographically largest canonicalized
// eigenvector of the top eigenspace.
CluOptimum best_clu(const CollectiveCovariance& cov);

LocalCovariance gamma_r(const PureState& state);
LocalCovariance gamma_r(const MixedState& state);

// N * lambda_max(gamma_r): upper bound on the QFI over all products of
// single-qubit rotations.
double lu_upper_bound(const LocalCovariance& cov);

// Maximizes m^T gamma_r m over per-qubit unit vectors by cyclic block
// ascent with exact sphere subproblems, from a spectral initialization
// plus seeded random restarts. certified marks agreement with the upper
// bound within the certification tolerance.
LuOptimum lu_optimize(const LocalCovariance& cov, int restarts = 16, std::uint64_t seed = 1);

// Exact maximizer of n^T a n + 2 b^T n over the unit sphere (the per-block
// subproblem of lu_optimize). Exposed for testing.
std::pair<Vec3, double> sphere_quadratic_max(const Mat3& a, const Vec3& b);

// Closed-form gamma_r spectrum of a permutation-symmetric pure state from
// its one- and two-qubit moments: A = 1 - s s^T, B = T - s s^T.
SymmetricSpectrum symmetric_spectrum(const PureState& state, bool require_symmetric = true);

}  // namespace qfit
