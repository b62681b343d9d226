#pragma once

#include <vector>

#include "qfit/config.hpp"
#include "qfit/types.hpp"

namespace qfit {

// Unit vector in R^3.
class Direction {
  public:
    Direction(double x, double y, double z);
    explicit Direction(const Vec3& v);
    static Direction normalized(const Vec3& v);

    const Vec3& vec() const { return v_; }
    double operator[](int i) const { return v_[i]; }

  private:
    Vec3 v_;
};

// N-qubit pure state. Qubit 1 is the most significant bit of the basis
// index; |0> is the sigma_z eigenvector with eigenvalue +1.
class PureState {
  public:
    PureState(int n_qubits, Vec amplitudes);

    int n_qubits() const { return n_; }
    const Vec& amplitudes() const { return amp_; }
    Eigen::Index dim() const { return amp_.size(); }

  private:
    int n_;
    Vec amp_;
};

// N-qubit density matrix: Hermitian, unit trace, positive semidefinite
// within the configured tolerances.
class MixedState {
  public:
    MixedState(int n_qubits, Mat rho);
    static MixedState from_pure(const PureState& psi);

    int n_qubits() const { return n_; }
    const Mat& rho() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }

  private:
    int n_;
    Mat rho_;
};

// One SO(3) rotation per qubit, realized on the state through the SU(2)
// double cover with a fixed phase convention.
class LocalRotationSet {
  public:
    explicit LocalRotationSet(std::vector<Mat3> rotations);
    static LocalRotationSet common(int n_qubits, const Mat3& o);

    int size() const { return static_cast<int>(rot_.size()); }
    const Mat3& operator[](int k) const { return rot_[static_cast<std::size_t>(k)]; }

  private:
    std::vector<Mat3> rot_;
};

// Two-qubit correlation matrix lambda_{ij} = <sigma_i x sigma_j>, i,j = 0..3
// with sigma_0 = identity.
class LambdaMatrix {
  public:
    explicit LambdaMatrix(const Eigen::Matrix4d& entries);

    const Eigen::Matrix4d& entries() const { return m_; }
    // Bloch vector of the first qubit: lambda_{i0}, i = 1..3.
    Vec3 s() const { return m_.block<3, 1>(1, 0); }
    // Two-point block lambda_{ij}, i,j = 1..3.
    Mat3 T() const { return m_.block<3, 3>(1, 1); }

  private:
    Eigen::Matrix4d m_;
};

// <psi|op|psi> resp. tr(rho op) for a Hermitian operator given as a dense
// matrix. The imaginary residue must stay below the configured tolerance.
double expectation(const PureState& state, const Mat& op);
double expectation(const MixedState& state, const Mat& op);

// <op^2> - <op>^2, clamped to zero if within -1e-10.
double variance(const PureState& state, const Mat& op);
double variance(const MixedState& state, const Mat& op);

// Symmetric Dicke state |N/2, m> in the collective sigma_z eigenbasis;
// m runs from -N/2 to N/2 in integer steps.
PureState dicke_state(int n_qubits, double m);

// Reduced state over the listed qubits (1-indexed, order preserved).
MixedState partial_trace(const PureState& state, const std::vector<int>& keep);
MixedState partial_trace(const MixedState& state, const std::vector<int>& keep);

// Full two-qubit Pauli correlation matrix of a 2-qubit mixed state.
LambdaMatrix lambda_of(const MixedState& rho2);

// Applies the tensor product of per-qubit SU(2) lifts. The lift of O
// satisfies U^dag sigma_i U = sum_j O_ji sigma_j, so single-qubit
// expectation vectors transform as s -> O^T s.
PureState apply_local_rotations(const PureState& state, const LocalRotationSet& rotations);

// SU(2) element realizing the rotation (see apply_local_rotations). The
// global sign is fixed by requiring a nonnegative real part of the first
// nonzero entry of the top row, ties broken toward nonnegative imaginary part.
Mat2 su2_from_rotation(const Mat3& o);

// True when the state is invariant under every qubit transposition.
bool is_symmetric(const PureState& state);

// True when some single-qubit reduction is mixed beyond the predicate
// tolerance.
bool is_pure_entangled(const PureState& state);

}  // namespace qfit
