#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qfit {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using RMat = Eigen::MatrixXd;

// Pauli axis labels. Values match the usual 1..3 index convention;
// 0 is reserved for the identity where a 4-valued label is needed.
enum class Axis : int { X = 1, Y = 2, Z = 3 };

inline int axis_index(Axis a) { return static_cast<int>(a); }

inline Vec3 axis_vector(Axis a) {
    Vec3 v = Vec3::Zero();
    v[axis_index(a) - 1] = 1.0;
    return v;
}

inline std::int64_t dim_of(int n_qubits) { return std::int64_t{1} << n_qubits; }

}  // namespace qfit
