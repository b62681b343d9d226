#pragma once

#include "qfit/state.hpp"
#include "qfit/types.hpp"

namespace qfit {

// 2x2 Pauli matrix for the given axis.
Mat2 pauli(Axis a);
Mat2 pauli(int axis);  // 0 = identity, 1..3 = x, y, z

// Dense collective spin operator J_n = 1/2 sum_k n . sigma^(k).
Mat collective_spin_matrix(int n_qubits, const Direction& n);

}  // namespace qfit
