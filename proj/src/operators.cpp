#include "qfit/operators.hpp"

#include <bit>
#include <stdexcept>

#include "qfit/kernels.hpp"

namespace qfit {

Mat2 pauli(Axis a) { return pauli(axis_index(a)); }

Mat2 pauli(int axis) {
    Mat2 m;
    switch (axis) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cxd(0, -1), cxd(0, 1), 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: axis labels are 0..3");
    }
    return m;
}

Mat collective_spin_matrix(int n_qubits, const Direction& n) {
    if (n_qubits < 1) throw std::invalid_argument("collective_spin_matrix: need at least one qubit");
    if (n_qubits > config().limits.max_pure_qubits)
        throw DimensionCapError("collective_spin_matrix: qubit cap exceeded");
    const std::int64_t d = dim_of(n_qubits);
    const double nx = n[0], ny = n[1], nz = n[2];
    Mat j = Mat::Zero(d, d);
    // Column b holds the diagonal term and one bit-flip entry per qubit,
    // so columns can be filled independently.
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < d; ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        j(b, b) = 0.5 * nz * (n_qubits - 2 * std::popcount(ub));
        for (int k = 1; k <= n_qubits; ++k) {
            const std::uint64_t m = kernels::qubit_mask(n_qubits, k);
            const double ys = (ub & m) ? -1.0 : 1.0;  // target bit after the flip
            j(static_cast<Eigen::Index>(ub ^ m), b) += 0.5 * cxd(nx, ny * ys);
        }
    }
    return j;
}

}  // namespace qfit
