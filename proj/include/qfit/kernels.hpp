#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "qfit/types.hpp"

// Low-level statevector kernels. Each entry point exists twice: the
// OpenMP-parallel version in qfit::kernels (the production path) and a
// plain-loop reference in qfit::kernels::serial that the tests and the
// benchmark compare against.
//
// Parallel reductions accumulate into a fixed grid of chunks that does not
// depend on the thread count, so results are reproducible across runs and
// across OMP_NUM_THREADS settings.

namespace qfit::kernels {

inline constexpr std::size_t kReductionChunks = 256;

template <class F>
double chunked_sum(std::size_t n, F&& term) {
    if (n == 0) return 0.0;
    std::array<double, kReductionChunks> partial{};
    const std::size_t step = (n + kReductionChunks - 1) / kReductionChunks;
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(kReductionChunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * step;
        const std::size_t hi = lo + step < n ? lo + step : n;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// A product of single-qubit Paulis encoded as bit masks over basis indices.
// flip: qubits carrying sigma_x or sigma_y; phase: qubits whose bit toggles
// the sign (sigma_y or sigma_z); y_count: global factor (-i)^y_count.
struct PauliMasks {
    std::uint64_t flip = 0;
    std::uint64_t phase = 0;
    int y_count = 0;
};

// Qubit 1 addresses the most significant bit of the basis index.
inline std::uint64_t qubit_mask(int n_qubits, int qubit) {
    return std::uint64_t{1} << (n_qubits - qubit);
}

// factors[k] describes qubit k+1: 0 = identity, 1..3 = x, y, z.
PauliMasks pauli_masks(int n_qubits, const std::vector<int>& factors);
PauliMasks single_mask(int n_qubits, int qubit, int axis);
PauliMasks pair_mask(int n_qubits, int qubit1, int axis1, int qubit2, int axis2);

inline cxd y_phase(int y_count) {
    static constexpr cxd table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^k
    return table[((y_count % 4) + 4) % 4];
}

// <psi| P |psi> for a Pauli product P (always real).
double expval(const Vec& psi, const PauliMasks& m);
// tr(rho P).
double expval(const Mat& rho, const PauliMasks& m);
// psi <- (u on the given qubit) psi. u need not be unitary (Kraus maps reuse this).
void apply_single_qubit(Vec& psi, int n_qubits, int qubit, const Mat2& u);
// psi <- CZ(q1, q2) psi.
void apply_cz(Vec& psi, int n_qubits, int qubit1, int qubit2);
// Returns J_dir |psi> where J_dir = 1/2 sum_k dir . sigma^(k).
Vec collective_apply(const Vec& psi, int n_qubits, const Vec3& dir);

namespace serial {
double expval(const Vec& psi, const PauliMasks& m);
double expval(const Mat& rho, const PauliMasks& m);
void apply_single_qubit(Vec& psi, int n_qubits, int qubit, const Mat2& u);
void apply_cz(Vec& psi, int n_qubits, int qubit1, int qubit2);
Vec collective_apply(const Vec& psi, int n_qubits, const Vec3& dir);
}  // namespace serial

}  // namespace qfit::kernels
