#include "qfit/kernels.hpp"

#include <stdexcept>

namespace qfit::kernels {

PauliMasks pauli_masks(int n_qubits, const std::vector<int>& factors) {
    if (static_cast<int>(factors.size()) != n_qubits)
        throw std::invalid_argument("pauli_masks: factor list must have one entry per qubit");
    PauliMasks m;
    for (int k = 0; k < n_qubits; ++k) {
        const std::uint64_t bit = qubit_mask(n_qubits, k + 1);
        switch (factors[static_cast<std::size_t>(k)]) {
            case 0: break;
            case 1: m.flip |= bit; break;
            case 2: m.flip |= bit; m.phase |= bit; ++m.y_count; break;
            case 3: m.phase |= bit; break;
            default: throw std::invalid_argument("pauli_masks: factor labels are 0..3");
        }
    }
    return m;
}

PauliMasks single_mask(int n_qubits, int qubit, int axis) {
    std::vector<int> f(static_cast<std::size_t>(n_qubits), 0);
    f[static_cast<std::size_t>(qubit - 1)] = axis;
    return pauli_masks(n_qubits, f);
}

PauliMasks pair_mask(int n_qubits, int qubit1, int axis1, int qubit2, int axis2) {
    if (qubit1 == qubit2) throw std::invalid_argument("pair_mask: qubits must differ");
    std::vector<int> f(static_cast<std::size_t>(n_qubits), 0);
    f[static_cast<std::size_t>(qubit1 - 1)] = axis1;
    f[static_cast<std::size_t>(qubit2 - 1)] = axis2;
    return pauli_masks(n_qubits, f);
}

double expval(const Vec& psi, const PauliMasks& m) {
    const auto n = static_cast<std::uint64_t>(psi.size());
    const cxd c = y_phase(m.y_count);
    return chunked_sum(n, [&](std::size_t b) {
        const double sign = std::popcount(b & m.phase) & 1 ? -1.0 : 1.0;
        return sign * std::real(c * std::conj(psi[static_cast<Eigen::Index>(b)]) *
                                psi[static_cast<Eigen::Index>(b ^ m.flip)]);
    });
}

double expval(const Mat& rho, const PauliMasks& m) {
    const auto n = static_cast<std::uint64_t>(rho.rows());
    const cxd c = y_phase(m.y_count);
    // tr(rho P) = sum_b (P rho)[b,b] with (P rho)[b,:] = c*sign(b)*rho[b^flip,:].
    return chunked_sum(n, [&](std::size_t b) {
        const double sign = std::popcount(b & m.phase) & 1 ? -1.0 : 1.0;
        return sign * std::real(c * rho(static_cast<Eigen::Index>(b ^ m.flip),
                                        static_cast<Eigen::Index>(b)));
    });
}

void apply_single_qubit(Vec& psi, int n_qubits, int qubit, const Mat2& u) {
    const std::uint64_t mask = qubit_mask(n_qubits, qubit);
    const std::uint64_t low = mask - 1;
    const std::int64_t pairs = psi.size() / 2;
    const cxd u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t p = 0; p < pairs; ++p) {
        const std::uint64_t up = static_cast<std::uint64_t>(p);
        const std::uint64_t b0 = ((up & ~low) << 1) | (up & low);
        const std::uint64_t b1 = b0 | mask;
        const cxd a0 = psi[static_cast<Eigen::Index>(b0)];
        const cxd a1 = psi[static_cast<Eigen::Index>(b1)];
        psi[static_cast<Eigen::Index>(b0)] = u00 * a0 + u01 * a1;
        psi[static_cast<Eigen::Index>(b1)] = u10 * a0 + u11 * a1;
    }
}

void apply_cz(Vec& psi, int n_qubits, int qubit1, int qubit2) {
    const std::uint64_t both = qubit_mask(n_qubits, qubit1) | qubit_mask(n_qubits, qubit2);
    const std::int64_t n = psi.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < n; ++b)
        if ((static_cast<std::uint64_t>(b) & both) == both) psi[b] = -psi[b];
}

Vec collective_apply(const Vec& psi, int n_qubits, const Vec3& dir) {
    const std::int64_t n = psi.size();
    Vec out(n);
    const double nx = dir[0], ny = dir[1], nz = dir[2];
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < n; ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        cxd acc = 0.5 * nz * (n_qubits - 2 * std::popcount(ub)) * psi[b];
        for (int k = 1; k <= n_qubits; ++k) {
            const std::uint64_t m = qubit_mask(n_qubits, k);
            const double ys = (ub & m) ? 1.0 : -1.0;
            acc += 0.5 * cxd(nx, ny * ys) * psi[static_cast<Eigen::Index>(ub ^ m)];
        }
        out[b] = acc;
    }
    return out;
}

namespace serial {

double expval(const Vec& psi, const PauliMasks& m) {
    const auto n = static_cast<std::uint64_t>(psi.size());
    const cxd c = y_phase(m.y_count);
    double acc = 0.0;
    for (std::uint64_t b = 0; b < n; ++b) {
        const double sign = std::popcount(b & m.phase) & 1 ? -1.0 : 1.0;
        acc += sign * std::real(c * std::conj(psi[static_cast<Eigen::Index>(b)]) *
                                psi[static_cast<Eigen::Index>(b ^ m.flip)]);
    }
    return acc;
}

double expval(const Mat& rho, const PauliMasks& m) {
    const auto n = static_cast<std::uint64_t>(rho.rows());
    const cxd c = y_phase(m.y_count);
    double acc = 0.0;
    for (std::uint64_t b = 0; b < n; ++b) {
        const double sign = std::popcount(b & m.phase) & 1 ? -1.0 : 1.0;
        acc += sign * std::real(c * rho(static_cast<Eigen::Index>(b ^ m.flip),
                                        static_cast<Eigen::Index>(b)));
    }
    return acc;
}

void apply_single_qubit(Vec& psi, int n_qubits, int qubit, const Mat2& u) {
    const std::uint64_t mask = qubit_mask(n_qubits, qubit);
    const std::uint64_t low = mask - 1;
    const std::int64_t pairs = psi.size() / 2;
    for (std::int64_t p = 0; p < pairs; ++p) {
        const std::uint64_t up = static_cast<std::uint64_t>(p);
        const std::uint64_t b0 = ((up & ~low) << 1) | (up & low);
        const std::uint64_t b1 = b0 | mask;
        const cxd a0 = psi[static_cast<Eigen::Index>(b0)];
        const cxd a1 = psi[static_cast<Eigen::Index>(b1)];
        psi[static_cast<Eigen::Index>(b0)] = u(0, 0) * a0 + u(0, 1) * a1;
        psi[static_cast<Eigen::Index>(b1)] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_cz(Vec& psi, int n_qubits, int qubit1, int qubit2) {
    const std::uint64_t both = qubit_mask(n_qubits, qubit1) | qubit_mask(n_qubits, qubit2);
    for (std::int64_t b = 0; b < psi.size(); ++b)
        if ((static_cast<std::uint64_t>(b) & both) == both) psi[b] = -psi[b];
}

Vec collective_apply(const Vec& psi, int n_qubits, const Vec3& dir) {
    const std::int64_t n = psi.size();
    Vec out(n);
    for (std::int64_t b = 0; b < n; ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        cxd acc = 0.5 * dir[2] * (n_qubits - 2 * std::popcount(ub)) * psi[b];
        for (int k = 1; k <= n_qubits; ++k) {
            const std::uint64_t m = qubit_mask(n_qubits, k);
            const double ys = (ub & m) ? 1.0 : -1.0;
            acc += 0.5 * cxd(dir[0], dir[1] * ys) * psi[static_cast<Eigen::Index>(ub ^ m)];
        }
        out[b] = acc;
    }
    return out;
}

}  // namespace serial

}  // namespace qfit::kernels
