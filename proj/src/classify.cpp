#include "qfit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

#include "qfit/kernels.hpp"
#include "qfit/statelib.hpp"

namespace qfit {

namespace {

// First-two-qubit moments of a symmetric state: Bloch vector s and the
// symmetrized two-point matrix T.
void symmetric_moments(const PureState& state, Vec3& s, Mat3& T) {
    const int n = state.n_qubits();
    const Vec& amp = state.amplitudes();
    for (int i = 0; i < 3; ++i) {
        s[i] = kernels::expval(amp, kernels::single_mask(n, 1, i + 1));
        for (int j = 0; j < 3; ++j) {
            T(i, j) = kernels::expval(amp, kernels::pair_mask(n, 1, i + 1, 2, j + 1));
        }
    }
    T = ((T + T.transpose()) / 2.0).eval();
}

// Rotation O with O^T s parallel to +z, or the identity when s already lies
// on the z axis (either sign) or vanishes. Keeping the frame fixed in the
// aligned cases makes the recovered family parameters match the input ones.
Mat3 aligning_rotation(const Vec3& s) {
    if (std::hypot(s.x(), s.y()) <= 1e-10) return Mat3::Identity();
    const Vec3 sh = s.normalized();
    const Vec3 z = Vec3::UnitZ();
    Vec3 axis = sh.cross(z);
    const double sin_a = axis.norm();
    const double cos_a = std::clamp(sh.dot(z), -1.0, 1.0);
    axis /= sin_a;
    const double angle = std::atan2(sin_a, cos_a);
    // R axis,angle maps s-hat onto z; the convention here stores its inverse
    // so that O^T does the aligning.
    return Eigen::AngleAxisd(angle, axis).toRotationMatrix().transpose();
}

std::optional<GhzFamily> detect_family(const PureState& state, const Vec3& s, const Mat3& T) {
    const Mat3 o = aligning_rotation(s);
    const Mat3 tbar = o.transpose() * T * o;
    const double xy = std::max({std::abs(tbar(0, 0)), std::abs(tbar(0, 1)), std::abs(tbar(1, 0)),
                                std::abs(tbar(1, 1))});
    if (xy >= 1e-9) return std::nullopt;

    const PureState aligned = apply_local_rotations(state, LocalRotationSet::common(state.n_qubits(), o));
    const Vec& amp = aligned.amplitudes();
    const Eigen::Index last = amp.size() - 1;
    const cxd c0 = amp[0];
    const cxd c1 = amp[last];
    // Everything should live on the two extremal basis states.
    const double bulk = amp.squaredNorm() - std::norm(c0) - std::norm(c1);
    if (bulk > 1e-9) return std::nullopt;

    GhzFamily fam;
    fam.q = std::norm(c0);
    fam.phi = (std::abs(c0) > 1e-12 && std::abs(c1) > 1e-12) ? std::arg(c1) - std::arg(c0) : 0.0;
    if (fam.phi < 0) fam.phi += 2 * M_PI;
    return fam;
}

}  // namespace

bool symmetric_condition(const PureState& state, const Direction& direction) {
    const int n = state.n_qubits();
    if (n < 2) throw std::invalid_argument("symmetric_condition: need at least 2 qubits");
    if (!is_symmetric(state)) throw std::invalid_argument("symmetric_condition: state is not symmetric");
    Vec3 s;
    Mat3 T;
    symmetric_moments(state, s, T);
    const Vec3 d = direction.vec();
    const double corr = d.dot(T * d);
    const double single = d.dot(s);
    return corr - static_cast<double>(n) / (n - 1) * single * single > 1e-10;
}

UsefulnessVerdict classify_symmetric(const PureState& state) {
    if (!is_symmetric(state)) throw std::invalid_argument("classify_symmetric: state is not symmetric");
    if (!is_pure_entangled(state)) {
        throw std::invalid_argument("classify_symmetric: state is a product state");
    }
    const int n = state.n_qubits();
    const auto clu = best_clu(gamma_c(state));

    UsefulnessVerdict v;
    v.fq_clu = clu.fq;
    // Collective rotations already reach the local-unitary optimum on the
    // symmetric class.
    v.fq_lu = clu.fq;
    v.optimal_direction = clu.direction;
    v.direction_degenerate = clu.degenerate;
    const double margin = clu.fq - n;
    v.boundary = std::abs(margin) <= config().tol.predicate;
    v.useful_clu = margin > config().tol.predicate;
    v.useful_lu = v.useful_clu;

    Vec3 s;
    Mat3 T;
    symmetric_moments(state, s, T);
    v.family = detect_family(state, s, T);
    return v;
}

bool ghz_q_useful(int n_qubits, double q) {
    if (n_qubits < 2) throw std::invalid_argument("ghz_q_useful: need at least 2 qubits");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("ghz_q_useful: q must lie in [0, 1]");
    if (n_qubits == 2) return q != 0.0 && q != 1.0;
    const double centered = (q - 0.5) * (q - 0.5);
    const double window = static_cast<double>(n_qubits - 1) / (4.0 * n_qubits);
    return centered < window - 1e-12;
}

std::pair<double, double> usefulness_measure(const MixedState& state, int restarts,
                                             std::uint64_t seed) {
    const int n = state.n_qubits();
    const auto cov = gamma_r(state);
    const auto lu = lu_optimize(cov, restarts, seed);
    const double upper = std::max(0.0, lu.upper_bound - n);
    double lower = std::max(0.0, lu.best_value - n);
    if (lu.certified) lower = upper;
    return {lower, upper};
}

std::array<FilterBranch, 2> locc_filter_demo(int n_qubits, double q, double phi) {
    if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("locc_filter_demo: q must lie in (0, 1)");
    const PureState input = ghz_q(n_qubits, q, phi);
    const double a = std::sqrt(1.0 - q);
    const double b = std::sqrt(q);
    Mat2 k1 = Mat2::Zero();
    k1(0, 0) = a;
    k1(1, 1) = b;
    Mat2 k2 = Mat2::Zero();
    k2(0, 0) = b;
    k2(1, 1) = a;
    const Mat2 completeness = k1.adjoint() * k1 + k2.adjoint() * k2;
    if ((completeness - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::logic_error("locc_filter_demo: Kraus completeness violated");
    }

    auto branch = [&](const Mat2& k) {
        Vec amp = input.amplitudes();
        kernels::apply_single_qubit(amp, n_qubits, 1, k);
        const double p = amp.squaredNorm();
        if (p < 1e-300) throw std::invalid_argument("locc_filter_demo: branch probability underflow");
        amp /= std::sqrt(p);
        return FilterBranch{p, PureState(n_qubits, std::move(amp))};
    };
    return {branch(k1), branch(k2)};
}

}  // namespace qfit
