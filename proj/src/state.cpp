#include "qfit/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "qfit/kernels.hpp"
#include "qfit/operators.hpp"

namespace qfit {

Config& config() {
    static Config cfg;
    return cfg;
}

namespace {

void check_pure_cap(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("state needs at least one qubit");
    if (n_qubits > config().limits.max_pure_qubits)
        throw DimensionCapError("pure-state cap exceeded: n_qubits = " + std::to_string(n_qubits) +
                                " > " + std::to_string(config().limits.max_pure_qubits));
}

void check_mixed_cap(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("state needs at least one qubit");
    if (n_qubits > config().limits.max_mixed_qubits)
        throw DimensionCapError("mixed-state cap exceeded: n_qubits = " + std::to_string(n_qubits) +
                                " > " + std::to_string(config().limits.max_mixed_qubits));
}

void check_rotation(const Mat3& o) {
    if ((o.transpose() * o - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("rotation matrix is not orthogonal");
    if (std::abs(o.determinant() - 1.0) > 1e-8)
        throw std::invalid_argument("rotation matrix must have determinant +1");
}

double real_checked(cxd z, const char* who) {
    if (std::abs(z.imag()) > config().tol.imag_residue)
        throw std::invalid_argument(std::string(who) + ": imaginary residue exceeds tolerance");
    return z.real();
}

double clamp_variance(double var) {
    if (var < -config().tol.psd)
        throw std::invalid_argument("variance: negative beyond tolerance");
    return var < 0.0 ? 0.0 : var;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

Direction::Direction(double x, double y, double z) : Direction(Vec3(x, y, z)) {}

Direction::Direction(const Vec3& v) : v_(v) {
    if (std::abs(v_.norm() - 1.0) > config().tol.unit_norm)
        throw std::invalid_argument("direction must have unit norm");
}

Direction Direction::normalized(const Vec3& v) {
    const double n = v.norm();
    if (n < 1e-14) throw std::invalid_argument("cannot normalize a near-zero direction");
    return Direction(Vec3(v / n));
}

PureState::PureState(int n_qubits, Vec amplitudes) : n_(n_qubits), amp_(std::move(amplitudes)) {
    check_pure_cap(n_);
    if (amp_.size() != dim_of(n_))
        throw std::invalid_argument("amplitude vector has wrong dimension");
    if (std::abs(amp_.norm() - 1.0) > config().tol.unit_norm)
        throw std::invalid_argument("pure state must be normalized");
}

MixedState::MixedState(int n_qubits, Mat rho) : n_(n_qubits), rho_(std::move(rho)) {
    check_mixed_cap(n_);
    if (rho_.rows() != dim_of(n_) || rho_.cols() != dim_of(n_))
        throw std::invalid_argument("density matrix has wrong dimension");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > config().tol.hermiticity)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > config().tol.unit_norm)
        throw std::invalid_argument("density matrix must have unit trace");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -config().tol.psd)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

MixedState MixedState::from_pure(const PureState& psi) {
    return MixedState(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

LocalRotationSet::LocalRotationSet(std::vector<Mat3> rotations) : rot_(std::move(rotations)) {
    if (rot_.empty()) throw std::invalid_argument("rotation set must not be empty");
    for (const auto& o : rot_) check_rotation(o);
}

LocalRotationSet LocalRotationSet::common(int n_qubits, const Mat3& o) {
    return LocalRotationSet(std::vector<Mat3>(static_cast<std::size_t>(n_qubits), o));
}

LambdaMatrix::LambdaMatrix(const Eigen::Matrix4d& entries) : m_(entries) {
    if (std::abs(m_(0, 0) - 1.0) > 1e-9)
        throw std::invalid_argument("lambda matrix must have unit identity entry");
}

double expectation(const PureState& state, const Mat& op) {
    if (op.rows() != state.dim() || op.cols() != state.dim())
        throw std::invalid_argument("expectation: operator dimension mismatch");
    const cxd v = state.amplitudes().dot(op * state.amplitudes());
    return real_checked(v, "expectation");
}

double expectation(const MixedState& state, const Mat& op) {
    if (op.rows() != state.dim() || op.cols() != state.dim())
        throw std::invalid_argument("expectation: operator dimension mismatch");
    return real_checked((state.rho() * op).trace(), "expectation");
}

double variance(const PureState& state, const Mat& op) {
    if (op.rows() != state.dim() || op.cols() != state.dim())
        throw std::invalid_argument("variance: operator dimension mismatch");
    const Vec v = op * state.amplitudes();
    const double second = v.squaredNorm();
    const double first = real_checked(state.amplitudes().dot(v), "variance");
    return clamp_variance(second - first * first);
}

double variance(const MixedState& state, const Mat& op) {
    if (op.rows() != state.dim() || op.cols() != state.dim())
        throw std::invalid_argument("variance: operator dimension mismatch");
    const Mat b = state.rho() * op;
    const double first = real_checked(b.trace(), "variance");
    const double second = real_checked((b * op).trace(), "variance");
    return clamp_variance(second - first * first);
}

PureState dicke_state(int n_qubits, double m) {
    check_pure_cap(n_qubits);
    const double k_real = n_qubits / 2.0 - m;
    const auto k = static_cast<int>(std::lround(k_real));
    if (std::abs(k_real - k) > 1e-9 || k < 0 || k > n_qubits)
        throw std::invalid_argument("dicke_state: m must step in integers from -N/2 to N/2");
    Vec amp = Vec::Zero(dim_of(n_qubits));
    const double c = 1.0 / std::sqrt(binomial(n_qubits, k));
    for (std::int64_t b = 0; b < amp.size(); ++b)
        if (std::popcount(static_cast<std::uint64_t>(b)) == k) amp[b] = c;
    return PureState(n_qubits, std::move(amp));
}

namespace {

struct TraceIndexing {
    std::vector<std::uint64_t> keep_scatter;  // reduced index -> source bits
    std::vector<std::uint64_t> env_scatter;   // environment index -> source bits
};

TraceIndexing trace_indexing(int n_qubits, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep list must not be empty");
    std::set<int> seen;
    for (int q : keep) {
        if (q < 1 || q > n_qubits) throw std::invalid_argument("partial_trace: qubit index out of range");
        if (!seen.insert(q).second) throw std::invalid_argument("partial_trace: duplicate qubit index");
    }
    const int p = static_cast<int>(keep.size());
    std::vector<int> env;
    for (int q = 1; q <= n_qubits; ++q)
        if (!seen.count(q)) env.push_back(q);

    TraceIndexing ix;
    ix.keep_scatter.assign(std::size_t{1} << p, 0);
    for (std::uint64_t r = 0; r < ix.keep_scatter.size(); ++r) {
        std::uint64_t src = 0;
        for (int i = 0; i < p; ++i)
            if (r & (std::uint64_t{1} << (p - 1 - i)))
                src |= kernels::qubit_mask(n_qubits, keep[static_cast<std::size_t>(i)]);
        ix.keep_scatter[r] = src;
    }
    ix.env_scatter.assign(std::size_t{1} << env.size(), 0);
    for (std::uint64_t e = 0; e < ix.env_scatter.size(); ++e) {
        std::uint64_t src = 0;
        for (std::size_t i = 0; i < env.size(); ++i)
            if (e & (std::uint64_t{1} << (env.size() - 1 - i))) src |= kernels::qubit_mask(n_qubits, env[i]);
        ix.env_scatter[e] = src;
    }
    return ix;
}

}  // namespace

MixedState partial_trace(const PureState& state, const std::vector<int>& keep) {
    const auto ix = trace_indexing(state.n_qubits(), keep);
    const auto dk = static_cast<std::int64_t>(ix.keep_scatter.size());
    const Vec& a = state.amplitudes();
    Mat red(dk, dk);
#pragma omp parallel for schedule(static) collapse(2)
    for (std::int64_t r = 0; r < dk; ++r)
        for (std::int64_t c = 0; c < dk; ++c) {
            cxd acc = 0;
            for (std::uint64_t env : ix.env_scatter)
                acc += a[static_cast<Eigen::Index>(ix.keep_scatter[static_cast<std::size_t>(r)] | env)] *
                       std::conj(a[static_cast<Eigen::Index>(ix.keep_scatter[static_cast<std::size_t>(c)] | env)]);
            red(r, c) = acc;
        }
    return MixedState(static_cast<int>(keep.size()), std::move(red));
}

MixedState partial_trace(const MixedState& state, const std::vector<int>& keep) {
    const auto ix = trace_indexing(state.n_qubits(), keep);
    const auto dk = static_cast<std::int64_t>(ix.keep_scatter.size());
    const Mat& rho = state.rho();
    Mat red(dk, dk);
#pragma omp parallel for schedule(static) collapse(2)
    for (std::int64_t r = 0; r < dk; ++r)
        for (std::int64_t c = 0; c < dk; ++c) {
            cxd acc = 0;
            for (std::uint64_t env : ix.env_scatter)
                acc += rho(static_cast<Eigen::Index>(ix.keep_scatter[static_cast<std::size_t>(r)] | env),
                           static_cast<Eigen::Index>(ix.keep_scatter[static_cast<std::size_t>(c)] | env));
            red(r, c) = acc;
        }
    return MixedState(static_cast<int>(keep.size()), std::move(red));
}

LambdaMatrix lambda_of(const MixedState& rho2) {
    if (rho2.n_qubits() != 2) throw std::invalid_argument("lambda_of: needs a two-qubit state");
    Eigen::Matrix4d lam;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            std::vector<int> f = {i, j};
            lam(i, j) = kernels::expval(rho2.rho(), kernels::pauli_masks(2, f));
        }
    return LambdaMatrix(lam);
}

Mat2 su2_from_rotation(const Mat3& o) {
    check_rotation(o);
    const Eigen::AngleAxisd aa(o);
    const double half = 0.5 * aa.angle();
    const Vec3 u = aa.axis();
    Mat2 n_sigma = u[0] * pauli(Axis::X) + u[1] * pauli(Axis::Y) + u[2] * pauli(Axis::Z);
    Mat2 su = std::cos(half) * Mat2::Identity() + cxd(0, 1) * std::sin(half) * n_sigma;
    // Fix the double-cover sign deterministically.
    cxd lead = su(0, 0);
    if (std::abs(lead) <= 1e-12) lead = su(0, 1);
    bool flip = false;
    if (lead.real() < -1e-12) flip = true;
    else if (std::abs(lead.real()) <= 1e-12 && lead.imag() < 0.0) flip = true;
    if (flip) su = -su;
    return su;
}

PureState apply_local_rotations(const PureState& state, const LocalRotationSet& rotations) {
    if (rotations.size() != state.n_qubits())
        throw std::invalid_argument("apply_local_rotations: need one rotation per qubit");
    Vec amp = state.amplitudes();
    for (int k = 1; k <= state.n_qubits(); ++k)
        kernels::apply_single_qubit(amp, state.n_qubits(), k, su2_from_rotation(rotations[k - 1]));
    return PureState(state.n_qubits(), std::move(amp));
}

bool is_symmetric(const PureState& state) {
    const Vec& a = state.amplitudes();
    const int n = state.n_qubits();
    for (int k = 1; k < n; ++k) {
        const std::uint64_t m1 = kernels::qubit_mask(n, k);
        const std::uint64_t m2 = kernels::qubit_mask(n, k + 1);
        for (std::int64_t b = 0; b < a.size(); ++b) {
            const auto ub = static_cast<std::uint64_t>(b);
            const bool b1 = ub & m1, b2 = ub & m2;
            if (b1 == b2) continue;
            if (std::abs(a[b] - a[static_cast<Eigen::Index>(ub ^ m1 ^ m2)]) > config().tol.entrywise)
                return false;
        }
    }
    return true;
}

bool is_pure_entangled(const PureState& state) {
    double max_deficit = 0.0;
    for (int k = 1; k <= state.n_qubits(); ++k) {
        Vec3 s;
        for (int i = 1; i <= 3; ++i)
            s[i - 1] = kernels::expval(state.amplitudes(),
                                       kernels::single_mask(state.n_qubits(), k, i));
        max_deficit = std::max(max_deficit, 0.5 * (1.0 - s.squaredNorm()));
    }
    return max_deficit > config().tol.predicate;
}

}  // namespace qfit
