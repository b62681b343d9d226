#include "qfit/covariance.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qfit/kernels.hpp"
#include "qfit/rng.hpp"

namespace qfit {

namespace {

Vec3 canonical_sign(Vec3 v) {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = -v;
            break;
        }
    }
    return v;
}

bool lex_greater(const Vec3& a, const Vec3& b) {
    for (int i = 0; i < 3; ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

// Spectral weights of the mixed-state Fisher information:
// w(l,m) = (l+m) ((l-m)/(l+m))^2, zero when l+m falls below the floor.
Eigen::MatrixXd qfi_weights(const Eigen::VectorXd& lam) {
    const Eigen::Index d = lam.size();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index m = 0; m < d; ++m) {
            const double s = lam[l] + lam[m];
            if (s <= config().tol.spectral_floor) continue;
            const double diff = lam[l] - lam[m];
            w(l, m) = diff * diff / s;
        }
    return w;
}

// sigma_axis^(qubit) applied to every column.
Mat apply_pauli_columns(const Mat& v, int n_qubits, int qubit, int axis) {
    const auto mask = kernels::single_mask(n_qubits, qubit, axis);
    const cxd c = kernels::y_phase(mask.y_count);
    Mat out(v.rows(), v.cols());
    for (Eigen::Index b = 0; b < v.rows(); ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        const double sign = std::popcount(ub & mask.phase) & 1 ? -1.0 : 1.0;
        out.row(b) = (c * sign) * v.row(static_cast<Eigen::Index>(ub ^ mask.flip));
    }
    return out;
}

}  // namespace

Eigen::VectorXd DirectionAssignment::stacked() const {
    Eigen::VectorXd v(3 * size());
    for (int k = 0; k < size(); ++k) v.segment<3>(3 * k) = dirs[static_cast<std::size_t>(k)];
    return v;
}

CollectiveCovariance gamma_c(const PureState& state) {
    const Vec& psi = state.amplitudes();
    std::array<Vec, 3> jv;
    for (int i = 0; i < 3; ++i) {
        Vec3 axis = Vec3::Zero();
        axis[i] = 1.0;
        jv[static_cast<std::size_t>(i)] = kernels::collective_apply(psi, state.n_qubits(), axis);
    }
    Vec3 mean;
    for (int i = 0; i < 3; ++i) mean[i] = psi.dot(jv[static_cast<std::size_t>(i)]).real();
    CollectiveCovariance cov;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            cov.m(i, j) = jv[static_cast<std::size_t>(i)].dot(jv[static_cast<std::size_t>(j)]).real() -
                          mean[i] * mean[j];
    cov.m = 0.5 * (cov.m + cov.m.transpose()).eval();
    return cov;
}

CollectiveCovariance gamma_c(const MixedState& state) {
    Eigen::SelfAdjointEigenSolver<Mat> es(state.rho());
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    const Mat& v = es.eigenvectors();
    const Eigen::MatrixXd w = qfi_weights(lam);

    std::array<Mat, 3> jm;
    for (int i = 0; i < 3; ++i) {
        Vec3 axis = Vec3::Zero();
        axis[i] = 1.0;
        Mat jv(v.rows(), v.cols());
        for (Eigen::Index c = 0; c < v.cols(); ++c)
            jv.col(c) = kernels::collective_apply(v.col(c), state.n_qubits(), axis);
        jm[static_cast<std::size_t>(i)] = v.adjoint() * jv;
    }
    CollectiveCovariance cov;
    cov.mixed_source = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const double g = 0.5 * (w.array() * (jm[static_cast<std::size_t>(i)].array() *
                                                 jm[static_cast<std::size_t>(j)].array().conjugate())
                                                    .real())
                                       .sum();
            cov.m(i, j) = g;
            cov.m(j, i) = g;
        }
    return cov;
}

CluOptimum best_clu(const CollectiveCovariance& cov) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(cov.m);
    const Vec3 lam = es.eigenvalues();  // ascending
    const double top = lam[2];
    const double tie = config().tol.degeneracy * std::max(1.0, std::abs(top));
    Vec3 pick = canonical_sign(es.eigenvectors().col(2));
    bool degenerate = false;
    for (int i = 0; i < 2; ++i) {
        if (top - lam[i] > tie) continue;
        degenerate = true;
        const Vec3 cand = canonical_sign(es.eigenvectors().col(i));
        if (lex_greater(cand, pick)) pick = cand;
    }
    return {Direction(pick / pick.norm()), 4.0 * top, degenerate};
}

LocalCovariance gamma_r(const PureState& state) {
    const int n = state.n_qubits();
    const Vec& psi = state.amplitudes();
    RMat s(n, 3);
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= 3; ++i)
            s(k - 1, i - 1) = kernels::expval(psi, kernels::single_mask(n, k, i));

    LocalCovariance cov{RMat::Zero(3 * n, 3 * n), n, false};
    for (int k = 0; k < n; ++k)
        cov.m.block<3, 3>(3 * k, 3 * k) =
            Mat3::Identity() - s.row(k).transpose() * s.row(k);

    struct Job { int k1, i1, k2, i2; };
    std::vector<Job> jobs;
    for (int k1 = 1; k1 <= n; ++k1)
        for (int k2 = k1 + 1; k2 <= n; ++k2)
            for (int i1 = 1; i1 <= 3; ++i1)
                for (int i2 = 1; i2 <= 3; ++i2) jobs.push_back({k1, i1, k2, i2});
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(jobs.size()); ++j) {
        const Job& jb = jobs[static_cast<std::size_t>(j)];
        const double corr =
            kernels::expval(psi, kernels::pair_mask(n, jb.k1, jb.i1, jb.k2, jb.i2));
        const double c = corr - s(jb.k1 - 1, jb.i1 - 1) * s(jb.k2 - 1, jb.i2 - 1);
        cov.m(3 * (jb.k1 - 1) + jb.i1 - 1, 3 * (jb.k2 - 1) + jb.i2 - 1) = c;
        cov.m(3 * (jb.k2 - 1) + jb.i2 - 1, 3 * (jb.k1 - 1) + jb.i1 - 1) = c;
    }
    return cov;
}

LocalCovariance gamma_r(const MixedState& state) {
    const int n = state.n_qubits();
    Eigen::SelfAdjointEigenSolver<Mat> es(state.rho());
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    const Mat& v = es.eigenvectors();
    const Eigen::MatrixXd w = qfi_weights(lam);

    std::vector<Mat> pm;
    pm.reserve(static_cast<std::size_t>(3 * n));
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= 3; ++i)
            pm.push_back(v.adjoint() * apply_pauli_columns(v, n, k, i));

    LocalCovariance cov{RMat::Zero(3 * n, 3 * n), n, true};
    for (int a = 0; a < 3 * n; ++a)
        for (int b = a; b < 3 * n; ++b) {
            const double g = 0.5 * (w.array() * (pm[static_cast<std::size_t>(a)].array() *
                                                 pm[static_cast<std::size_t>(b)].array().conjugate())
                                                    .real())
                                       .sum();
            cov.m(a, b) = g;
            cov.m(b, a) = g;
        }
    return cov;
}

double lu_upper_bound(const LocalCovariance& cov) {
    Eigen::SelfAdjointEigenSolver<RMat> es(cov.m, Eigen::EigenvaluesOnly);
    return cov.n_qubits * es.eigenvalues().maxCoeff();
}

std::pair<Vec3, double> sphere_quadratic_max(const Mat3& a, const Vec3& b) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(a);
    const Vec3 alpha = es.eigenvalues();  // ascending
    const Mat3 q = es.eigenvectors();
    const Vec3 beta = q.transpose() * b;
    const double top = alpha[2];
    const double scale = std::max({1.0, std::abs(top), b.norm()});
    const auto value_of = [&](const Vec3& n) { return n.dot(a * n) + 2.0 * b.dot(n); };

    if (b.norm() <= 1e-14 * scale) {
        const Vec3 n = canonical_sign(q.col(2));
        return {n, value_of(n)};
    }

    std::array<bool, 3> is_top{};
    double beta_top2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        is_top[static_cast<std::size_t>(i)] = top - alpha[i] <= 1e-12 * scale;
        if (is_top[static_cast<std::size_t>(i)]) beta_top2 += beta[i] * beta[i];
    }

    if (std::sqrt(beta_top2) <= 1e-14 * scale) {
        // b has no weight on the top eigenspace: the stationary value may sit
        // at mu = top with a free component along the top eigenvector.
        Vec3 coef = Vec3::Zero();
        double phi_lim = 0.0;
        for (int i = 0; i < 3; ++i) {
            if (is_top[static_cast<std::size_t>(i)]) continue;
            coef[i] = beta[i] / (top - alpha[i]);
            phi_lim += coef[i] * coef[i];
        }
        if (phi_lim < 1.0) {
            const double tau = std::sqrt(std::max(0.0, 1.0 - phi_lim));
            Vec3 n = q * coef + tau * canonical_sign(q.col(2));
            n.normalize();
            return {n, value_of(n)};
        }
    }

    // phi(mu) = sum_i beta_i^2 / (mu - alpha_i)^2 is strictly decreasing on
    // (top, inf); bisect phi = 1.
    const auto phi = [&](double mu) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = mu - alpha[i];
            const double t = beta[i] / d;
            s += t * t;
        }
        return s;
    };
    double lo = top;
    double hi = top + b.norm() + scale;
    while (phi(hi) >= 1.0) hi = top + 2.0 * (hi - top);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (phi(mid) > 1.0 ? lo : hi) = mid;
    }
    const double mu = hi;
    Vec3 coef;
    for (int i = 0; i < 3; ++i) coef[i] = beta[i] / (mu - alpha[i]);
    Vec3 n = q * coef;
    n.normalize();
    return {n, value_of(n)};
}

namespace {

double assignment_value(const RMat& g, const std::vector<Vec3>& dirs) {
    const int n = static_cast<int>(dirs.size());
    Eigen::VectorXd m(3 * n);
    for (int k = 0; k < n; ++k) m.segment<3>(3 * k) = dirs[static_cast<std::size_t>(k)];
    return m.dot(g * m);
}

double block_ascent(const RMat& g, std::vector<Vec3>& dirs) {
    const int n = static_cast<int>(dirs.size());
    double value = assignment_value(g, dirs);
    for (int sweep = 0; sweep < 400; ++sweep) {
        for (int k = 0; k < n; ++k) {
            const Mat3 a = g.block<3, 3>(3 * k, 3 * k);
            Vec3 b = Vec3::Zero();
            for (int l = 0; l < n; ++l)
                if (l != k) b += g.block<3, 3>(3 * k, 3 * l) * dirs[static_cast<std::size_t>(l)];
            dirs[static_cast<std::size_t>(k)] = sphere_quadratic_max(a, b).first;
        }
        const double next = assignment_value(g, dirs);
        if (next - value <= 1e-13 * std::max(1.0, std::abs(next))) {
            value = std::max(value, next);
            break;
        }
        value = next;
    }
    return value;
}

bool lex_less_assignment(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        for (int i = 0; i < 3; ++i) {
            if (a[k][i] != b[k][i]) return a[k][i] < b[k][i];
        }
    return false;
}

}  // namespace

LuOptimum lu_optimize(const LocalCovariance& cov, int restarts, std::uint64_t seed) {
    if (restarts < 0) throw std::invalid_argument("lu_optimize: restarts must be >= 0");
    const int n = cov.n_qubits;

    Eigen::SelfAdjointEigenSolver<RMat> es(cov.m);
    const double lam_max = es.eigenvalues().maxCoeff();
    const Eigen::VectorXd lead = es.eigenvectors().col(es.eigenvalues().size() - 1);

    std::vector<std::vector<Vec3>> inits;
    std::vector<Vec3> spectral(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Vec3 seg = lead.segment<3>(3 * k);
        spectral[static_cast<std::size_t>(k)] = seg.norm() > 1e-9 ? Vec3(seg / seg.norm()) : Vec3(1, 0, 0);
    }
    inits.push_back(std::move(spectral));
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
        std::vector<Vec3> dirs(static_cast<std::size_t>(n));
        for (auto& d : dirs) d = rng.unit_vector();
        inits.push_back(std::move(dirs));
    }

    std::vector<double> values(inits.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(inits.size()); ++i)
        values[static_cast<std::size_t>(i)] = block_ascent(cov.m, inits[static_cast<std::size_t>(i)]);

    std::size_t best = 0;
    for (std::size_t i = 1; i < inits.size(); ++i) {
        if (values[i] > values[best] ||
            (values[i] == values[best] && lex_less_assignment(inits[i], inits[best])))
            best = i;
    }

    LuOptimum out;
    out.upper_bound = n * lam_max;
    out.best_value = values[best];
    out.assignment = DirectionAssignment{inits[best]};
    out.certified = out.best_value >= out.upper_bound - config().tol.certification;
    return out;
}

SymmetricSpectrum symmetric_spectrum(const PureState& state, bool require_symmetric) {
    if (state.n_qubits() < 2)
        throw std::invalid_argument("symmetric_spectrum: needs at least two qubits");
    if (require_symmetric && !is_symmetric(state))
        throw std::invalid_argument("symmetric_spectrum: state is not permutation symmetric");
    const int n = state.n_qubits();
    const Vec& psi = state.amplitudes();

    Vec3 s;
    for (int i = 1; i <= 3; ++i) s[i - 1] = kernels::expval(psi, kernels::single_mask(n, 1, i));
    Mat3 t;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            t(i - 1, j - 1) = kernels::expval(psi, kernels::pair_mask(n, 1, i, 2, j));
    t = 0.5 * (t + t.transpose()).eval();

    const Mat3 a = Mat3::Identity() - s * s.transpose();
    const Mat3 b = t - s * s.transpose();

    Eigen::SelfAdjointEigenSolver<Mat3> es1(a + (n - 1) * b);
    Eigen::SelfAdjointEigenSolver<Mat3> es2(a - b);

    SymmetricSpectrum out{
        es1.eigenvalues()[2],
        es2.eigenvalues()[2],
        Direction(canonical_sign(es1.eigenvectors().col(2)).normalized()),
        false,
        es1.eigenvalues(),
        es2.eigenvalues(),
    };
    out.tie = std::abs(out.lambda1 - out.lambda2) <=
              config().tol.degeneracy * std::max(1.0, std::abs(out.lambda1));
    return out;
}

}  // namespace qfit
