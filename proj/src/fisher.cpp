#include "qfit/fisher.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qfit {

Povm::Povm(std::vector<Mat> elements) : e_(std::move(elements)) {
    if (e_.empty()) throw std::invalid_argument("povm: needs at least one element");
    const Eigen::Index d = e_.front().rows();
    Mat sum = Mat::Zero(d, d);
    for (const auto& el : e_) {
        if (el.rows() != d || el.cols() != d) throw std::invalid_argument("povm: dimension mismatch");
        if ((el - el.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("povm: element is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(el, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -config().tol.psd)
            throw std::invalid_argument("povm: element is not positive semidefinite");
        sum += el;
    }
    if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("povm: elements must sum to the identity");
}

double qfi_pure(const PureState& state, const Mat& generator) {
    return 4.0 * variance(state, generator);
}

double qfi_mixed(const MixedState& state, const Mat& generator) {
    if (generator.rows() != state.dim() || generator.cols() != state.dim())
        throw std::invalid_argument("qfi_mixed: generator dimension mismatch");
    if ((generator - generator.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("qfi_mixed: generator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(state.rho());
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    const Mat h = es.eigenvectors().adjoint() * generator * es.eigenvectors();
    const Eigen::Index d = lam.size();
    const double floor = config().tol.spectral_floor;
    double total = 0.0;
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
            const double s = lam[j] + lam[k];
            if (s <= floor) continue;
            const double diff = lam[j] - lam[k];
            total += (diff * diff / s) * std::norm(h(j, k));
        }
    return 2.0 * total;
}

double classical_fisher(const MixedState& state, const Mat& generator, const Povm& povm,
                        double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("classical_fisher: theta must be finite");
    if (generator.rows() != state.dim() || generator.cols() != state.dim())
        throw std::invalid_argument("classical_fisher: generator dimension mismatch");
    if (povm[0].rows() != state.dim())
        throw std::invalid_argument("classical_fisher: povm dimension mismatch");

    // rho(theta) via the spectral decomposition of the generator.
    Eigen::SelfAdjointEigenSolver<Mat> es(generator);
    const Vec phases = (cxd(0, -theta) * es.eigenvalues().cast<cxd>().array()).exp().matrix();
    const Mat u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    const Mat rho_t = u * state.rho() * u.adjoint();
    const Mat drho = cxd(0, -1) * (generator * rho_t - rho_t * generator);

    double total = 0.0;
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const double prob = (povm[i] * rho_t).trace().real();
        const double dprob = (povm[i] * drho).trace().real();
        if (prob < 1e-12) {
            if (std::abs(dprob) >= 1e-9)
                throw SingularOutcomeError("classical_fisher: outcome probability vanishes "
                                           "while its derivative does not");
            continue;
        }
        total += dprob * dprob / prob;
    }
    return total;
}

SensitivityBound cramer_rao(double fisher, int m) {
    if (fisher < 0.0) throw std::invalid_argument("cramer_rao: fisher information must be >= 0");
    if (m < 1) throw std::invalid_argument("cramer_rao: repetitions must be >= 1");
    SensitivityBound b;
    b.fisher = fisher;
    b.m = m;
    if (fisher == 0.0) {
        b.delta_theta = std::numeric_limits<double>::infinity();
        b.unbounded = true;
    } else {
        b.delta_theta = 1.0 / std::sqrt(m * fisher);
    }
    return b;
}

double shot_noise_limit(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("shot_noise_limit: need at least one qubit");
    return 1.0 / std::sqrt(static_cast<double>(n_qubits));
}

double heisenberg_limit(int m, int n_qubits) {
    if (m < 1 || n_qubits < 1) throw std::invalid_argument("heisenberg_limit: invalid arguments");
    return 1.0 / (std::sqrt(static_cast<double>(m)) * n_qubits);
}

}  // namespace qfit
