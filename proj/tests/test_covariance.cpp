#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "qfit/covariance.hpp"
#include "qfit/fisher.hpp"
#include "qfit/kernels.hpp"
#include "qfit/operators.hpp"
#include "qfit/rng.hpp"
#include "qfit/statelib.hpp"

using namespace qfit;

namespace {

PureState random_pure(int n, std::uint64_t seed) {
    Rng rng(seed);
    Vec v(dim_of(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cxd(rng.gauss(), rng.gauss());
    return PureState(n, v / v.norm());
}

// Random state inside the symmetric subspace.
PureState random_symmetric(int n, std::uint64_t seed) {
    Rng rng(seed);
    Vec amp = Vec::Zero(dim_of(n));
    for (int k = 0; k <= n; ++k) {
        const cxd c(rng.gauss(), rng.gauss());
        const PureState d = dicke_state(n, n / 2.0 - k);
        amp += c * d.amplitudes();
    }
    return PureState(n, amp / amp.norm());
}

Mat3 dense_gamma_c(const PureState& psi) {
    std::array<Mat, 3> j;
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Zero();
        e[i] = 1.0;
        j[static_cast<std::size_t>(i)] = collective_spin_matrix(psi.n_qubits(), Direction(e));
    }
    Mat3 out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const Mat& ja = j[static_cast<std::size_t>(a)];
            const Mat& jb = j[static_cast<std::size_t>(b)];
            const double anti = expectation(psi, Mat((ja * jb + jb * ja) / 2.0));
            out(a, b) = anti - expectation(psi, ja) * expectation(psi, jb);
        }
    return out;
}

}  // namespace

TEST_CASE("collective covariance matches the dense second-moment formula") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const PureState psi = random_pure(4, seed);
        const auto got = gamma_c(psi);
        CHECK((got.m - dense_gamma_c(psi)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK_FALSE(got.mixed_source);
    }
}

TEST_CASE("mixed-state covariance reduces to the pure formula on projectors") {
    const PureState psi = random_pure(3, 77);
    const auto pure = gamma_c(psi);
    const auto mixed = gamma_c(MixedState::from_pure(psi));
    CHECK((pure.m - mixed.m).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(mixed.mixed_source);

    const auto gr_pure = gamma_r(psi);
    const auto gr_mixed = gamma_r(MixedState::from_pure(psi));
    CHECK((gr_pure.m - gr_mixed.m).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("best collective direction maximizes the actual Fisher information") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const PureState psi = random_pure(3, 30 + seed);
        const auto opt = best_clu(gamma_c(psi));
        const Mat j = collective_spin_matrix(3, opt.direction);
        CHECK(std::abs(opt.fq - qfi_pure(psi, j)) < 1e-9);
        // No sampled direction does better.
        Rng rng(500 + seed);
        for (int t = 0; t < 50; ++t) {
            const Mat jt = collective_spin_matrix(3, Direction(rng.unit_vector()));
            CHECK(qfi_pure(psi, jt) <= opt.fq + 1e-9);
        }
    }
}

TEST_CASE("degenerate top eigenvalue is flagged and resolved canonically") {
    CollectiveCovariance flat{Mat3::Identity(), false};
    const auto opt = best_clu(flat);
    CHECK(opt.degenerate);
    CHECK(opt.fq == doctest::Approx(4.0));
    // Lexicographically largest canonical eigenvector: x-hat.
    CHECK((opt.direction.vec() - Vec3::UnitX()).cwiseAbs().maxCoeff() < 1e-12);

    Mat3 dom = Mat3::Zero();
    dom(0, 0) = 1.0;
    dom(1, 1) = 1.0;
    dom(2, 2) = 4.0;
    const auto z = best_clu(CollectiveCovariance{dom, false});
    CHECK_FALSE(z.degenerate);
    CHECK((z.direction.vec() - Vec3::UnitZ()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pauli covariance matches the entrywise definition") {
    const int n = 3;
    const PureState psi = random_pure(n, 91);
    const auto got = gamma_r(psi);
    CHECK(got.m.rows() == 3 * n);
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l)
            for (int a = 1; a <= 3; ++a)
                for (int b = 1; b <= 3; ++b) {
                    double want;
                    if (k == l) {
                        // One-qubit block: (sigma_a sigma_b + sigma_b sigma_a)/2 = delta_ab.
                        const double sa = kernels::expval(
                            psi.amplitudes(), kernels::single_mask(n, k, a));
                        const double sb = kernels::expval(
                            psi.amplitudes(), kernels::single_mask(n, k, b));
                        want = (a == b ? 1.0 : 0.0) - sa * sb;
                    } else {
                        const double pair = kernels::expval(
                            psi.amplitudes(), kernels::pair_mask(n, k, a, l, b));
                        const double sa = kernels::expval(
                            psi.amplitudes(), kernels::single_mask(n, k, a));
                        const double sb = kernels::expval(
                            psi.amplitudes(), kernels::single_mask(n, l, b));
                        want = pair - sa * sb;
                    }
                    CHECK(std::abs(got.m(3 * (k - 1) + a - 1, 3 * (l - 1) + b - 1) - want) < 1e-11);
                }
}

TEST_CASE("pauli covariance is positive semidefinite with bounded diagonal") {
    const PureState psi = random_pure(4, 92);
    const auto cov = gamma_r(psi);
    Eigen::SelfAdjointEigenSolver<RMat> es(cov.m);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
    CHECK(cov.m.diagonal().maxCoeff() <= 1.0 + 1e-12);
    CHECK(lu_upper_bound(cov) == doctest::Approx(4.0 * es.eigenvalues().maxCoeff()).epsilon(1e-12));
}

TEST_CASE("sphere quadratic maximizer satisfies the stationarity condition") {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        Mat3 a;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) a(i, k) = rng.gauss();
        a = ((a + a.transpose()) / 2.0).eval();
        const Vec3 b(rng.gauss(), rng.gauss(), rng.gauss());
        const auto [n, val] = sphere_quadratic_max(a, b);
        CHECK(std::abs(n.norm() - 1.0) < 1e-12);
        CHECK(val == doctest::Approx(n.dot(a * n) + 2.0 * b.dot(n)).epsilon(1e-10));
        // Gradient parallel to n: (a n + b) x n = 0.
        CHECK(((a * n + b).cross(n)).norm() < 1e-7);
        // Beats random sampling.
        for (int s = 0; s < 200; ++s) {
            const Vec3 u = rng.unit_vector();
            CHECK(u.dot(a * u) + 2.0 * b.dot(u) <= val + 1e-9);
        }
    }
}

TEST_CASE("sphere quadratic handles the degenerate linear term") {
    // b orthogonal to the top eigenspace, small enough for the hard case.
    Mat3 a = Mat3::Zero();
    a(0, 0) = 2.0;
    a(1, 1) = 1.0;
    const Vec3 b(0.0, 0.3, 0.1);
    const auto [n, val] = sphere_quadratic_max(a, b);
    CHECK(std::abs(n.norm() - 1.0) < 1e-12);
    CHECK(((a * n + b).cross(n)).norm() < 1e-9);
    Rng rng(8);
    for (int s = 0; s < 2000; ++s) {
        const Vec3 u = rng.unit_vector();
        CHECK(u.dot(a * u) + 2.0 * b.dot(u) <= val + 1e-9);
    }
    // Pure eigenvector problem when b = 0.
    const auto [n0, v0] = sphere_quadratic_max(a, Vec3::Zero());
    CHECK(v0 == doctest::Approx(2.0));
    CHECK((n0 - Vec3::UnitX()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("local-unitary optimization certifies symmetric states") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PureState psi = random_symmetric(4, 40 + seed);
        const double clu = best_clu(gamma_c(psi)).fq;
        const auto lu = lu_optimize(gamma_r(psi), 8, 1);
        CHECK(lu.certified);
        CHECK(std::abs(lu.best_value - clu) < 1e-7);
        CHECK(std::abs(lu.best_value - lu.upper_bound) < 1e-7);
        for (const auto& d : lu.assignment.dirs) CHECK(std::abs(d.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("local-unitary optimization is deterministic in the seed") {
    const PureState psi = random_pure(3, 55);
    const auto cov = gamma_r(psi);
    const auto a = lu_optimize(cov, 12, 9);
    const auto b = lu_optimize(cov, 12, 9);
    CHECK(a.best_value == b.best_value);
    CHECK(a.assignment.stacked() == b.assignment.stacked());
}

TEST_CASE("symmetric spectrum reproduces the dense covariance eigenvalues") {
    for (int n : {3, 4, 5}) {
        const PureState psi = random_symmetric(n, 60 + static_cast<std::uint64_t>(n));
        const auto spec = symmetric_spectrum(psi);
        const auto cov = gamma_r(psi);
        Eigen::SelfAdjointEigenSolver<RMat> es(cov.m);
        std::vector<double> dense(es.eigenvalues().data(), es.eigenvalues().data() + 3 * n);
        std::vector<double> predicted;
        for (int i = 0; i < 3; ++i) predicted.push_back(spec.collective_eigs[i]);
        for (int r = 1; r < n; ++r)
            for (int i = 0; i < 3; ++i) predicted.push_back(spec.relative_eigs[i]);
        std::sort(predicted.begin(), predicted.end());
        REQUIRE(predicted.size() == dense.size());
        for (std::size_t i = 0; i < predicted.size(); ++i)
            CHECK(std::abs(predicted[i] - dense[i]) < 1e-8);
        CHECK(spec.lambda1 == doctest::Approx(spec.collective_eigs.maxCoeff()).epsilon(1e-12));
        CHECK(spec.lambda2 == doctest::Approx(spec.relative_eigs.maxCoeff()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(symmetric_spectrum(graph_state(linear_cluster(4))), std::invalid_argument);
}
