#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qfit/kernels.hpp"
#include "qfit/operators.hpp"
#include "qfit/rng.hpp"
#include "qfit/statelib.hpp"

using namespace qfit;

namespace {

Vec random_state(int n, std::uint64_t seed) {
    Rng rng(seed);
    Vec v(dim_of(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cxd(rng.gauss(), rng.gauss());
    return v / v.norm();
}

Mat random_density(int n, std::uint64_t seed) {
    Rng rng(seed);
    const Eigen::Index d = dim_of(n);
    Mat a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = 0; k < d; ++k) a(i, k) = cxd(rng.gauss(), rng.gauss());
    Mat rho = a * a.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("qubit mask addresses the most significant bit first") {
    CHECK(kernels::qubit_mask(3, 1) == 4);
    CHECK(kernels::qubit_mask(3, 2) == 2);
    CHECK(kernels::qubit_mask(3, 3) == 1);
}

TEST_CASE("pauli product expectation matches the dense matrix on all 3-qubit strings") {
    const int n = 3;
    const Vec psi = random_state(n, 11);
    const Mat rho = random_density(n, 12);
    std::vector<int> factors(3);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                factors = {a, b, c};
                const auto m = kernels::pauli_masks(n, factors);
                const Mat dense = PauliString{1, factors}.dense();
                const double want_pure = (psi.adjoint() * dense * psi)(0).real();
                const double want_mixed = (dense * rho).trace().real();
                CHECK(std::abs(kernels::expval(psi, m) - want_pure) < 1e-12);
                CHECK(std::abs(kernels::expval(rho, m) - want_mixed) < 1e-12);
            }
}

TEST_CASE("serial and parallel kernels agree") {
    const int n = 6;
    const Vec psi = random_state(n, 21);
    const auto m = kernels::pair_mask(n, 2, 1, 5, 2);
    CHECK(std::abs(kernels::expval(psi, m) - kernels::serial::expval(psi, m)) < 1e-13);

    const Vec3 dir = Vec3(1.0, -2.0, 0.5).normalized();
    const Vec a = kernels::collective_apply(psi, n, dir);
    const Vec b = kernels::serial::collective_apply(psi, n, dir);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);

    Mat2 u;
    u << cxd(0.3, 0.1), cxd(-0.8, 0.0), cxd(0.8, 0.0), cxd(0.3, -0.1);
    Vec p1 = psi, p2 = psi;
    kernels::apply_single_qubit(p1, n, 3, u);
    kernels::serial::apply_single_qubit(p2, n, 3, u);
    CHECK((p1 - p2).cwiseAbs().maxCoeff() < 1e-13);

    Vec c1 = psi, c2 = psi;
    kernels::apply_cz(c1, n, 2, 5);
    kernels::serial::apply_cz(c2, n, 2, 5);
    CHECK((c1 - c2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reductions are bitwise reproducible across thread counts") {
    const int n = 8;
    const Vec psi = random_state(n, 31);
    const auto m = kernels::pair_mask(n, 1, 2, 4, 3);
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double v1 = kernels::expval(psi, m);
    omp_set_num_threads(4);
    const double v4 = kernels::expval(psi, m);
    omp_set_num_threads(saved);
    CHECK(v1 == v4);
#else
    CHECK(kernels::expval(psi, m) == kernels::expval(psi, m));
#endif
}

TEST_CASE("single-qubit application matches the dense tensor product") {
    const int n = 3;
    const Vec psi = random_state(n, 41);
    Mat2 u;
    u << cxd(0.2, 0.5), cxd(1.0, -0.3), cxd(0.0, 0.7), cxd(-0.4, 0.1);
    for (int q = 1; q <= n; ++q) {
        Mat dense = Mat::Identity(1, 1);
        // Qubit 1 is the most significant bit, so its factor goes outermost.
        for (int k = n; k >= 1; --k) {
            const Mat f = (k == q) ? Mat(u) : Mat(Mat2::Identity());
            Mat next(dense.rows() * 2, dense.cols() * 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) next.block(r * dense.rows(), c * dense.cols(), dense.rows(), dense.cols()) = f(r, c) * dense;
            dense = std::move(next);
        }
        Vec got = psi;
        kernels::apply_single_qubit(got, n, q, u);
        const Vec want = dense * psi;
        CHECK((got - want).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("controlled-Z flips exactly the doubly-excited amplitudes") {
    const int n = 3;
    Vec psi = Vec::Ones(8) / std::sqrt(8.0);
    kernels::apply_cz(psi, n, 1, 3);
    for (std::int64_t b = 0; b < 8; ++b) {
        const bool both = (b & 4) && (b & 1);
        CHECK(psi[b].real() == doctest::Approx((both ? -1.0 : 1.0) / std::sqrt(8.0)));
    }
}

TEST_CASE("collective application equals the dense collective spin matrix") {
    const int n = 4;
    const Vec psi = random_state(n, 51);
    const Direction dir = Direction::normalized(Vec3(0.2, -0.7, 1.1));
    const Mat j = collective_spin_matrix(n, dir);
    const Vec got = kernels::collective_apply(psi, n, dir.vec());
    const Vec want = j * psi;
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("y phase table walks the powers of minus i") {
    CHECK(kernels::y_phase(0) == cxd(1, 0));
    CHECK(kernels::y_phase(1) == cxd(0, -1));
    CHECK(kernels::y_phase(2) == cxd(-1, 0));
    CHECK(kernels::y_phase(3) == cxd(0, 1));
    CHECK(kernels::y_phase(4) == cxd(1, 0));
}
