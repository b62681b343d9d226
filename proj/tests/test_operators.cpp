#include <doctest.h>

#include "qfit/operators.hpp"
#include "qfit/state.hpp"
#include "qfit/statelib.hpp"

using namespace qfit;

TEST_CASE("pauli algebra: squares, commutators, traces") {
    for (int i = 1; i <= 3; ++i) {
        CHECK((pauli(i) * pauli(i) - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(std::abs(pauli(i).trace()) < 1e-15);
    }
    // sigma_x sigma_y = i sigma_z and cyclic.
    CHECK((pauli(1) * pauli(2) - cxd(0, 1) * pauli(3)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((pauli(2) * pauli(3) - cxd(0, 1) * pauli(1)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((pauli(3) * pauli(1) - cxd(0, 1) * pauli(2)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((pauli(0) - Mat2::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((pauli(Axis::Z) - pauli(3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("collective spin matrices satisfy the angular momentum algebra") {
    const int n = 3;
    const Mat jx = collective_spin_matrix(n, Direction(1.0, 0.0, 0.0));
    const Mat jy = collective_spin_matrix(n, Direction(0.0, 1.0, 0.0));
    const Mat jz = collective_spin_matrix(n, Direction(0.0, 0.0, 1.0));
    CHECK((jx - jx.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const Mat comm = jx * jy - jy * jx;
    CHECK((comm - cxd(0, 1) * jz).cwiseAbs().maxCoeff() < 1e-13);

    // A direction mixes the components linearly.
    const Direction d = Direction::normalized(Vec3(1.0, 2.0, -2.0));
    const Mat jd = collective_spin_matrix(n, d);
    const Mat want = d[0] * jx + d[1] * jy + d[2] * jz;
    CHECK((jd - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("symmetric states carry maximal total spin") {
    const int n = 4;
    const Mat jx = collective_spin_matrix(n, Direction(1.0, 0.0, 0.0));
    const Mat jy = collective_spin_matrix(n, Direction(0.0, 1.0, 0.0));
    const Mat jz = collective_spin_matrix(n, Direction(0.0, 0.0, 1.0));
    const Mat j2 = jx * jx + jy * jy + jz * jz;
    const double jj = n / 2.0 * (n / 2.0 + 1.0);
    for (double m = -2.0; m <= 2.0; m += 1.0) {
        const PureState d = dicke_state(n, m);
        CHECK(expectation(d, j2) == doctest::Approx(jj).epsilon(1e-12));
        CHECK(expectation(d, jz) == doctest::Approx(m).epsilon(1e-12));
    }
}

TEST_CASE("cabello singlets are annihilated by the total spin") {
    for (int n : {2, 4, 6}) {
        const PureState s = cabello_singlet(n);
        Mat j2 = Mat::Zero(s.dim(), s.dim());
        for (int i = 0; i < 3; ++i) {
            Vec3 e = Vec3::Zero();
            e[i] = 1.0;
            const Mat ji = collective_spin_matrix(n, Direction(e));
            j2 += ji * ji;
        }
        CHECK(expectation(s, j2) < 1e-10);
    }
}
