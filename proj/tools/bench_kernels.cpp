#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qfit/kernels.hpp"
#include "qfit/rng.hpp"
#include "qfit/types.hpp"

// Times the OpenMP kernels against the serial reference implementations on a
// random state and prints one row per kernel. The two columns must agree to
// near machine precision; the speedup column shows what the parallel path
// buys on the current machine.

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

qfit::Vec random_state(int n, std::uint64_t seed) {
    qfit::Rng rng(seed);
    qfit::Vec v(qfit::dim_of(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = qfit::cxd(rng.gauss(), rng.gauss());
    v /= v.norm();
    return v;
}

struct Row {
    const char* name;
    double serial_us = 0.0;
    double parallel_us = 0.0;
    double gap = 0.0;
};

void print_row(const Row& r) {
    std::printf("%-22s %12.2f %12.2f %9.2fx %10.2e\n", r.name, r.serial_us, r.parallel_us,
                r.serial_us / r.parallel_us, r.gap);
}

}  // namespace

int main(int argc, char** argv) {
    const int n = (argc > 1) ? std::atoi(argv[1]) : 12;
    const int reps = (argc > 2) ? std::atoi(argv[2]) : 200;
    if (n < 2 || n > 14 || reps < 1) {
        std::fprintf(stderr, "usage: %s [n_qubits 2..14] [reps]\n", argv[0]);
        return 2;
    }
    const qfit::Vec psi = random_state(n, 7);
    std::printf("kernel benchmark: n = %d, dim = %lld, reps = %d\n", n,
                static_cast<long long>(psi.size()), reps);
    std::printf("%-22s %12s %12s %10s %10s\n", "kernel", "serial us", "parallel us", "speedup",
                "max gap");

    // Single- and two-qubit Pauli expectations.
    {
        const auto m1 = qfit::kernels::single_mask(n, 2, 2);
        const auto m2 = qfit::kernels::pair_mask(n, 1, 1, 3, 3);
        for (const auto* cfg : {&m1, &m2}) {
            Row row{cfg == &m1 ? "expval single" : "expval pair"};
            double a = 0.0, b = 0.0;
            auto t0 = Clock::now();
            for (int r = 0; r < reps; ++r) a = qfit::kernels::serial::expval(psi, *cfg);
            row.serial_us = seconds_since(t0) / reps * 1e6;
            t0 = Clock::now();
            for (int r = 0; r < reps; ++r) b = qfit::kernels::expval(psi, *cfg);
            row.parallel_us = seconds_since(t0) / reps * 1e6;
            row.gap = std::abs(a - b);
            print_row(row);
        }
    }

    // J_dir application.
    {
        const qfit::Vec3 dir = qfit::Vec3(0.3, 0.5, 0.8).normalized();
        Row row{"collective apply"};
        qfit::Vec a, b;
        auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) a = qfit::kernels::serial::collective_apply(psi, n, dir);
        row.serial_us = seconds_since(t0) / reps * 1e6;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r) b = qfit::kernels::collective_apply(psi, n, dir);
        row.parallel_us = seconds_since(t0) / reps * 1e6;
        row.gap = (a - b).cwiseAbs().maxCoeff();
        print_row(row);
    }

    // In-place one-qubit gate and controlled-Z.
    {
        qfit::Mat2 h;
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        Row row{"apply single qubit"};
        qfit::Vec a = psi, b = psi;
        auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) qfit::kernels::serial::apply_single_qubit(a, n, 4, h);
        row.serial_us = seconds_since(t0) / reps * 1e6;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r) qfit::kernels::apply_single_qubit(b, n, 4, h);
        row.parallel_us = seconds_since(t0) / reps * 1e6;
        row.gap = (a - b).cwiseAbs().maxCoeff();
        print_row(row);
    }
    {
        Row row{"apply cz"};
        qfit::Vec a = psi, b = psi;
        auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) qfit::kernels::serial::apply_cz(a, n, 1, 2);
        row.serial_us = seconds_since(t0) / reps * 1e6;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r) qfit::kernels::apply_cz(b, n, 1, 2);
        row.parallel_us = seconds_since(t0) / reps * 1e6;
        row.gap = (a - b).cwiseAbs().maxCoeff();
        print_row(row);
    }
    return 0;
}
