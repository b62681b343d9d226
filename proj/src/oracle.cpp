#include "qfit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qfit/state.hpp"

namespace qfit {

namespace {

std::vector<Vec3> direction_grid(double res_deg) {
    std::vector<Vec3> dirs;
    dirs.emplace_back(0.0, 0.0, 1.0);
    const double rad = M_PI / 180.0;
    for (double theta = res_deg; theta < 180.0 - 1e-9; theta += res_deg) {
        const double st = std::sin(theta * rad);
        const double ct = std::cos(theta * rad);
        for (double phi = 0.0; phi < 360.0 - 1e-9; phi += res_deg) {
            dirs.emplace_back(st * std::cos(phi * rad), st * std::sin(phi * rad), ct);
        }
    }
    dirs.emplace_back(0.0, 0.0, -1.0);
    return dirs;
}

double assignment_value(const RMat& g, const std::vector<Vec3>& d) {
    const int n = static_cast<int>(d.size());
    double v = 0.0;
    for (int k = 0; k < n; ++k) {
        v += d[static_cast<std::size_t>(k)].dot(g.block<3, 3>(3 * k, 3 * k) * d[static_cast<std::size_t>(k)]);
        for (int l = k + 1; l < n; ++l) {
            v += 2.0 * d[static_cast<std::size_t>(k)].dot(g.block<3, 3>(3 * k, 3 * l) *
                                                          d[static_cast<std::size_t>(l)]);
        }
    }
    return v;
}

Vec3 from_angles(double theta, double phi) {
    return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

// Coordinate-wise pattern search on the 2N spherical angles, step-halving
// down to ~1e-9 rad. The objective is smooth, so this recovers the local
// optimum near the best grid point to full precision.
double polish(const RMat& g, std::vector<Vec3>& d, double step_rad) {
    const int n = static_cast<int>(d.size());
    std::vector<double> theta(static_cast<std::size_t>(n)), phi(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Vec3& v = d[static_cast<std::size_t>(k)];
        theta[static_cast<std::size_t>(k)] = std::atan2(std::hypot(v.x(), v.y()), v.z());
        phi[static_cast<std::size_t>(k)] = std::atan2(v.y(), v.x());
    }
    auto rebuild = [&](const std::vector<double>& th, const std::vector<double>& ph) {
        std::vector<Vec3> out(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            out[static_cast<std::size_t>(k)] =
                from_angles(th[static_cast<std::size_t>(k)], ph[static_cast<std::size_t>(k)]);
        }
        return out;
    };
    double best = assignment_value(g, d);
    double h = step_rad;
    long evals = 0;
    while (h > 1e-9 && evals < 400000) {
        bool improved = false;
        for (int k = 0; k < n; ++k) {
            const double moves[4][2] = {{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}};
            for (const auto& mv : moves) {
                auto th = theta;
                auto ph = phi;
                th[static_cast<std::size_t>(k)] += mv[0];
                ph[static_cast<std::size_t>(k)] += mv[1];
                const auto cand = rebuild(th, ph);
                const double val = assignment_value(g, cand);
                ++evals;
                if (val > best) {
                    best = val;
                    theta = th;
                    phi = ph;
                    improved = true;
                }
            }
        }
        if (!improved) h /= 2.0;
    }
    d = rebuild(theta, phi);
    return best;
}

}  // namespace

GridLuResult grid_lu_search(const LocalCovariance& cov, double resolution_deg) {
    const int n = cov.n_qubits;
    if (n < 1 || n > 3) throw DimensionCapError("grid_lu_search: supports 1 to 3 qubits");
    if (resolution_deg <= 0.0) throw std::invalid_argument("grid_lu_search: resolution must be positive");
    const double res = (n == 3) ? std::max(resolution_deg, 12.0) : resolution_deg;

    const auto dirs = direction_grid(res);
    const Eigen::Index nd = static_cast<Eigen::Index>(dirs.size());
    RMat dm(3, nd);
    for (Eigen::Index i = 0; i < nd; ++i) dm.col(i) = dirs[static_cast<std::size_t>(i)];

    // Per-qubit quadratic terms d^T A_kk d for every grid direction.
    std::vector<Eigen::VectorXd> quad(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Mat3 a = cov.m.block<3, 3>(3 * k, 3 * k);
        Eigen::VectorXd q(nd);
        for (Eigen::Index i = 0; i < nd; ++i) {
            q[i] = dirs[static_cast<std::size_t>(i)].dot(a * dirs[static_cast<std::size_t>(i)]);
        }
        quad[static_cast<std::size_t>(k)] = std::move(q);
    }

    double best = -std::numeric_limits<double>::infinity();
    std::vector<Eigen::Index> arg(static_cast<std::size_t>(n), 0);

    if (n == 1) {
        Eigen::Index i0;
        best = quad[0].maxCoeff(&i0);
        arg[0] = i0;
    } else if (n == 2) {
        const Mat3 g01 = cov.m.block<3, 3>(0, 3);
        for (Eigen::Index i = 0; i < nd; ++i) {
            const Vec3 lin = 2.0 * (g01.transpose() * dirs[static_cast<std::size_t>(i)]);
            Eigen::Index j;
            const double inner = (quad[1] + dm.transpose() * lin).maxCoeff(&j);
            const double val = quad[0][i] + inner;
            if (val > best) {
                best = val;
                arg[0] = i;
                arg[1] = j;
            }
        }
    } else {
        const Mat3 g01 = cov.m.block<3, 3>(0, 3);
        const Mat3 g02 = cov.m.block<3, 3>(0, 6);
        const Mat3 g12 = cov.m.block<3, 3>(3, 6);
        for (Eigen::Index i = 0; i < nd; ++i) {
            const Vec3 di = dirs[static_cast<std::size_t>(i)];
            const Eigen::VectorXd cross01 = 2.0 * (dm.transpose() * (g01.transpose() * di));
            for (Eigen::Index j = 0; j < nd; ++j) {
                const Vec3 dj = dirs[static_cast<std::size_t>(j)];
                const double base = quad[0][i] + quad[1][j] + cross01[j];
                const Vec3 lin = 2.0 * (g02.transpose() * di + g12.transpose() * dj);
                Eigen::Index l;
                const double inner = (quad[2] + dm.transpose() * lin).maxCoeff(&l);
                const double val = base + inner;
                if (val > best) {
                    best = val;
                    arg[0] = i;
                    arg[1] = j;
                    arg[2] = l;
                }
            }
        }
    }

    std::vector<Vec3> assignment(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        assignment[static_cast<std::size_t>(k)] = dirs[static_cast<std::size_t>(arg[static_cast<std::size_t>(k)])];
    }
    const double polished = polish(cov.m, assignment, res * M_PI / 180.0);
    return GridLuResult{polished, std::move(assignment), res};
}

double dense_reduction_gap(const Graph& g) {
    const int n = g.n_vertices();
    const PureState psi = graph_state(g);
    double gap = 0.0;
    auto check = [&](const std::vector<int>& keep) {
        const MixedState a = stabilizer_reduced_state(g, keep);
        const MixedState b = partial_trace(psi, keep);
        gap = std::max(gap, (a.rho() - b.rho()).cwiseAbs().maxCoeff());
    };
    for (int i = 1; i <= n; ++i) {
        check({i});
        for (int j = i + 1; j <= n; ++j) check({i, j});
    }
    return gap;
}

Mat stabilizer_sum_projector(const Graph& g) {
    const int n = g.n_vertices();
    if (n > 5) throw DimensionCapError("stabilizer_sum_projector: supports up to 5 vertices");
    const Eigen::Index dim = Eigen::Index(1) << n;
    Mat sum = Mat::Zero(dim, dim);
    const std::size_t n_subsets = std::size_t(1) << n;
    for (std::size_t subset = 0; subset < n_subsets; ++subset) {
        PauliString prod{1, std::vector<int>(static_cast<std::size_t>(n), 0)};
        for (int v = 1; v <= n; ++v) {
            if (subset & (std::size_t(1) << (v - 1))) {
                prod = pauli_string_product(prod, graph_stabilizer(g, v));
            }
        }
        sum += prod.dense();
    }
    return sum / static_cast<double>(n_subsets);
}

double stabilizer_sum_gap(const Graph& g) {
    const PureState psi = graph_state(g);
    const Mat proj = psi.amplitudes() * psi.amplitudes().adjoint();
    return (stabilizer_sum_projector(g) - proj).cwiseAbs().maxCoeff();
}

}  // namespace qfit
