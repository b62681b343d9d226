#pragma once

#include <vector>

#include "qfit/covariance.hpp"
#include "qfit/statelib.hpp"

namespace qfit {

// Independent baselines used to cross-check the fast paths. All of them are
// deliberately brute-force.

struct GridLuResult {
    double value = 0.0;
    std::vector<Vec3> assignment;
    double resolution_deg = 0.0;  // grid pitch actually scanned
};

// Scans a theta/phi grid of the given pitch over every qubit direction and
// polishes the best grid point with a derivative-free pattern search.
// Supports up to 3 qubits; with 3 qubits the scan pitch is coarsened to at
// least 12 degrees to keep the grid tractable (the polish step recovers the
// lost precision).
GridLuResult grid_lu_search(const LocalCovariance& cov, double resolution_deg);

// Largest entrywise gap between stabilizer-product reductions and dense
// partial traces, over all 1- and 2-qubit subsets.
double dense_reduction_gap(const Graph& g);

// 2^-N sum of all stabilizer subset products, assembled densely (n <= 5).
Mat stabilizer_sum_projector(const Graph& g);

// Largest entrywise gap between the stabilizer sum and the graph state
// projector.
double stabilizer_sum_gap(const Graph& g);

}  // namespace qfit
