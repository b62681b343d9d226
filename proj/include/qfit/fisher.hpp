#pragma once

#include <vector>

#include "qfit/state.hpp"
#include "qfit/types.hpp"

namespace qfit {

// Positive operator-valued measure: Hermitian PSD elements summing to the
// identity (validated on construction).
class Povm {
  public:
    explicit Povm(std::vector<Mat> elements);

    std::size_t size() const { return e_.size(); }
    const Mat& operator[](std::size_t i) const { return e_[i]; }

  private:
    std::vector<Mat> e_;
};

struct SensitivityBound {
    double fisher = 0.0;
    int m = 1;                  // number of repetitions
    double delta_theta = 0.0;   // infinity when fisher = 0
    bool unbounded = false;
};

// Quantum Fisher information of exp(-i H theta) acting on the state.
// Pure states: 4 <(Delta H)^2>.
double qfi_pure(const PureState& state, const Mat& generator);

// Mixed states: 2 sum_{j,k} (l_j - l_k)^2 / (l_j + l_k) |<j|H|k>|^2 over
// eigenvalue pairs with l_j + l_k above the spectral floor.
double qfi_mixed(const MixedState& state, const Mat& generator);

// Classical Fisher information of the POVM outcome distribution at theta.
// Outcomes with both P and dP/dtheta below threshold contribute zero; a
// vanishing P with nonvanishing derivative raises SingularOutcomeError.
double classical_fisher(const MixedState& state, const Mat& generator, const Povm& povm,
                        double theta);

// Phase uncertainty bound 1/sqrt(m F).
SensitivityBound cramer_rao(double fisher, int m);

// Reference phase uncertainties at m = 1: 1/sqrt(N) for uncorrelated
// inputs, 1/N at the Heisenberg limit.
double shot_noise_limit(int n_qubits);
double heisenberg_limit(int m, int n_qubits);

}  // namespace qfit
