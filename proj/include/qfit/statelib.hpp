#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qfit/state.hpp"
#include "qfit/types.hpp"

namespace qfit {

// Simple undirected graph on vertices 1..n, no self-loops, no parallel
// edges. Edges are stored with the smaller vertex first.
class Graph {
  public:
    Graph(int n_vertices, std::vector<std::pair<int, int>> edges);

    int n_vertices() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v - 1)]; }
    bool adjacent(int a, int b) const;

  private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

// Product of single-qubit Paulis with an overall sign. factors[k] labels
// qubit k+1: 0 = identity, 1..3 = x, y, z.
struct PauliString {
    int sign = 1;
    std::vector<int> factors;

    int support_size() const;
    // Dense 2^n x 2^n matrix (small n only; used by oracles and tests).
    Mat dense() const;
};

// Right-multiplies a by b (same qubit count), tracking the sign. Throws if
// the product picks up an imaginary phase.
PauliString pauli_string_product(const PauliString& a, const PauliString& b);

// (|0...0> + e^{i phi}|1...1>)/sqrt(2) and its biased variant
// sqrt(q)|0...0> + e^{i phi} sqrt(1-q)|1...1>.
PureState noon(int n_qubits);
PureState ghz_q(int n_qubits, double q, double phi = 0.0);

// Dicke state with m = 0 (even N).
PureState twin_fock(int n_qubits);

// (|N/2, 1> + |N/2, -1>)/sqrt(2) (even N).
PureState ps_state(int n_qubits);

// Many-qubit singlet built from permutations of |0101...>; even N <= 12.
PureState cabello_singlet(int n_qubits);

Graph linear_cluster(int n_vertices);           // path 1-2-...-N
Graph ring_cluster(int n_vertices);             // cycle, N >= 3
Graph grid_cluster(int rows, int cols);         // 4-neighbor grid, open boundaries
Graph star_graph(int n_vertices);               // vertex 1 connected to all others

// |G>: |+>^N with a CZ for every edge.
PureState graph_state(const Graph& g);

// Correlation operator K_v = sigma_x^(v) prod_{w in N(v)} sigma_z^(w).
PauliString graph_stabilizer(const Graph& g, int vertex);

// Reduced state of |G> over the listed qubits (|keep| <= 3), assembled from
// stabilizer products supported inside the kept set; no 2^N objects appear.
MixedState stabilizer_reduced_state(const Graph& g, const std::vector<int>& keep);

}  // namespace qfit
