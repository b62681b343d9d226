#include "qfit/statelib.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qfit/kernels.hpp"
#include "qfit/operators.hpp"

namespace qfit {

Graph::Graph(int n_vertices, std::vector<std::pair<int, int>> edges)
    : n_(n_vertices), edges_(std::move(edges)), adj_(static_cast<std::size_t>(std::max(n_vertices, 0))) {
    if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (auto& [a, b] : edges_) {
        if (a < 1 || a > n_ || b < 1 || b > n_) throw std::invalid_argument("graph edge out of range");
        if (a == b) throw std::invalid_argument("graph must not contain self-loops");
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) throw std::invalid_argument("graph must not contain duplicate edges");
    }
    std::sort(edges_.begin(), edges_.end());
    for (const auto& [a, b] : edges_) {
        adj_[static_cast<std::size_t>(a - 1)].push_back(b);
        adj_[static_cast<std::size_t>(b - 1)].push_back(a);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::adjacent(int a, int b) const {
    const auto& nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

int PauliString::support_size() const {
    int s = 0;
    for (int f : factors) s += f != 0;
    return s;
}

Mat PauliString::dense() const {
    Mat m = Mat::Constant(1, 1, static_cast<double>(sign));
    // Qubit 1 is the most significant bit, so its factor goes outermost.
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        const Mat2 p = pauli(*it);
        Mat next(m.rows() * 2, m.cols() * 2);
        next.topLeftCorner(m.rows(), m.cols()) = p(0, 0) * m;
        next.topRightCorner(m.rows(), m.cols()) = p(0, 1) * m;
        next.bottomLeftCorner(m.rows(), m.cols()) = p(1, 0) * m;
        next.bottomRightCorner(m.rows(), m.cols()) = p(1, 1) * m;
        m = std::move(next);
    }
    return m;
}

namespace {

// Single-qubit Pauli products: mult_table[a][b] = (phase exponent, label)
// with phase i^e, labels 0..3 = I, x, y, z.
struct PauliProd { int phase_pow4; int label; };

PauliProd mult_one(int a, int b) {
    if (a == 0) return {0, b};
    if (b == 0) return {0, a};
    if (a == b) return {0, 0};
    // x y = i z and cyclic; reversed order flips the sign.
    static constexpr int third[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    const bool forward = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
    return {forward ? 1 : 3, third[a][b]};
}

}  // namespace

PauliString pauli_string_product(const PauliString& a, const PauliString& b) {
    if (a.factors.size() != b.factors.size())
        throw std::invalid_argument("pauli_string_product: qubit count mismatch");
    PauliString out;
    out.factors.resize(a.factors.size());
    int phase = 0;  // exponent of i
    for (std::size_t k = 0; k < a.factors.size(); ++k) {
        const auto [p, label] = mult_one(a.factors[k], b.factors[k]);
        phase = (phase + p) % 4;
        out.factors[k] = label;
    }
    if (phase % 2 != 0)
        throw std::invalid_argument("pauli_string_product: product is not a signed Pauli string");
    out.sign = a.sign * b.sign * (phase == 0 ? 1 : -1);
    return out;
}

PureState noon(int n_qubits) { return ghz_q(n_qubits, 0.5, 0.0); }

PureState ghz_q(int n_qubits, double q, double phi) {
    if (n_qubits < 2) throw std::invalid_argument("ghz_q: needs at least two qubits");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("ghz_q: q must lie in [0, 1]");
    if (!std::isfinite(phi)) throw std::invalid_argument("ghz_q: phi must be finite");
    Vec amp = Vec::Zero(dim_of(n_qubits));
    amp[0] = std::sqrt(q);
    amp[amp.size() - 1] = std::exp(cxd(0, phi)) * std::sqrt(1.0 - q);
    return PureState(n_qubits, std::move(amp));
}

PureState twin_fock(int n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0)
        throw std::invalid_argument("twin_fock: needs an even number of qubits");
    return dicke_state(n_qubits, 0.0);
}

PureState ps_state(int n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0)
        throw std::invalid_argument("ps_state: needs an even number of qubits");
    const Vec up = dicke_state(n_qubits, 1.0).amplitudes();
    const Vec down = dicke_state(n_qubits, -1.0).amplitudes();
    Vec amp = (up + down) / std::numbers::sqrt2;
    return PureState(n_qubits, std::move(amp));
}

PureState cabello_singlet(int n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0)
        throw std::invalid_argument("cabello_singlet: needs an even number of qubits");
    if (n_qubits > 12) throw DimensionCapError("cabello_singlet: supported up to 12 qubits");
    const int half = n_qubits / 2;
    // Balanced bitstrings; the coefficient depends only on how many zeros
    // fall into the first half. Normalization is numeric; the closed-form
    // prefactor is checked by the tests instead of assumed here.
    Vec amp = Vec::Zero(dim_of(n_qubits));
    const std::uint64_t first_half_mask = ((std::uint64_t{1} << half) - 1) << half;
    for (std::int64_t b = 0; b < amp.size(); ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        if (std::popcount(ub) != half) continue;
        const int ones_first = std::popcount(ub & first_half_mask);
        const int z = half - ones_first;  // zeros among the first half
        double coeff = 1.0;
        for (int i = 2; i <= z; ++i) coeff *= i;
        for (int i = 2; i <= half - z; ++i) coeff *= i;
        if ((half - z) % 2 != 0) coeff = -coeff;
        amp[b] = coeff;
    }
    amp /= amp.norm();
    return PureState(n_qubits, std::move(amp));
}

Graph linear_cluster(int n_vertices) {
    if (n_vertices < 2) throw std::invalid_argument("linear_cluster: needs at least two vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n_vertices; ++i) e.push_back({i, i + 1});
    return Graph(n_vertices, std::move(e));
}

Graph ring_cluster(int n_vertices) {
    if (n_vertices < 3) throw std::invalid_argument("ring_cluster: needs at least three vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n_vertices; ++i) e.push_back({i, i + 1});
    e.push_back({1, n_vertices});
    return Graph(n_vertices, std::move(e));
}

Graph grid_cluster(int rows, int cols) {
    if (rows < 1 || cols < 1 || static_cast<std::int64_t>(rows) * cols < 2)
        throw std::invalid_argument("grid_cluster: needs at least two vertices");
    const auto id = [cols](int r, int c) { return (r - 1) * cols + c; };
    std::vector<std::pair<int, int>> e;
    for (int r = 1; r <= rows; ++r)
        for (int c = 1; c <= cols; ++c) {
            if (c < cols) e.push_back({id(r, c), id(r, c + 1)});
            if (r < rows) e.push_back({id(r, c), id(r + 1, c)});
        }
    return Graph(rows * cols, std::move(e));
}

Graph star_graph(int n_vertices) {
    if (n_vertices < 2) throw std::invalid_argument("star_graph: needs at least two vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 2; i <= n_vertices; ++i) e.push_back({1, i});
    return Graph(n_vertices, std::move(e));
}

PureState graph_state(const Graph& g) {
    const int n = g.n_vertices();
    if (n > config().limits.max_pure_qubits)
        throw DimensionCapError("graph_state: qubit cap exceeded");
    Vec amp = Vec::Constant(dim_of(n), 1.0 / std::sqrt(static_cast<double>(dim_of(n))));
    for (const auto& [a, b] : g.edges()) kernels::apply_cz(amp, n, a, b);
    return PureState(n, std::move(amp));
}

PauliString graph_stabilizer(const Graph& g, int vertex) {
    if (vertex < 1 || vertex > g.n_vertices())
        throw std::invalid_argument("graph_stabilizer: vertex out of range");
    PauliString s;
    s.factors.assign(static_cast<std::size_t>(g.n_vertices()), 0);
    s.factors[static_cast<std::size_t>(vertex - 1)] = 1;
    for (int w : g.neighbors(vertex)) s.factors[static_cast<std::size_t>(w - 1)] = 3;
    return s;
}

MixedState stabilizer_reduced_state(const Graph& g, const std::vector<int>& keep) {
    const int n = g.n_vertices();
    const int p = static_cast<int>(keep.size());
    if (p < 1 || p > 3) throw std::invalid_argument("stabilizer_reduced_state: keep 1 to 3 qubits");
    std::set<int> keep_set;
    for (int q : keep) {
        if (q < 1 || q > n) throw std::invalid_argument("stabilizer_reduced_state: qubit out of range");
        if (!keep_set.insert(q).second)
            throw std::invalid_argument("stabilizer_reduced_state: duplicate qubit index");
    }

    // Only products of at most |keep| correlation operators can survive the
    // trace, so enumerating subsets up to that size is exhaustive.
    const std::int64_t dk = dim_of(p);
    Mat red = Mat::Zero(dk, dk);
    PauliString identity;
    identity.factors.assign(static_cast<std::size_t>(n), 0);

    std::vector<int> subset;
    const auto add_if_supported = [&](const PauliString& s) {
        for (int q = 1; q <= n; ++q)
            if (!keep_set.count(q) && s.factors[static_cast<std::size_t>(q - 1)] != 0) return;
        PauliString restricted;
        restricted.sign = s.sign;
        for (int q : keep) restricted.factors.push_back(s.factors[static_cast<std::size_t>(q - 1)]);
        red += restricted.dense();
    };

    const auto enumerate = [&](auto&& self, int next, int remaining, const PauliString& acc) -> void {
        add_if_supported(acc);
        if (remaining == 0) return;
        for (int v = next; v <= n; ++v)
            self(self, v + 1, remaining - 1, pauli_string_product(acc, graph_stabilizer(g, v)));
    };
    enumerate(enumerate, 1, p, identity);

    red /= static_cast<double>(dk);
    return MixedState(p, std::move(red));
}

}  // namespace qfit
