#include "qfit/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qfit/classify.hpp"
#include "qfit/covariance.hpp"
#include "qfit/fisher.hpp"
#include "qfit/oracle.hpp"

namespace qfit {

namespace {

std::string fmt_double(double x, int prec) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

bool primitives_only(const json& a) {
    for (const auto& e : a) {
        if (e.is_structured()) return false;
    }
    return true;
}

// Deterministic writer: objects one key per line, arrays of primitives
// inline, reals at the requested precision. indent < 0 collapses everything
// onto a single line.
void write_value(const json& j, std::string& out, int prec, int indent, int depth) {
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        const bool flat = indent < 0;
        out += flat ? "{" : "{\n";
        bool first = true;
        for (const auto& it : j.items()) {
            if (!first) out += flat ? ", " : ",\n";
            first = false;
            if (!flat) out.append(static_cast<std::size_t>((depth + 1) * indent), ' ');
            out += json(it.key()).dump();
            out += ": ";
            write_value(it.value(), out, prec, indent, depth + 1);
        }
        if (!flat) {
            out += '\n';
            out.append(static_cast<std::size_t>(depth * indent), ' ');
        }
        out += '}';
    } else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        if (indent < 0 || primitives_only(j)) {
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += ", ";
                first = false;
                write_value(e, out, prec, -1, depth);
            }
            out += ']';
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += ",\n";
            first = false;
            out.append(static_cast<std::size_t>((depth + 1) * indent), ' ');
            write_value(e, out, prec, indent, depth + 1);
        }
        out += '\n';
        out.append(static_cast<std::size_t>(depth * indent), ' ');
        out += ']';
    } else if (j.is_string()) {
        out += j.dump();
    } else if (j.is_boolean()) {
        out += j.get<bool>() ? "true" : "false";
    } else if (j.is_number_float()) {
        out += fmt_double(j.get<double>(), prec);
    } else if (j.is_number_unsigned()) {
        out += std::to_string(j.get<std::uint64_t>());
    } else if (j.is_number_integer()) {
        out += std::to_string(j.get<std::int64_t>());
    } else {
        out += "null";
    }
}

int require_int(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("spec: ") + key + " must be an integer");
    return v.get<int>();
}

double require_real(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string("spec: ") + key + " must be a number");
    return v.get<double>();
}

json vec3_json(const Vec3& v) {
    return json::array({v.x(), v.y(), v.z()});
}

json assignment_json(const DirectionAssignment& a) {
    json out = json::array();
    for (const auto& d : a.dirs) out.push_back(vec3_json(d));
    return out;
}

json edges_json(const Graph& g) {
    json out = json::array();
    for (const auto& e : g.edges()) out.push_back(json::array({e.first, e.second}));
    return out;
}

}  // namespace

StateSpec StateSpec::parse(const json& j) {
    try {
        if (!j.is_object()) throw std::invalid_argument("state spec must be a JSON object");
        StateSpec s;
        s.kind = j.at("kind").get<std::string>();
        const bool needs_n = s.kind != "grid_cluster";
        if (needs_n) s.n = require_int(j, "n");
        if (s.kind == "noon" || s.kind == "twin_fock" || s.kind == "ps" || s.kind == "singlet" ||
            s.kind == "linear_cluster" || s.kind == "ring_cluster" || s.kind == "star") {
            // no further parameters
        } else if (s.kind == "ghz_q") {
            s.q = require_real(j, "q");
            if (j.contains("phi")) s.phi = require_real(j, "phi");
        } else if (s.kind == "dicke") {
            s.m = require_real(j, "m");
        } else if (s.kind == "graph") {
            const json& ed = j.at("edges");
            if (!ed.is_array()) throw std::invalid_argument("spec: edges must be an array");
            for (const auto& e : ed) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                    throw std::invalid_argument("spec: each edge must be a pair of integers");
                s.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        } else if (s.kind == "grid_cluster") {
            s.rows = require_int(j, "rows");
            s.cols = require_int(j, "cols");
            if (j.contains("n") && require_int(j, "n") != s.rows * s.cols)
                throw std::invalid_argument("spec: n must equal rows*cols for grid_cluster");
            s.n = s.rows * s.cols;
        } else if (s.kind == "amplitudes") {
            const json& arr = j.at("amplitudes");
            if (!arr.is_array()) throw std::invalid_argument("spec: amplitudes must be an array");
            s.amplitudes.resize(static_cast<Eigen::Index>(arr.size()));
            Eigen::Index i = 0;
            for (const auto& e : arr) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                    throw std::invalid_argument("spec: each amplitude must be a [re, im] pair");
                s.amplitudes[i++] = cxd(e[0].get<double>(), e[1].get<double>());
            }
        } else {
            throw std::invalid_argument("spec: unknown kind '" + s.kind + "'");
        }
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid state spec: ") + e.what());
    }
}

StateSpec StateSpec::load(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    std::string text;
    if (first != std::string::npos && arg[first] == '{') {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot read spec file: " + arg);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return parse(json::parse(text));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid state spec: ") + e.what());
    }
}

PureState StateSpec::build() const {
    if (kind == "noon") return noon(n);
    if (kind == "ghz_q") return ghz_q(n, q, phi);
    if (kind == "twin_fock") return twin_fock(n);
    if (kind == "ps") return ps_state(n);
    if (kind == "dicke") return dicke_state(n, m);
    if (kind == "singlet") return cabello_singlet(n);
    if (kind == "amplitudes") {
        const double nrm = amplitudes.norm();
        if (std::abs(nrm - 1.0) > 1e-6)
            throw std::invalid_argument("spec: amplitude norm deviates from 1 by more than 1e-6");
        return PureState(n, amplitudes / nrm);
    }
    const auto g = graph();
    if (!g) throw std::invalid_argument("spec: unknown kind '" + kind + "'");
    return graph_state(*g);
}

std::optional<Graph> StateSpec::graph() const {
    if (kind == "graph") return Graph(n, edges);
    if (kind == "linear_cluster") return linear_cluster(n);
    if (kind == "ring_cluster") return ring_cluster(n);
    if (kind == "grid_cluster") return grid_cluster(rows, cols);
    if (kind == "star") return star_graph(n);
    return std::nullopt;
}

json StateSpec::echo() const {
    json e;
    e["kind"] = kind;
    if (kind == "grid_cluster") {
        e["rows"] = rows;
        e["cols"] = cols;
    }
    e["n"] = n;
    if (kind == "ghz_q") {
        e["q"] = q;
        e["phi"] = phi;
    } else if (kind == "dicke") {
        e["m"] = m;
    } else if (kind == "graph") {
        e["edges"] = edges_json(Graph(n, edges));
    } else if (kind == "amplitudes") {
        const double nrm = amplitudes.norm();
        json arr = json::array();
        for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
            const cxd a = amplitudes[i] / nrm;
            arr.push_back(json::array({a.real(), a.imag()}));
        }
        e["amplitudes"] = std::move(arr);
    }
    return e;
}

json analyze_report(const StateSpec& spec, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
    const PureState psi = spec.build();
    const int n = psi.n_qubits();
    const bool symmetric = is_symmetric(psi);
    const bool entangled = is_pure_entangled(psi);
    const auto gc = gamma_c(psi);
    const auto clu = best_clu(gc);
    const auto gr = gamma_r(psi);
    const auto lu = lu_optimize(gr, restarts, seed);

    UsefulnessVerdict v;
    if (symmetric && entangled) {
        v = classify_symmetric(psi);
    } else {
        v.fq_clu = clu.fq;
        v.fq_lu = lu.best_value;
        v.optimal_direction = clu.direction;
        v.direction_degenerate = clu.degenerate;
        v.useful_clu = entangled && clu.fq - n > config().tol.predicate;
        v.useful_lu = entangled && lu.best_value - n > config().tol.predicate;
        v.boundary = std::abs(lu.best_value - n) <= config().tol.predicate;
    }

    json r;
    r["tool"] = "qfit";
    r["version"] = kVersion;
    r["seed"] = seed;
    r["restarts"] = restarts;
    r["spec"] = spec.echo();
    r["n_qubits"] = n;
    r["symmetric"] = symmetric;
    r["entangled"] = entangled;
    json gcj = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int k = 0; k < 3; ++k) row.push_back(gc.m(i, k));
        gcj.push_back(std::move(row));
    }
    r["gamma_c"] = std::move(gcj);
    r["clu"] = json{{"fq", clu.fq},
                    {"direction", vec3_json(clu.direction.vec())},
                    {"degenerate", clu.degenerate}};
    r["lu"] = json{{"upper", lu.upper_bound},
                   {"lower", lu.best_value},
                   {"certified", lu.certified},
                   {"assignment", assignment_json(lu.assignment)}};
    json fam;
    if (v.family) {
        fam = json{{"kind", "ghz_q"}, {"q", v.family->q}, {"phi", v.family->phi}};
    }
    r["verdict"] = json{{"useful_clu", v.useful_clu},
                        {"useful_lu", v.useful_lu},
                        {"fq_clu", v.fq_clu},
                        {"fq_lu", v.fq_lu},
                        {"optimal_direction", vec3_json(v.optimal_direction.vec())},
                        {"direction_degenerate", v.direction_degenerate},
                        {"boundary", v.boundary},
                        {"family", std::move(fam)}};
    // Phase references at m = 1, with the Heisenberg value under both the
    // fixed-shots and the total-resource reading (they coincide at m = 1).
    r["reference"] = json{{"shot_noise_fq", static_cast<double>(n)},
                          {"heisenberg_fq", static_cast<double>(n) * n},
                          {"shot_noise_phase", shot_noise_limit(n)},
                          {"heisenberg_phase_fixed_shots", heisenberg_limit(1, n)},
                          {"heisenberg_phase_total_resource", 1.0 / n}};
    return r;
}

std::string dump_report(const json& j) {
    std::string out;
    write_value(j, out, 17, 2, 0);
    out += '\n';
    return out;
}

std::string render_table(const json& report) {
    std::string out;
    auto cell = [](const json& v) {
        std::string s;
        write_value(v, s, 12, -1, 0);
        return s;
    };
    auto row = [&](const std::string& key, const std::string& val) {
        out += key;
        if (key.size() < 28) out.append(28 - key.size(), ' ');
        out += val;
        out += '\n';
    };
    row("state", cell(report.at("spec")));
    row("n_qubits", cell(report.at("n_qubits")));
    row("symmetric", cell(report.at("symmetric")));
    row("entangled", cell(report.at("entangled")));
    const json& clu = report.at("clu");
    row("fq_clu", cell(clu.at("fq")));
    row("clu_direction", cell(clu.at("direction")));
    row("clu_degenerate", cell(clu.at("degenerate")));
    const json& lu = report.at("lu");
    row("lu_upper", cell(lu.at("upper")));
    row("lu_lower", cell(lu.at("lower")));
    row("lu_certified", cell(lu.at("certified")));
    row("lu_assignment", cell(lu.at("assignment")));
    const json& v = report.at("verdict");
    row("useful_clu", cell(v.at("useful_clu")));
    row("useful_lu", cell(v.at("useful_lu")));
    row("boundary", cell(v.at("boundary")));
    row("family", v.at("family").is_null() ? "none" : cell(v.at("family")));
    const json& ref = report.at("reference");
    row("shot_noise_fq", cell(ref.at("shot_noise_fq")));
    row("heisenberg_fq", cell(ref.at("heisenberg_fq")));
    return out;
}

void run_sweep(std::ostream& out, const std::string& family, int n_qubits, double from, double to,
               int steps, int restarts, std::uint64_t seed) {
    if (family != "ghz_q") throw std::invalid_argument("sweep: only the ghz_q family is supported");
    if (!(from >= 0.0 && from < to && to <= 1.0))
        throw std::invalid_argument("sweep: need 0 <= from < to <= 1");
    if (steps < 2) throw std::invalid_argument("sweep: need at least 2 steps");
    out << "q,fq_clu,fq_lu_lower,fq_lu_upper,useful\n";
    for (int i = 0; i < steps; ++i) {
        const double q = from + (to - from) * i / (steps - 1);
        const PureState psi = ghz_q(n_qubits, q);
        const auto clu = best_clu(gamma_c(psi));
        const auto lu = lu_optimize(gamma_r(psi), restarts, seed);
        out << fmt_double(q, 17) << ',' << fmt_double(clu.fq, 17) << ','
            << fmt_double(lu.best_value, 17) << ',' << fmt_double(lu.upper_bound, 17) << ','
            << (ghz_q_useful(n_qubits, q) ? "true" : "false") << '\n';
    }
    if (!out) throw OutputPathError("sweep: failed to write output");
}

OracleOutcome run_oracle(const StateSpec& spec, const std::string& check, double resolution_deg,
                         int restarts, std::uint64_t seed) {
    std::string text;
    bool pass = false;
    if (check == "grid_lu") {
        const PureState psi = spec.build();
        const auto cov = gamma_r(psi);
        const auto lib = lu_optimize(cov, restarts, seed);
        const auto oracle = grid_lu_search(cov, resolution_deg);
        const double gap = std::abs(lib.best_value - oracle.value);
        pass = gap <= 1e-4;
        text += "check: grid_lu\n";
        text += "resolution_deg: " + fmt_double(oracle.resolution_deg, 17) + "\n";
        text += "oracle_value: " + fmt_double(oracle.value, 17) + "\n";
        text += "library_value: " + fmt_double(lib.best_value, 17) + "\n";
        text += "gap: " + fmt_double(gap, 17) + "\n";
        text += "tolerance: 0.0001\n";
    } else if (check == "dense_reduction" || check == "stabilizer_sum") {
        const auto g = spec.graph();
        if (!g) throw std::invalid_argument("oracle: check '" + check + "' needs a graph-backed spec");
        double gap;
        text += "check: " + check + "\n";
        if (check == "dense_reduction") {
            gap = dense_reduction_gap(*g);
            text += "compares: stabilizer subset reductions vs dense partial traces (1- and 2-qubit)\n";
        } else {
            gap = stabilizer_sum_gap(*g);
            text += "compares: normalized stabilizer sum vs graph state projector\n";
        }
        pass = gap <= 1e-10;
        text += "max_entry_gap: " + fmt_double(gap, 17) + "\n";
        text += "tolerance: 1e-10\n";
    } else {
        throw std::invalid_argument("oracle: unknown check '" + check + "'");
    }
    text += pass ? "result: PASS\n" : "result: FAIL\n";
    return {std::move(text), pass};
}

namespace {

bool type_matches(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "number") return v.is_number();
    return false;
}

bool validate_at(const json& v, const json& s, const std::string& path, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = path + ": " + msg;
        return false;
    };
    if (s.contains("type")) {
        const json& t = s.at("type");
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(v, t.get<std::string>());
        } else {
            for (const auto& e : t) ok = ok || type_matches(v, e.get<std::string>());
        }
        if (!ok) return fail("type mismatch");
    }
    if (s.contains("enum")) {
        bool ok = false;
        for (const auto& e : s.at("enum")) ok = ok || (v == e);
        if (!ok) return fail("value not in enum");
    }
    if (s.contains("const") && v != s.at("const")) return fail("value differs from const");
    if (v.is_object()) {
        if (s.contains("required")) {
            for (const auto& r : s.at("required")) {
                if (!v.contains(r.get<std::string>())) return fail("missing key " + r.get<std::string>());
            }
        }
        const json* props = s.contains("properties") ? &s.at("properties") : nullptr;
        for (const auto& it : v.items()) {
            if (props && props->contains(it.key())) {
                if (!validate_at(it.value(), props->at(it.key()), path + "/" + it.key(), why)) return false;
            } else if (s.contains("additionalProperties")) {
                const json& ap = s.at("additionalProperties");
                if (ap.is_boolean() && !ap.get<bool>()) return fail("unexpected key " + it.key());
                if (ap.is_object() && !validate_at(it.value(), ap, path + "/" + it.key(), why)) return false;
            }
        }
    }
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s.at("minItems").get<std::size_t>())
            return fail("too few items");
        if (s.contains("maxItems") && v.size() > s.at("maxItems").get<std::size_t>())
            return fail("too many items");
        if (s.contains("items") && s.at("items").is_object()) {
            std::size_t i = 0;
            for (const auto& e : v) {
                if (!validate_at(e, s.at("items"), path + "/" + std::to_string(i), why)) return false;
                ++i;
            }
        }
    }
    return true;
}

}  // namespace

bool validate_schema(const json& value, const json& schema, std::string* why) {
    return validate_at(value, schema, "$", why);
}

}  // namespace qfit
