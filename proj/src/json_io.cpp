#include "lindsim/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lindsim {

using nlohmann::json;

namespace {

ComplexMatrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw validation_error(std::string(what) + ": expected a non-empty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.at(0).size());
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto& row = j.at(r);
        if (static_cast<int>(row.size()) != cols)
            throw validation_error(std::string(what) + ": ragged rows");
        for (int c = 0; c < cols; ++c) {
            const auto& cell = row.at(c);
            if (cell.is_number()) {
                m(r, c) = cd(cell.get<double>(), 0.0);
            } else if (cell.is_array() && cell.size() == 2) {
                m(r, c) = cd(cell.at(0).get<double>(), cell.at(1).get<double>());
            } else {
                throw validation_error(std::string(what) +
                                       ": matrix entries must be numbers or [re,im] pairs");
            }
        }
    }
    return m;
}

std::vector<double> doubles_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw validation_error(std::string(what) + ": expected an array");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

std::vector<int> ints_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw validation_error(std::string(what) + ": expected an array");
    std::vector<int> out;
    for (const auto& v : j) out.push_back(v.get<int>());
    return out;
}

ClassSpec class_spec_from_json(const json& j) {
    const std::string cls = j.at("class").get<std::string>();
    const int dim = j.at("dim").get<int>();
    if (cls == "identical_coordinate") {
        IdenticalCoordinateSpec s;
        s.dim = dim;
        s.a = doubles_from_json(j.at("a"), "identical_coordinate.a");
        s.c = doubles_from_json(j.at("c"), "identical_coordinate.c");
        s.validate();
        return s;
    }
    if (cls == "diagonal") {
        DiagonalSpec s;
        s.dim = dim;
        s.d = j.at("d").get<int>();
        for (const auto& e : j.at("entries"))
            s.entries.push_back({e.at("k").get<int>(), e.at("l").get<int>(), e.at("value").get<double>()});
        s.validate();
        return s;
    }
    if (cls == "dense_diagonal") {
        DenseDiagonalSpec s;
        s.dim = dim;
        s.a = doubles_from_json(j.at("a"), "dense_diagonal.a");
        s.validate();
        if (j.contains("prefix_sums")) {
            // Optional supplied prefix sums P[k] = sum_{i<=k} a_i; must be
            // consistent with the entries.
            auto pre = doubles_from_json(j.at("prefix_sums"), "dense_diagonal.prefix_sums");
            if (static_cast<int>(pre.size()) != dim)
                throw validation_error("dense_diagonal.prefix_sums: length mismatch");
            double acc = 0.0;
            for (int k = 0; k < dim; ++k) {
                acc += s.a[k];
                if (std::abs(pre[k] - acc) > 1e-12 * std::max(1.0, acc))
                    throw validation_error("dense_diagonal.prefix_sums: inconsistent with entries");
            }
        }
        return s;
    }
    if (cls == "one_ket_sparse") {
        OneKetSparseSpec s;
        s.dim = dim;
        s.nu = ints_from_json(j.at("nu"), "one_ket_sparse.nu");
        s.a = doubles_from_json(j.at("a"), "one_ket_sparse.a");
        s.aprime = doubles_from_json(j.at("aprime"), "one_ket_sparse.aprime");
        s.b = doubles_from_json(j.at("b"), "one_ket_sparse.b");
        s.validate();
        return s;
    }
    if (cls == "sparse_operator") {
        const int k = j.at("k").get<int>();
        ComplexMatrix op = matrix_from_json(j.at("op"), "sparse_operator.op");
        if (op.rows() != dim || op.cols() != dim)
            throw validation_error("sparse_operator.op: shape mismatch");
        return permutation_cover(op, k);
    }
    throw validation_error("unknown class: " + cls);
}

} // namespace

ModelFile parse_model_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("model JSON parse error: ") + err.what());
    }
    ModelFile mf;
    if (j.contains("class")) {
        mf.payload = class_spec_from_json(j);
        return mf;
    }
    const int dim = j.at("dim").get<int>();
    const bool has_ops = j.contains("lindblad_ops");
    const bool has_gks = j.contains("gks_entries");
    if (has_ops == has_gks)
        throw validation_error("model JSON: exactly one of lindblad_ops / gks_entries required");
    if (has_ops) {
        LindbladModel m;
        m.dim = dim;
        if (j.contains("hamiltonian")) m.hamiltonian = matrix_from_json(j.at("hamiltonian"), "hamiltonian");
        for (const auto& op : j.at("lindblad_ops")) {
            ComplexMatrix l = matrix_from_json(op, "lindblad_op");
            if (l.rows() != dim || l.cols() != dim)
                throw validation_error("lindblad_op: shape mismatch");
            m.lindblad_ops.push_back(std::move(l));
        }
        m.validate();
        mf.payload = std::move(m);
        return mf;
    }
    OvercompleteGKS g;
    g.dim = dim;
    if (j.contains("hamiltonian")) g.hamiltonian = matrix_from_json(j.at("hamiltonian"), "hamiltonian");
    for (const auto& e : j.at("gks_entries")) {
        GksEntry entry;
        entry.k = e.at("k").get<int>();
        entry.l = e.at("l").get<int>();
        entry.kp = e.at("kp").get<int>();
        entry.lp = e.at("lp").get<int>();
        entry.value = cd(e.at("re").get<double>(),
                         e.contains("im") ? e.at("im").get<double>() : 0.0);
        g.entries.push_back(entry);
    }
    g.validate();
    mf.payload = std::move(g);
    return mf;
}

Superoperator ModelFile::generator() const {
    if (std::holds_alternative<LindbladModel>(payload))
        return liouvillian(std::get<LindbladModel>(payload));
    if (std::holds_alternative<OvercompleteGKS>(payload))
        return liouvillian(std::get<OvercompleteGKS>(payload));
    const auto& cls = std::get<ClassSpec>(payload);
    return std::visit(
        [](const auto& s) -> Superoperator {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IdenticalCoordinateSpec>)
                return liouvillian(s.gks());
            else
                return s.generator();
        },
        cls);
}

int ModelFile::dim() const {
    if (std::holds_alternative<LindbladModel>(payload)) return std::get<LindbladModel>(payload).dim;
    if (std::holds_alternative<OvercompleteGKS>(payload)) return std::get<OvercompleteGKS>(payload).dim;
    return std::visit([](const auto& s) { return s.dim; }, std::get<ClassSpec>(payload));
}

ModelFile load_model_file(const std::string& path) {
    return parse_model_json(read_text_file(path));
}

SparsityPattern load_pattern_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("pattern JSON parse error: ") + err.what());
    }
    const int dim = j.at("dim").get<int>();
    std::vector<std::vector<int>> orbits;
    for (const auto& o : j.at("orbits")) orbits.push_back(ints_from_json(o, "pattern orbit"));
    return pattern_from_sets(dim, orbits);
}

WalkSpec load_graph_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("graph JSON parse error: ") + err.what());
    }
    WalkSpec spec;
    spec.vertices = j.at("vertices").get<int>();
    const std::string h = j.value("hamiltonian", std::string("none"));
    if (h == "laplacian")
        spec.hamiltonian = WalkHamiltonian::Laplacian;
    else if (h == "adjacency")
        spec.hamiltonian = WalkHamiltonian::Adjacency;
    else if (h == "none")
        spec.hamiltonian = WalkHamiltonian::None;
    else
        throw validation_error("graph JSON: unknown hamiltonian choice " + h);
    spec.hamiltonian_weight = j.value("hamiltonian_weight", 1.0);

    const bool unweighted = j.value("unweighted_random_walk", false);
    if (unweighted) {
        std::vector<std::pair<int, int>> und;
        for (const auto& e : j.at("edges")) und.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        WalkSpec built = unweighted_walk(spec.vertices, und, spec.hamiltonian);
        built.hamiltonian_weight = spec.hamiltonian_weight;
        built.validate();
        return built;
    }
    for (const auto& e : j.at("edges")) {
        if (e.size() != 3) throw validation_error("graph JSON: edges must be [u,v,w] triples");
        spec.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    spec.validate();
    return spec;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string matrix_to_json(const ComplexMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < m.rows(); ++r) {
        if (r) os << ",";
        os << "[";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) os << ",";
            os << "[" << format_double(m(r, c).real()) << "," << format_double(m(r, c).imag()) << "]";
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string channel_to_json(const QuantumChannel& e) {
    std::ostringstream os;
    os << "{\"dim_in\":" << e.dim_in << ",\"dim_out\":" << e.dim_out
       << ",\"choi\":" << matrix_to_json(e.choi) << "}";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw validation_error("cannot open for writing: " + path);
    f << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace lindsim
