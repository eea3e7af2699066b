// Experiment runner: loads model files, dispatches to the simulators, and
// emits machine-readable results (JSON/CSV, 17-significant-digit numbers).
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "lindsim/json_io.hpp"
#include "lindsim/stinespring.hpp"

using namespace lindsim;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

std::vector<long> parse_grid(const std::string& text) {
    std::vector<long> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stol(item));
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw validation_error("grid must be strictly ascending");
    if (grid.empty()) throw validation_error("grid must be non-empty");
    return grid;
}

QuantumChannel dispatch_class(const ClassSpec& cls, double t, long steps) {
    return std::visit(
        [&](const auto& s) -> QuantumChannel {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IdenticalCoordinateSpec>)
                return identical_coordinate_channel(s, t);
            else if constexpr (std::is_same_v<T, DiagonalSpec>)
                return d_sparse_diagonal_channel(s, t, steps > 0 ? steps : 64);
            else if constexpr (std::is_same_v<T, DenseDiagonalSpec>)
                return dense_diagonal_channel(s, t);
            else if constexpr (std::is_same_v<T, OneKetSparseSpec>)
                return one_ket_sparse_channel(s, t);
            else
                return sparse_op_evolution(s, t, steps > 0 ? steps : steps_for_accuracy(t, s.k, 1e-3));
        },
        cls);
}

int cmd_simulate(const std::string& model_path, double t, const std::string& method,
                 const std::string& pattern_path, long steps, const std::string& out_path) {
    ModelFile mf = load_model_file(model_path);
    Superoperator gen = mf.generator();
    QuantumChannel oracle = exact_channel(gen, t);

    QuantumChannel channel;
    if (method == "exact") {
        channel = oracle;
    } else if (method == "class") {
        if (!mf.is_class()) throw validation_error("method 'class' needs a class-spec model");
        channel = dispatch_class(std::get<ClassSpec>(mf.payload), t, steps);
    } else if (method == "stinespring-pipeline") {
        if (pattern_path.empty())
            throw validation_error("method 'stinespring-pipeline' needs --pattern");
        SparsityPattern pattern = load_pattern_file(pattern_path);
        GramMatrix gram = gram_of_channel(oracle, pattern);
        AncillaFamily fam = gram_vectors_full(gram);
        channel = channel_from_isometry(isometry_from_ancilla(pattern, fam));
    } else if (method == "trotter") {
        if (!mf.is_class() || !std::holds_alternative<DiagonalSpec>(std::get<ClassSpec>(mf.payload)))
            throw validation_error("method 'trotter' needs a diagonal class model");
        channel = d_sparse_diagonal_channel(std::get<DiagonalSpec>(std::get<ClassSpec>(mf.payload)),
                                            t, steps > 0 ? steps : 64);
    } else if (method == "short-time") {
        if (!mf.is_class() ||
            !std::holds_alternative<SparseLindbladOpSpec>(std::get<ClassSpec>(mf.payload)))
            throw validation_error("method 'short-time' needs a sparse_operator class model");
        const auto& spec = std::get<SparseLindbladOpSpec>(std::get<ClassSpec>(mf.payload));
        channel = sparse_op_evolution(spec, t, steps > 0 ? steps : steps_for_accuracy(t, spec.k, 1e-3));
    } else {
        throw validation_error("unknown method: " + method);
    }

    ChoiDistance err = choi_distance(channel, oracle);
    std::ostringstream os;
    os << "{\"generated\":\"" << timestamp() << "\",\n"
       << "\"method\":\"" << method << "\",\"t\":" << format_double(t) << ",\n"
       << "\"error_vs_exact\":{\"choi_lower\":" << format_double(err.lower)
       << ",\"choi_upper\":" << format_double(err.upper) << "},\n"
       << "\"channel\":" << channel_to_json(channel) << "}\n";
    write_text_file(out_path, os.str());
    std::cout << "simulate: method=" << method << " t=" << t
              << " choi_lower=" << format_double(err.lower)
              << " choi_upper=" << format_double(err.upper) << "\n";
    return 0;
}

int cmd_convergence(const std::string& model_path, double t, const std::string& method,
                    const std::string& grid_text, const std::string& out_path) {
    ModelFile mf = load_model_file(model_path);
    std::vector<long> grid = parse_grid(grid_text);
    std::ostringstream os;
    os << "# lindsim convergence generated=" << timestamp() << "\n";

    if (method == "trotter") {
        if (!mf.is_class() || !std::holds_alternative<DiagonalSpec>(std::get<ClassSpec>(mf.payload)))
            throw validation_error("convergence trotter needs a diagonal class model");
        const auto& spec = std::get<DiagonalSpec>(std::get<ClassSpec>(mf.payload));
        GeneratorList gens;
        for (const auto& piece : decompose_d_sparse(spec)) gens.generators.push_back(piece.generator());
        auto table = convergence_study(gens, t, grid);
        os << "r,error_lower,error_upper,wall_seconds\n";
        for (const auto& row : table.rows)
            os << row.r << "," << format_double(row.error_lower) << ","
               << format_double(row.error_upper) << "," << format_double(row.wall_seconds) << "\n";
        os << "# slope " << (table.slope_defined ? format_double(table.slope) : "undefined") << "\n";
        write_text_file(out_path, os.str());
        std::cout << "convergence: slope="
                  << (table.slope_defined ? format_double(table.slope) : "undefined") << "\n";
        return 0;
    }
    if (method == "short-time") {
        if (!mf.is_class() ||
            !std::holds_alternative<SparseLindbladOpSpec>(std::get<ClassSpec>(mf.payload)))
            throw validation_error("convergence short-time needs a sparse_operator class model");
        const auto& spec = std::get<SparseLindbladOpSpec>(std::get<ClassSpec>(mf.payload));
        QuantumChannel oracle = exact_channel(spec.generator(), t);
        os << "n,error_lower,error_upper,wall_seconds\n";
        std::vector<double> ns, lows;
        for (long n : grid) {
            const auto start = std::chrono::steady_clock::now();
            QuantumChannel approx = sparse_op_evolution(spec, t, n);
            ChoiDistance d = choi_distance(approx, oracle);
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            os << n << "," << format_double(d.lower) << "," << format_double(d.upper) << ","
               << format_double(wall) << "\n";
            ns.push_back(static_cast<double>(n));
            lows.push_back(d.lower);
        }
        double slope = 0.0;
        const bool ok = log_log_slope(ns, lows, slope);
        os << "# slope " << (ok ? format_double(slope) : "undefined") << "\n";
        write_text_file(out_path, os.str());
        std::cout << "convergence: slope=" << (ok ? format_double(slope) : "undefined") << "\n";
        return 0;
    }
    throw validation_error("convergence method must be trotter or short-time");
}

int cmd_decompose(const std::string& model_path, const std::string& out_path) {
    ModelFile mf = load_model_file(model_path);
    if (!mf.is_class() || !std::holds_alternative<DiagonalSpec>(std::get<ClassSpec>(mf.payload)))
        throw validation_error("decompose needs a diagonal class model");
    const auto& spec = std::get<DiagonalSpec>(std::get<ClassSpec>(mf.payload));
    auto pieces = decompose_d_sparse(spec);
    std::ostringstream os;
    os << "{\"pieces\":[";
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        if (i) os << ",";
        os << "{\"nu\":[";
        for (int x = 0; x < p.dim; ++x) os << (x ? "," : "") << p.nu[x];
        os << "],\"off\":[";
        for (int x = 0; x < p.dim; ++x) os << (x ? "," : "") << format_double(p.off[x]);
        os << "],\"diag\":[";
        for (int x = 0; x < p.dim; ++x) os << (x ? "," : "") << format_double(p.diag[x]);
        os << "]}";
    }
    os << "],\"count\":" << pieces.size() << "}\n";
    write_text_file(out_path, os.str());
    std::cout << "decompose: " << pieces.size() << " strongly 1-sparse pieces\n";
    return 0;
}

int cmd_verify_gram(const std::string& model_path, const std::string& pattern_path, double t,
                    const std::string& out_path) {
    ModelFile mf = load_model_file(model_path);
    SparsityPattern pattern = load_pattern_file(pattern_path);
    QuantumChannel oracle = exact_channel(mf.generator(), t);

    std::ostringstream os;
    os << "{\"generated\":\"" << timestamp() << "\",\"checks\":[";
    bool all_pass = true;
    bool first = true;
    auto emit = [&](const std::string& check, double err, bool pass) {
        if (!first) os << ",";
        first = false;
        os << "{\"check\":\"" << check << "\",\"max_error\":" << format_double(err)
           << ",\"pass\":" << (pass ? "true" : "false") << "}";
        all_pass = all_pass && pass;
    };

    GramMatrix gram = gram_of_channel(oracle, pattern);
    const double scale = std::max(gram.m.frobenius_norm(), 1e-300);
    auto spec = hermitian_eig(gram.m);
    emit("gram_psd", std::max(0.0, -spec.eigenvalues.front()),
         spec.eigenvalues.front() > -1e-9 * scale);
    const double tc = gram.trace_constraint_residual();
    emit("gram_trace_constraints", tc, tc < 1e-9);
    AncillaFamily fam = gram_vectors_full(gram);
    auto iso = isometry_from_ancilla(pattern, fam);
    emit("isometry", iso.isometry_defect(), iso.isometry_defect() < 1e-9);
    QuantumChannel back = channel_from_isometry(iso);
    const double rt = trace_norm(back.choi - oracle.choi);
    emit("pipeline_round_trip", rt, rt < 1e-8);
    double worst_two_stage = 0.0;
    bool two_ok = true;
    for (const auto& orbit : pattern.orbits()) {
        auto rep = verify_two_stage(iso, orbit.front());
        worst_two_stage = std::max(worst_two_stage, rep.max_error);
        two_ok = two_ok && rep.pass;
    }
    emit("two_stage", worst_two_stage, two_ok);
    os << "]}\n";
    write_text_file(out_path, os.str());
    std::cout << "verify-gram: " << (all_pass ? "all checks passed" : "CHECK FAILURES") << "\n";
    return all_pass ? 0 : kExitNumeric;
}

int cmd_walk(const std::string& graph_path, bool stationary, const std::string& t_grid,
             const std::string& out_path) {
    WalkSpec spec = load_graph_file(graph_path);
    Superoperator gen = stochastic_walk_generator(spec);
    if (stationary) {
        auto res = stationary_state(gen);
        std::ostringstream os;
        if (!res.unique) {
            os << "{\"unique\":false,\"nullspace_dim\":" << res.nullspace_dim << "}\n";
            write_text_file(out_path, os.str());
            std::cout << "walk: stationary state not unique (dim " << res.nullspace_dim << ")\n";
            return kExitNumeric;
        }
        os << "{\"unique\":true,\"residual\":" << format_double(res.residual)
           << ",\"rho\":" << matrix_to_json(res.rho) << "}\n";
        write_text_file(out_path, os.str());
        std::cout << "walk: stationary residual=" << format_double(res.residual) << "\n";
        return 0;
    }
    std::vector<double> ts;
    {
        std::stringstream ss(t_grid);
        std::string item;
        while (std::getline(ss, item, ',')) ts.push_back(std::stod(item));
        if (ts.empty()) throw validation_error("walk trajectory needs --grid t0,t1,...");
    }
    const int n = spec.vertices;
    ComplexMatrix rho0(n, n);
    rho0(0, 0) = 1.0;
    std::ostringstream os;
    os << "# lindsim walk trajectory generated=" << timestamp() << "\n";
    os << "t";
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) os << ",re_" << r << "_" << c << ",im_" << r << "_" << c;
    os << "\n";
    for (double t : ts) {
        ComplexMatrix rho = exact_channel(gen, t).apply(rho0);
        os << format_double(t);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                os << "," << format_double(rho(r, c).real()) << ","
                   << format_double(rho(r, c).imag());
        os << "\n";
    }
    write_text_file(out_path, os.str());
    std::cout << "walk: wrote " << ts.size() << " trajectory rows\n";
    return 0;
}

int cmd_nff(int n, const std::string& bits, unsigned seed, const std::string& out_path) {
    ParityInstance inst;
    inst.n = n;
    if (!bits.empty()) {
        if (static_cast<int>(bits.size()) != n)
            throw validation_error("nff: bit string length must equal N");
        for (char c : bits) {
            if (c != '0' && c != '1') throw validation_error("nff: bits must be 0/1");
            inst.s.push_back(c - '0');
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> bit(0, 1);
        inst.s.resize(n);
        for (auto& b : inst.s) b = bit(rng);
    }
    auto rep = parity_run(inst);
    auto tails = tail_bound_check({std::max(7, n)});

    std::ostringstream os;
    os << "{\"N\":" << rep.n << ",\"t\":" << format_double(rep.t) << ",\"s\":\"";
    for (int b : inst.s) os << b;
    os << "\",\"success_prob\":" << format_double(rep.success_prob)
       << ",\"readout\":" << rep.readout << ",\"parity\":" << rep.parity
       << ",\"queries\":" << rep.queries << ",\"tail\":{"
       << "\"N\":" << tails.rows[0].n << ",\"value\":" << format_double(tails.rows[0].tail)
       << ",\"within_bound\":" << (tails.rows[0].within_bound ? "true" : "false")
       << ",\"g13\":" << format_double(tails.g13) << "}}\n";
    write_text_file(out_path, os.str());
    std::cout << "nff: N=" << rep.n << " readout=" << rep.readout << " parity=" << rep.parity
              << " success=" << format_double(rep.success_prob) << " queries=" << rep.queries
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lindsim: sparse Lindbladian simulation experiments"};
    app.require_subcommand(1);

    std::string model, pattern, out = "result.json", method = "exact", grid, bits;
    double t = 1.0;
    long steps = 0;
    int n_chain = 7;
    unsigned seed = 0;
    bool stationary = false;

    auto* sim = app.add_subcommand("simulate", "simulate a model and compare to the exact oracle");
    sim->add_option("--model", model)->required();
    sim->add_option("--t", t);
    sim->add_option("--method", method);
    sim->add_option("--pattern", pattern);
    sim->add_option("--steps", steps);
    sim->add_option("--out", out);

    auto* conv = app.add_subcommand("convergence", "error-vs-grid study (CSV)");
    conv->add_option("--model", model)->required();
    conv->add_option("--t", t);
    conv->add_option("--method", method);
    conv->add_option("--grid", grid)->required();
    conv->add_option("--out", out);

    auto* dec = app.add_subcommand("decompose", "strongly 1-sparse pieces of a diagonal model");
    dec->add_option("--model", model)->required();
    dec->add_option("--out", out);

    auto* ver = app.add_subcommand("verify-gram", "Stinespring pipeline report");
    ver->add_option("--model", model)->required();
    ver->add_option("--pattern", pattern)->required();
    ver->add_option("--t", t);
    ver->add_option("--out", out);

    auto* walk = app.add_subcommand("walk", "quantum stochastic walk trajectory or stationary state");
    walk->add_option("--model", model)->required();
    walk->add_flag("--stationary", stationary);
    walk->add_option("--grid", grid);
    walk->add_option("--out", out);

    auto* nff = app.add_subcommand("nff", "no-fast-forwarding parity demonstration");
    nff->add_option("--N", n_chain);
    nff->add_option("--s", bits);
    nff->add_option("--seed", seed);
    nff->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(model, t, method, pattern, steps, out);
        if (conv->parsed()) return cmd_convergence(model, t, method, grid, out);
        if (dec->parsed()) return cmd_decompose(model, out);
        if (ver->parsed()) return cmd_verify_gram(model, pattern, t, out);
        if (walk->parsed()) return cmd_walk(model, stationary, grid, out);
        if (nff->parsed()) return cmd_nff(n_chain, bits, seed, out);
    } catch (const validation_error& err) {
        std::cerr << "validation error: " << err.what() << "\n";
        return kExitValidation;
    } catch (const numeric_error& err) {
        std::cerr << "numerical invariant failure: " << err.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
