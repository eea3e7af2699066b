#include "lindsim/sparse_classes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>

namespace lindsim {

namespace {

void check_cross(const QuantumChannel& closed_form, const SparseStinespringIsometry& iso,
                 const char* who, double tol = 1e-9) {
    QuantumChannel via_iso = channel_from_isometry(iso);
    const double dev = (closed_form.choi - via_iso.choi).max_abs();
    if (dev > tol)
        throw numeric_error(std::string(who) + ": closed form and isometry path disagree by " +
                            std::to_string(dev));
}

std::vector<cd> basis_vec(int dim, int idx, cd amp) {
    std::vector<cd> v(dim, cd(0.0, 0.0));
    v[idx] = amp;
    return v;
}

} // namespace

// ---------------- identical-coordinate ----------------

void IdenticalCoordinateSpec::validate() const {
    if (dim <= 0 || static_cast<int>(a.size()) != dim || static_cast<int>(c.size()) != dim)
        throw validation_error("IdenticalCoordinateSpec: shape mismatch");
    for (int i = 0; i < dim; ++i)
        if (a[i] < 0) throw validation_error("IdenticalCoordinateSpec: a must be nonnegative");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (std::abs(c[i] + c[j]) > std::sqrt(a[i] * a[j]) + 1e-12)
                throw validation_error("IdenticalCoordinateSpec: |c_i + c_j| <= sqrt(a_i a_j) violated");
}

OvercompleteGKS IdenticalCoordinateSpec::gks() const {
    OvercompleteGKS g;
    g.dim = dim;
    for (int i = 0; i < dim; ++i) {
        if (a[i] != 0.0) g.entries.push_back({i, i, i, i, a[i]});
        for (int j = i + 1; j < dim; ++j)
            if (c[i] + c[j] != 0.0) g.entries.push_back({i, i, j, j, c[i] + c[j]});
    }
    return g;
}

double IdenticalCoordinateSpec::min_core_eigenvalue() const {
    ComplexMatrix core(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) core(i, j) = (i == j) ? a[i] : c[i] + c[j];
    return hermitian_eig(core).eigenvalues.front();
}

SparseStinespringIsometry identical_coordinate_isometry(const IdenticalCoordinateSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    AncillaFamily fam;
    fam.dim = n;
    fam.d = 1;
    fam.anc_dim = n + 2;
    fam.phi.resize(n);
    // |phi_x> = b_{x,t}|0...0,0> + sqrt(1-b^2)|x,1> with b = e^{-(a_x-2c_x)t},
    // so <phi_x|phi_y> = b_x b_y reproduces the coherence decay.
    for (int x = 0; x < n; ++x) {
        const double b = std::exp(-(spec.a[x] - 2.0 * spec.c[x]) * t);
        fam.phi[x] = basis_vec(fam.anc_dim, 0, b);
        fam.phi[x][1 + x] += std::sqrt(std::max(1.0 - b * b, 0.0));
    }
    return isometry_from_ancilla(singleton_pattern(n), fam);
}

QuantumChannel identical_coordinate_channel(const IdenticalCoordinateSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    QuantumChannel e;
    e.dim_in = n;
    e.dim_out = n;
    e.choi = ComplexMatrix(n * n, n * n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            double f = 1.0;
            if (u != v) f = std::exp(-(spec.a[u] + spec.a[v] - 2.0 * (spec.c[u] + spec.c[v])) * t);
            e.choi(u * n + u, v * n + v) = f;
        }
    check_cross(e, identical_coordinate_isometry(spec, t), "identical_coordinate_channel");
    return e;
}

// ---------------- strongly 1-sparse diagonal ----------------

void Strongly1SparseSpec::validate() const {
    if (dim <= 0 || static_cast<int>(nu.size()) != dim || static_cast<int>(off.size()) != dim ||
        static_cast<int>(diag.size()) != dim)
        throw validation_error("Strongly1SparseSpec: shape mismatch");
    for (int x = 0; x < dim; ++x) {
        if (nu[x] < 0 || nu[x] >= dim || nu[nu[x]] != x)
            throw validation_error("Strongly1SparseSpec: nu is not an involution");
        if (off[x] < 0 || diag[x] < 0)
            throw validation_error("Strongly1SparseSpec: rates must be nonnegative");
        if (nu[x] == x && off[x] != 0.0)
            throw validation_error("Strongly1SparseSpec: fixed points carry only diagonal rates");
    }
}

OvercompleteGKS Strongly1SparseSpec::gks() const {
    OvercompleteGKS g;
    g.dim = dim;
    for (int x = 0; x < dim; ++x) {
        if (off[x] != 0.0) g.entries.push_back({nu[x], x, nu[x], x, off[x]});
        if (diag[x] != 0.0) g.entries.push_back({x, x, x, x, diag[x]});
    }
    return g;
}

Superoperator Strongly1SparseSpec::generator() const {
    validate();
    return liouvillian(gks());
}

namespace {

struct S1sCoeffs {
    double stay;  // a_{x,nu(x)}/Sg + a_{nu(x),x}/Sg * e^{-2 Sg t}
    double hop;   // a_{nu(x),x}/Sg * (1 - e^{-2 Sg t})
    double b;     // e^{-(a_{nu(x),x} + a_{x,x}) t}
    double c;     // sqrt(stay - b^2)
    double ahop;  // sqrt(hop)
};

S1sCoeffs s1s_coeffs(const Strongly1SparseSpec& spec, int x, double t) {
    S1sCoeffs o{};
    const double fwd = spec.off[x];                      // a_{nu(x),x}
    const double bwd = (spec.nu[x] == x) ? 0.0 : spec.off[spec.nu[x]];  // a_{x,nu(x)}
    const double sg = fwd + bwd;
    if (sg > 0.0) {
        const double decay = std::exp(-2.0 * sg * t);
        o.stay = bwd / sg + (fwd / sg) * decay;
        o.hop = (fwd / sg) * (1.0 - decay);
    } else {
        // Both hop rates vanish: the orbit populations are frozen.
        o.stay = 1.0;
        o.hop = 0.0;
    }
    o.b = std::exp(-(fwd + spec.diag[x]) * t);
    o.c = std::sqrt(std::max(o.stay - o.b * o.b, 0.0));
    o.ahop = std::sqrt(std::max(o.hop, 0.0));
    return o;
}

SparsityPattern involution_pattern(int dim, const std::vector<int>& nu) {
    SparsityPattern p;
    p.dim = dim;
    p.nu = nu;
    p.order.resize(dim);
    p.d = 1;
    for (int x = 0; x < dim; ++x) {
        p.order[x] = (nu[x] == x) ? 1 : 2;
        p.d = std::max(p.d, p.order[x]);
    }
    return p;
}

} // namespace

SparseStinespringIsometry strongly_1sparse_isometry(const Strongly1SparseSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    SparsityPattern pattern = involution_pattern(n, spec.nu);
    AncillaFamily fam;
    fam.dim = n;
    fam.d = pattern.d;
    fam.anc_dim = 2 * n + 2;
    fam.phi.assign(static_cast<size_t>(n) * fam.d, std::vector<cd>(fam.anc_dim, cd(0.0, 0.0)));
    // Flat encoding of the (n+2)-qubit ancilla states:
    //   index 0       <-> |0...0,1,0>
    //   index 1+x     <-> |x,1,1>
    //   index 1+N+x   <-> |x,0,0>
    for (int x = 0; x < n; ++x) {
        const auto co = s1s_coeffs(spec, x, t);
        auto& stay = fam.at(x, 0);
        stay[0] = co.b;
        stay[1 + x] = co.c;
        if (pattern.order[x] == 2) fam.at(x, 1)[1 + n + x] = co.ahop;
    }
    return isometry_from_ancilla(pattern, fam);
}

QuantumChannel strongly_1sparse_channel(const Strongly1SparseSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    QuantumChannel e;
    e.dim_in = n;
    e.dim_out = n;
    e.choi = ComplexMatrix(n * n, n * n);
    auto rate = [&](int u) { return spec.off[u] + spec.diag[u]; };
    for (int x = 0; x < n; ++x) {
        const auto co = s1s_coeffs(spec, x, t);
        e.choi(x * n + x, x * n + x) += co.stay;
        if (spec.nu[x] != x) e.choi(spec.nu[x] * n + x, spec.nu[x] * n + x) += co.hop;
        else e.choi(x * n + x, x * n + x) += co.hop;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            e.choi(x * n + x, y * n + y) = std::exp(-(rate(x) + rate(y)) * t);
        }
    check_cross(e, strongly_1sparse_isometry(spec, t), "strongly_1sparse_channel");
    return e;
}

// ---------------- d-sparse diagonal ----------------

void DiagonalSpec::validate() const {
    if (dim <= 0 || d < 0) throw validation_error("DiagonalSpec: bad shape");
    std::vector<int> row_nnz(dim, 0), col_nnz(dim, 0);
    std::map<std::pair<int, int>, int> seen;
    for (const auto& e : entries) {
        if (e.k < 0 || e.k >= dim || e.l < 0 || e.l >= dim)
            throw validation_error("DiagonalSpec: index out of range");
        if (e.value < 0) throw validation_error("DiagonalSpec: entries must be nonnegative");
        if (e.value == 0.0) continue;
        if (seen.count({e.k, e.l})) throw validation_error("DiagonalSpec: duplicate entry");
        seen[{e.k, e.l}] = 1;
        row_nnz[e.k]++;
        col_nnz[e.l]++;
    }
    for (int i = 0; i < dim; ++i)
        if (row_nnz[i] > d || col_nnz[i] > d)
            throw validation_error("DiagonalSpec: sparsity bound d violated");
}

ComplexMatrix DiagonalSpec::dense() const {
    ComplexMatrix m(dim, dim);
    for (const auto& e : entries) m(e.k, e.l) += e.value;
    return m;
}

Superoperator DiagonalSpec::generator() const {
    validate();
    OvercompleteGKS g;
    g.dim = dim;
    for (const auto& e : entries)
        if (e.value != 0.0) g.entries.push_back({e.k, e.l, e.k, e.l, e.value});
    return liouvillian(g);
}

std::vector<Strongly1SparseSpec> decompose_d_sparse(const DiagonalSpec& spec) {
    spec.validate();
    const int n = spec.dim;

    std::vector<Strongly1SparseSpec> pieces;
    auto blank = [&]() {
        Strongly1SparseSpec p;
        p.dim = n;
        p.nu.resize(n);
        for (int i = 0; i < n; ++i) p.nu[i] = i;
        p.off.assign(n, 0.0);
        p.diag.assign(n, 0.0);
        return p;
    };

    // Diagonal rates form their own fixed-point piece.
    Strongly1SparseSpec diag_piece = blank();
    bool have_diag = false;
    // Off-diagonal part as a directed graph: entry a_{k,l} (k != l) is the
    // edge v_k -> v_l.
    struct Edge {
        int u, v;
        double value;
    };
    std::vector<Edge> edges;
    for (const auto& e : spec.entries) {
        if (e.value == 0.0) continue;
        if (e.k == e.l) {
            diag_piece.diag[e.k] += e.value;
            have_diag = true;
        } else {
            edges.push_back({e.k, e.l, e.value});
        }
    }

    // First pass, d^2 colors: color(u,v) = d * NextIdx(u,v) + PrevIdx(u,v)
    // with NextIdx/PrevIdx the ranks of v among u's out-neighbors and of u
    // among v's in-neighbors; each color class is 1-sparse.
    std::vector<std::vector<int>> next_of(n), prev_of(n);
    for (const auto& e : edges) {
        next_of[e.u].push_back(e.v);
        prev_of[e.v].push_back(e.u);
    }
    for (int i = 0; i < n; ++i) {
        std::sort(next_of[i].begin(), next_of[i].end());
        std::sort(prev_of[i].begin(), prev_of[i].end());
    }
    auto rank_in = [](const std::vector<int>& v, int x) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };
    const int stride = std::max(spec.d, 1);
    std::map<int, std::vector<Edge>> classes;
    for (const auto& e : edges) {
        const int color = stride * rank_in(next_of[e.u], e.v) + rank_in(prev_of[e.v], e.u);
        classes[color].push_back(e);
    }

    // Second pass: 3-color each 1-sparse class so every color is a partial
    // matching of undirected pairs (2-cycles stay together, odd cycles spend
    // the third color on their final edge).
    for (auto& [color, cls] : classes) {
        std::map<int, std::pair<int, double>> next_edge;  // u -> (v, value)
        for (const auto& e : cls) next_edge[e.u] = {e.v, e.value};
        std::map<std::pair<int, int>, int> subcolor;

        auto assign_walk = [&](int start, bool is_cycle) {
            // Walk the functional chain from `start`, alternating colors; odd
            // cycles put their final edge in color 2.
            std::vector<std::pair<int, int>> walk;
            int u = start;
            while (next_edge.count(u)) {
                const int v = next_edge[u].first;
                if (subcolor.count({u, v})) break;
                walk.push_back({u, v});
                subcolor[{u, v}] = -1;  // mark visited
                if (is_cycle && v == start) break;
                u = v;
            }
            if (walk.size() == 2 && walk[0].first == walk[1].second) {
                // 2-cycle: both directed edges share one pair, one color.
                subcolor[walk[0]] = 0;
                subcolor[walk[1]] = 0;
                return;
            }
            for (size_t i = 0; i < walk.size(); ++i) subcolor[walk[i]] = static_cast<int>(i % 2);
            if (is_cycle && walk.size() % 2 == 1 && walk.size() > 1)
                subcolor[walk.back()] = 2;
        };

        std::vector<char> has_in(n, 0);
        for (const auto& e : cls) has_in[e.v] = 1;
        for (const auto& e : cls)
            if (!has_in[e.u] && !subcolor.count({e.u, e.v})) assign_walk(e.u, false);
        for (const auto& e : cls)
            if (!subcolor.count({e.u, e.v})) assign_walk(e.u, true);

        Strongly1SparseSpec sub[3] = {blank(), blank(), blank()};
        bool used[3] = {false, false, false};
        for (const auto& e : cls) {
            const int sc = subcolor.at({e.u, e.v});
            auto& piece = sub[sc];
            // Edge u -> v carries entry a_{u,v}: with x = v as the source
            // column, off[v] = a_{nu(v),v} and nu pairs {u, v}.
            if (piece.nu[e.v] != e.v && piece.nu[e.v] != e.u)
                throw numeric_error("decompose_d_sparse: coloring produced a vertex clash");
            if (piece.nu[e.u] != e.u && piece.nu[e.u] != e.v)
                throw numeric_error("decompose_d_sparse: coloring produced a vertex clash");
            piece.nu[e.u] = e.v;
            piece.nu[e.v] = e.u;
            piece.off[e.v] += e.value;
            used[sc] = true;
        }
        for (int sc = 0; sc < 3; ++sc)
            if (used[sc]) pieces.push_back(std::move(sub[sc]));
    }

    if (have_diag) pieces.push_back(std::move(diag_piece));
    for (const auto& p : pieces) p.validate();
    return pieces;
}

QuantumChannel d_sparse_diagonal_channel(const DiagonalSpec& spec, double t, long r) {
    if (r < 1) throw validation_error("d_sparse_diagonal_channel: r must be >= 1");
    auto pieces = decompose_d_sparse(spec);
    const int n = spec.dim;
    if (pieces.empty()) return identity_channel(n);
    // Strang composition of the exact one-piece channels: half-steps forward,
    // half-steps in reverse, all to the r-th power.
    const double half = t / (2.0 * r);
    ComplexMatrix step = ComplexMatrix::identity(n * n);
    for (const auto& p : pieces)
        step = superop_from_choi(strongly_1sparse_channel(p, half).choi, n) * step;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
        step = superop_from_choi(strongly_1sparse_channel(*it, half).choi, n) * step;
    ComplexMatrix acc = ComplexMatrix::identity(n * n);
    long k = r;
    ComplexMatrix base = step;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return channel_from_superop_matrix(acc, n);
}

// ---------------- dense diagonal ----------------

void DenseDiagonalSpec::validate() const {
    if (dim <= 0 || static_cast<int>(a.size()) != dim)
        throw validation_error("DenseDiagonalSpec: shape mismatch");
    for (double v : a)
        if (v < 0) throw validation_error("DenseDiagonalSpec: a must be nonnegative");
}

double DenseDiagonalSpec::total() const {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

double DenseDiagonalSpec::prefix_sum(int k1, int k2) const {
    if (k1 < 0 || k2 >= dim || k1 > k2) throw validation_error("DenseDiagonalSpec: bad prefix range");
    double s = 0.0;
    for (int k = k1; k <= k2; ++k) s += a[k];
    return s;
}

Superoperator DenseDiagonalSpec::generator() const {
    validate();
    OvercompleteGKS g;
    g.dim = dim;
    for (int k = 0; k < dim; ++k) {
        if (a[k] == 0.0) continue;
        for (int l = 0; l < dim; ++l) g.entries.push_back({k, l, k, l, a[k]});
    }
    return liouvillian(g);
}

QuantumChannel dense_diagonal_channel(const DenseDiagonalSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    const double s = spec.total();
    QuantumChannel e;
    e.dim_in = n;
    e.dim_out = n;
    e.choi = ComplexMatrix(n * n, n * n);
    const double decay = std::exp(-2.0 * s * t);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) e.choi(u * n + u, v * n + v) = decay;
    for (int u = 0; u < n; ++u) {
        e.choi(u * n + u, u * n + u) += decay;
        if (s > 0.0)
            for (int k = 0; k < n; ++k)
                e.choi(k * n + u, k * n + u) += (1.0 - decay) * spec.a[k] / s;
        else
            e.choi(u * n + u, u * n + u) += 1.0 - decay;  // S=0: identity
    }
    return e;
}

SparseStinespringIsometry dense_diagonal_gate_sequence(const DenseDiagonalSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    const double s = spec.prefix_sum(0, n - 1);
    const double est = std::exp(-s * t);
    const double hop = 1.0 - est * est;

    // Circuit registers: r1 = system (N), r2 = C^N, r3 = C^{N+1},
    // r4 = qubit. Gates are controlled on r4 = |0> except U1 and the flip.
    const int d1 = n, d2 = n, d3 = n + 1, d4 = 2;
    const ComplexMatrix i1 = ComplexMatrix::identity(d1);
    const ComplexMatrix i2 = ComplexMatrix::identity(d2);
    const ComplexMatrix i3 = ComplexMatrix::identity(d3);
    const ComplexMatrix i4 = ComplexMatrix::identity(d4);
    ComplexMatrix p40(d4, d4);
    p40(0, 0) = 1.0;

    ComplexMatrix u1(d4, d4);
    u1(0, 0) = std::sqrt(hop);
    u1(1, 0) = est;
    u1(0, 1) = -est;
    u1(1, 1) = std::sqrt(hop);
    ComplexMatrix u1_gate = kron(kron(i1, i2), kron(i3, u1));

    // SWAP r1 <-> r3 on the j < N block (|N> never occurs on r3 here).
    ComplexMatrix sw(d1 * d2 * d3, d1 * d2 * d3);
    for (int i = 0; i < d1; ++i)
        for (int q = 0; q < d2; ++q)
            for (int j = 0; j < d3; ++j) {
                const int src = (i * d2 + q) * d3 + j;
                const int dst = (j < n) ? (j * d2 + q) * d3 + i : src;
                sw(dst, src) = 1.0;
            }
    ComplexMatrix swap_gate = kron(sw, p40) + kron(ComplexMatrix::identity(d1 * d2 * d3), i4 - p40);

    ComplexMatrix p1(d3, d3);
    for (int k = 0; k < n; ++k) p1(k + 1, k) = 1.0;
    p1(0, n) = 1.0;
    ComplexMatrix p1_gate = kron(kron(i1, i2), kron(p1, p40)) +
                            kron(kron(i1, i2), kron(i3, i4 - p40));

    std::vector<cd> star(n, cd(0.0, 0.0));
    if (s > 0.0)
        for (int k = 0; k < n; ++k) star[k] = std::sqrt(spec.a[k] / s);
    else
        star[0] = 1.0;
    ComplexMatrix u2 = householder_preparation(star);
    ComplexMatrix u2_gate = kron(kron(i1, u2), kron(i3, p40)) + kron(kron(i1, i2), kron(i3, i4 - p40));

    // P2 swaps |0,k> <-> |k,k| on (r1, r2) for k >= 1.
    ComplexMatrix p2(d1 * d2, d1 * d2);
    for (int i = 0; i < d1; ++i)
        for (int q = 0; q < d2; ++q) p2(i * d2 + q, i * d2 + q) = 1.0;
    for (int k = 1; k < n; ++k) {
        const int e0k = 0 * d2 + k, ekk = k * d2 + k;
        p2(e0k, e0k) = 0.0;
        p2(ekk, ekk) = 0.0;
        p2(ekk, e0k) = 1.0;
        p2(e0k, ekk) = 1.0;
    }
    ComplexMatrix p2_gate = kron(p2, kron(i3, p40)) +
                            kron(ComplexMatrix::identity(d1 * d2), kron(i3, i4 - p40));

    ComplexMatrix p30(d3, d3);
    p30(0, 0) = 1.0;
    ComplexMatrix flip(d4, d4);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    ComplexMatrix flip_gate = kron(kron(i1, i2), kron(p30, flip)) +
                              kron(kron(i1, i2), kron(i3 - p30, i4));

    ComplexMatrix seq = flip_gate * p2_gate * u2_gate * p1_gate * swap_gate * u1_gate;

    // Check: seq |m>|0>|0>|0> = V|m> (x) |0>_4 with V the dense-diagonal
    // isometry e^{-St}|m>|0>|0> + sum_k sqrt((1-e^{-2St}) a_k / S)|k>|k>|m+1>.
    const int total = d1 * d2 * d3 * d4;
    double worst = 0.0;
    for (int m = 0; m < n; ++m) {
        std::vector<cd> input(total, cd(0.0, 0.0));
        input[((m * d2 + 0) * d3 + 0) * d4 + 0] = 1.0;
        std::vector<cd> out = seq.apply(input);
        std::vector<cd> expect(total, cd(0.0, 0.0));
        expect[((m * d2 + 0) * d3 + 0) * d4 + 0] += est;
        if (s > 0.0)
            for (int k = 0; k < n; ++k)
                expect[((k * d2 + k) * d3 + (m + 1)) * d4 + 0] += std::sqrt(hop * spec.a[k] / s);
        double err2 = 0.0;
        for (int i = 0; i < total; ++i) err2 += std::norm(out[i] - expect[i]);
        worst = std::max(worst, std::sqrt(err2));
    }
    if (worst > 1e-9)
        throw numeric_error("dense_diagonal_gate_sequence: gate product deviates from the target isometry by " +
                            std::to_string(worst));

    // Re-encode the verified isometry on the compact N^2+2 ancilla with the
    // full N-cycle as neighbor function: anc 0 <-> |0>_2|0>_3,
    // anc 1 + m*N + k <-> |k>_2|m+1>_3.
    SparsityPattern pattern;
    pattern.dim = n;
    pattern.d = n;
    pattern.nu.resize(n);
    pattern.order.assign(n, n);
    for (int x = 0; x < n; ++x) pattern.nu[x] = (x + 1) % n;

    AncillaFamily fam;
    fam.dim = n;
    fam.d = n;
    fam.anc_dim = n * n + 2;
    fam.phi.assign(static_cast<size_t>(n) * n, std::vector<cd>(fam.anc_dim, cd(0.0, 0.0)));
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i) {
            const int k = (m + i) % n;
            auto& phi = fam.at(m, i);
            if (i == 0) phi[0] += est;
            if (s > 0.0) phi[1 + m * n + k] += std::sqrt(hop * spec.a[k] / s);
        }
    return isometry_from_ancilla(pattern, fam);
}

// ---------------- 1-ket-sparse ----------------

void OneKetSparseSpec::validate() const {
    if (dim <= 0 || static_cast<int>(nu.size()) != dim || static_cast<int>(a.size()) != dim ||
        static_cast<int>(aprime.size()) != dim || static_cast<int>(b.size()) != dim)
        throw validation_error("OneKetSparseSpec: shape mismatch");
    for (int x = 0; x < dim; ++x) {
        if (nu[x] < 0 || nu[x] >= dim || nu[nu[x]] != x)
            throw validation_error("OneKetSparseSpec: nu is not an involution");
        if (a[x] < 0 || aprime[x] < 0)
            throw validation_error("OneKetSparseSpec: rates must be nonnegative");
        if (a[x] != a[nu[x]] || aprime[x] != aprime[nu[x]] || b[x] != b[nu[x]])
            throw validation_error("OneKetSparseSpec: orbit symmetry violated");
        if (b[x] * b[x] > 4.0 * a[x] * aprime[x] + 1e-12)
            throw validation_error("OneKetSparseSpec: b^2 <= 4 a a' violated (not a PSD instance)");
        if (nu[x] == x && b[x] != 0.0)
            throw validation_error("OneKetSparseSpec: fixed points must have b = 0");
    }
}

Superoperator OneKetSparseSpec::generator() const {
    validate();
    OvercompleteGKS g;
    g.dim = dim;
    for (int x = 0; x < dim; ++x) {
        if (a[x] != 0.0) g.entries.push_back({x, nu[x], x, nu[x], a[x]});
        if (aprime[x] != 0.0) g.entries.push_back({x, x, x, x, aprime[x]});
        // Off-diagonal A entries b/2 at ((k,l),(nu(k),l)) for l in {k, nu(k)};
        // storing ((x,x),(nu(x),x)) and ((x,nu(x)),(nu(x),nu(x))) once per
        // orbit covers all four with the implied mirrors.
        if (b[x] != 0.0 && x < nu[x]) {
            g.entries.push_back({x, x, nu[x], x, 0.5 * b[x]});
            g.entries.push_back({x, nu[x], nu[x], nu[x], 0.5 * b[x]});
        }
    }
    return liouvillian(g);
}

SparseStinespringIsometry one_ket_sparse_isometry(const OneKetSparseSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    SparsityPattern pattern = involution_pattern(n, spec.nu);
    AncillaFamily fam;
    fam.dim = n;
    fam.d = pattern.d;
    fam.anc_dim = 2 * n + 2;
    fam.phi.assign(static_cast<size_t>(n) * fam.d, std::vector<cd>(fam.anc_dim, cd(0.0, 0.0)));
    for (int u = 0; u < n; ++u) {
        const double av = spec.a[u], ap = spec.aprime[u], bv = spec.b[u];
        const double e4 = std::exp(-4.0 * av * t);
        const double e2 = std::exp(-2.0 * (av + ap) * t);
        const double au = std::sqrt(std::max(0.5 * (1.0 - e4), 0.0));
        const double bu = std::exp(-(av + ap) * t);
        // At a fixed point of nu the population is frozen, so the stay
        // vector completes to unit norm; the two-site formula applies only
        // to genuine 2-orbits.
        const double cu = pattern.order[u] == 2
                              ? std::sqrt(std::max(0.5 * (1.0 + e4 - 2.0 * e2), 0.0))
                              : std::sqrt(std::max(1.0 - bu * bu, 0.0));
        const double du = (av + ap) > 0.0 ? bv * (1.0 - e2) / (2.0 * (av + ap)) : 0.0;
        auto& phi1 = fam.at(u, 0);
        phi1[0] = bu;
        phi1[1 + u] = cu;
        if (pattern.order[u] == 2) {
            auto& phi2 = fam.at(u, 1);
            if (cu > 1e-14) {
                // Feasibility a_u^2 c_u^2 >= d_u^2 must hold before the root.
                if (au * au * cu * cu + 1e-12 < du * du)
                    throw numeric_error("one_ket_sparse_isometry: feasibility a_u^2 c_u^2 >= d_u^2 failed");
                phi2[1 + u] = du / cu;
                phi2[1 + n + u] = std::sqrt(std::max(au * au - (du / cu) * (du / cu), 0.0));
            } else {
                // c_u = 0 forces d_u = 0; define d_u^2/c_u^2 := 0.
                if (std::abs(du) > 1e-12)
                    throw numeric_error("one_ket_sparse_isometry: c_u = 0 but d_u != 0");
                phi2[1 + n + u] = au;
            }
        }
    }
    return isometry_from_ancilla(pattern, fam);
}

QuantumChannel one_ket_sparse_channel(const OneKetSparseSpec& spec, double t) {
    spec.validate();
    const int n = spec.dim;
    QuantumChannel e;
    e.dim_in = n;
    e.dim_out = n;
    e.choi = ComplexMatrix(n * n, n * n);
    for (int u = 0; u < n; ++u) {
        const double av = spec.a[u], ap = spec.aprime[u], bv = spec.b[u];
        const double e4 = std::exp(-4.0 * av * t);
        const double e2 = std::exp(-2.0 * (av + ap) * t);
        const double du = (av + ap) > 0.0 ? bv * (1.0 - e2) / (2.0 * (av + ap)) : 0.0;
        if (spec.nu[u] != u) {
            e.choi(u * n + u, u * n + u) += 0.5 * (1.0 + e4);
            e.choi(spec.nu[u] * n + u, spec.nu[u] * n + u) += 0.5 * (1.0 - e4);
            e.choi(u * n + u, spec.nu[u] * n + u) += du;
            e.choi(spec.nu[u] * n + u, u * n + u) += du;
        } else {
            e.choi(u * n + u, u * n + u) += 1.0;
        }
    }
    auto site_rate = [&](int u) { return spec.a[u] + spec.aprime[u]; };
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            e.choi(u * n + u, v * n + v) += std::exp(-(site_rate(u) + site_rate(v)) * t);
        }
    check_cross(e, one_ket_sparse_isometry(spec, t), "one_ket_sparse_channel");
    return e;
}

// ---------------- sparse Lindblad operators ----------------

void SparseLindbladOpSpec::validate() const {
    if (dim <= 0 || k < 1 || static_cast<int>(perms.size()) != k)
        throw validation_error("SparseLindbladOpSpec: shape mismatch");
    if (coeffs.rows() != dim || coeffs.cols() != k)
        throw validation_error("SparseLindbladOpSpec: coefficient shape mismatch");
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != dim)
            throw validation_error("SparseLindbladOpSpec: permutation size mismatch");
        std::vector<char> hit(dim, 0);
        for (int x : p) {
            if (x < 0 || x >= dim || hit[x])
                throw validation_error("SparseLindbladOpSpec: not a permutation");
            hit[x] = 1;
        }
    }
    for (int x = 0; x < dim; ++x)
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perms[i][x] == perms[j][x])
                    throw validation_error("SparseLindbladOpSpec: permutations collide at a column");
    if (max_entry() > 1.0 + 1e-12)
        throw validation_error("SparseLindbladOpSpec: ||L||_max must be <= 1 after rescaling");
}

double SparseLindbladOpSpec::max_entry() const {
    return coeffs.max_abs();
}

ComplexMatrix SparseLindbladOpSpec::lindblad_op() const {
    ComplexMatrix l(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < k; ++i) l(perms[i][j], j) += coeffs(j, i);
    return l;
}

Superoperator SparseLindbladOpSpec::generator() const {
    LindbladModel model;
    model.dim = dim;
    model.lindblad_ops.push_back(lindblad_op());
    return liouvillian(model);
}

SparseLindbladOpSpec permutation_cover(const ComplexMatrix& l, int k) {
    if (!l.square()) throw validation_error("permutation_cover: matrix not square");
    const int n = l.rows();
    if (k < 1 || k > n) throw validation_error("permutation_cover: need 1 <= k <= N");

    // Bipartite graph: left = columns j, right = rows u, edge iff L[u,j] != 0.
    std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
    std::vector<int> col_deg(n, 0), row_deg(n, 0);
    for (int u = 0; u < n; ++u)
        for (int j = 0; j < n; ++j)
            if (l(u, j) != cd(0.0, 0.0)) {
                edge[j][u] = 1;
                col_deg[j]++;
                row_deg[u]++;
            }
    for (int i = 0; i < n; ++i)
        if (col_deg[i] > k || row_deg[i] > k)
            throw validation_error("permutation_cover: sparsity exceeds k");

    // Pad to a k-regular simple bipartite graph with zero-weight edges drawn
    // from the complement, solved exactly as a degree-constrained subgraph
    // via augmenting-path max flow. Node layout: 0 = source, 1..n = columns,
    // n+1..2n = rows, 2n+1 = sink.
    {
        const int source = 0, sink = 2 * n + 1, nodes = 2 * n + 2;
        std::vector<std::vector<int>> cap(nodes, std::vector<int>(nodes, 0));
        long deficiency = 0;
        for (int j = 0; j < n; ++j) {
            cap[source][1 + j] = k - col_deg[j];
            deficiency += k - col_deg[j];
        }
        for (int u = 0; u < n; ++u) cap[1 + n + u][sink] = k - row_deg[u];
        for (int j = 0; j < n; ++j)
            for (int u = 0; u < n; ++u)
                if (!edge[j][u]) cap[1 + j][1 + n + u] = 1;

        long flow = 0;
        while (true) {
            std::vector<int> prev(nodes, -1);
            std::vector<int> queue = {source};
            prev[source] = source;
            for (size_t qi = 0; qi < queue.size() && prev[sink] < 0; ++qi) {
                const int v = queue[qi];
                for (int w = 0; w < nodes; ++w)
                    if (prev[w] < 0 && cap[v][w] > 0) {
                        prev[w] = v;
                        queue.push_back(w);
                    }
            }
            if (prev[sink] < 0) break;
            for (int v = sink; v != source; v = prev[v]) {
                cap[prev[v]][v]--;
                cap[v][prev[v]]++;
            }
            ++flow;
        }
        if (flow != deficiency)
            throw validation_error(
                "permutation_cover: nonzero pattern admits no simple k-regular completion "
                "(no k permutations with pairwise-distinct values exist)");
        for (int j = 0; j < n; ++j)
            for (int u = 0; u < n; ++u)
                if (!edge[j][u] && cap[1 + n + u][1 + j] > 0) {
                    edge[j][u] = 1;
                    col_deg[j]++;
                    row_deg[u]++;
                }
    }

    // Peel off k perfect matchings (Kuhn's augmenting paths).
    SparseLindbladOpSpec spec;
    spec.dim = n;
    spec.k = k;
    spec.coeffs = ComplexMatrix(n, k);
    for (int round = 0; round < k; ++round) {
        std::vector<int> match_row(n, -1), match_col(n, -1);
        std::vector<char> seen(n);
        std::function<bool(int)> try_col = [&](int j) -> bool {
            for (int u = 0; u < n; ++u) {
                if (!edge[j][u] || seen[u]) continue;
                seen[u] = 1;
                if (match_row[u] < 0 || try_col(match_row[u])) {
                    match_row[u] = j;
                    match_col[j] = u;
                    return true;
                }
            }
            return false;
        };
        for (int j = 0; j < n; ++j) {
            std::fill(seen.begin(), seen.end(), 0);
            if (!try_col(j)) throw numeric_error("permutation_cover: perfect matching not found");
        }
        std::vector<int> perm(n);
        for (int j = 0; j < n; ++j) {
            perm[j] = match_col[j];
            edge[j][match_col[j]] = 0;
            spec.coeffs(j, round) = l(match_col[j], j);
        }
        spec.perms.push_back(std::move(perm));
    }

    const double scale = spec.coeffs.max_abs();
    if (scale > 1.0) {
        spec.coeffs *= cd(1.0 / scale, 0.0);
        spec.rescale = scale;
    }
    spec.validate();
    return spec;
}

QuantumChannel short_time_map_1sparse(const SparseLindbladOpSpec& spec, double eps) {
    spec.validate();
    if (spec.k != 1) throw validation_error("short_time_map_1sparse: spec must be 1-sparse");
    const double cap = 1.0 / std::max(spec.max_entry() * spec.max_entry(), 1e-300);
    if (eps < 0.0 || (eps > 0.0 && eps > cap))
        throw validation_error("short_time_map_1sparse: eps out of range");
    const int n = spec.dim;
    const auto& nu = spec.perms[0];
    // V_eps|m> = sqrt(1 - eps|c_m|^2)|m>|0> + sqrt(eps) c_m |nu(m)>|1>
    ComplexMatrix v(n * 2, n);
    for (int m = 0; m < n; ++m) {
        const cd c = spec.coeffs(m, 0);
        v(m * 2 + 0, m) = std::sqrt(std::max(1.0 - eps * std::norm(c), 0.0));
        v(nu[m] * 2 + 1, m) = std::sqrt(eps) * c;
    }
    QuantumChannel e;
    e.dim_in = n;
    e.dim_out = n;
    e.choi = ComplexMatrix(n * n, n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int u = 0; u < n; ++u)
                for (int w = 0; w < n; ++w) {
                    cd sum = 0.0;
                    for (int anc = 0; anc < 2; ++anc)
                        sum += v(u * 2 + anc, x) * std::conj(v(w * 2 + anc, y));
                    if (sum != cd(0.0, 0.0)) e.choi(u * n + x, w * n + y) = sum;
                }
    return e;
}

ComplexMatrix short_time_isometry_ksparse(const SparseLindbladOpSpec& spec, double eps) {
    const int n = spec.dim;
    std::vector<std::vector<int>> inv(spec.k, std::vector<int>(n));
    for (int i = 0; i < spec.k; ++i)
        for (int j = 0; j < n; ++j) inv[i][spec.perms[i][j]] = j;
    ComplexMatrix v(n * 2, n);
    for (int m = 0; m < n; ++m) {
        v(m * 2 + 0, m) += 1.0;
        for (int i = 0; i < spec.k; ++i)
            v(spec.perms[i][m] * 2 + 1, m) += std::sqrt(eps) * spec.coeffs(m, i);
        for (int i = 0; i < spec.k; ++i)
            for (int j = 0; j < spec.k; ++j) {
                const int w = inv[j][spec.perms[i][m]];
                v(w * 2 + 0, m) += -0.5 * eps * spec.coeffs(m, i) * std::conj(spec.coeffs(w, j));
            }
    }
    return v;
}

QuantumChannel short_time_map_ksparse(const SparseLindbladOpSpec& spec, double eps) {
    spec.validate();
    if (spec.k < 2) throw validation_error("short_time_map_ksparse: spec must have k >= 2");
    const double cap = 1.0 / std::max(spec.max_entry() * spec.max_entry(), 1e-300);
    if (eps < 0.0 || eps > cap) throw validation_error("short_time_map_ksparse: eps out of range");
    const int n = spec.dim;
    ComplexMatrix v = short_time_isometry_ksparse(spec, eps);

    // H = [[0, V],[V^dag, 0]] on C^{3N}, basis (anc, sys) with anc major.
    ComplexMatrix h(3 * n, 3 * n);
    for (int u = 0; u < n; ++u)
        for (int anc = 0; anc < 2; ++anc)
            for (int m = 0; m < n; ++m) {
                const cd val = v(u * 2 + anc, m);
                h(anc * n + u, 2 * n + m) = val;
                h(2 * n + m, anc * n + u) = std::conj(val);
            }
    ComplexMatrix ih = h;
    ih *= cd(0.0, -std::numbers::pi / 2.0);
    ComplexMatrix w = expm(ih);

    QuantumChannel e;
    e.dim_in = n;
    e.dim_out = n;
    e.choi = ComplexMatrix(n * n, n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int u = 0; u < n; ++u)
                for (int z = 0; z < n; ++z) {
                    cd sum = 0.0;
                    for (int anc = 0; anc < 3; ++anc)
                        sum += w(anc * n + u, 2 * n + x) * std::conj(w(anc * n + z, 2 * n + y));
                    e.choi(u * n + x, z * n + y) = sum;
                }
    return e;
}

QuantumChannel sparse_op_evolution(const SparseLindbladOpSpec& spec, double t, long n_steps) {
    spec.validate();
    if (n_steps < 1) throw validation_error("sparse_op_evolution: n must be >= 1");
    if (t < 0.0) throw validation_error("sparse_op_evolution: t must be nonnegative");
    if (t == 0.0) return identity_channel(spec.dim);
    const double eps = t / static_cast<double>(n_steps);
    const double cap = 1.0 / std::max(spec.max_entry() * spec.max_entry(), 1e-300);
    if (eps > cap)
        throw validation_error("sparse_op_evolution: per-step eps exceeds the short-time bound");
    QuantumChannel step =
        spec.k == 1 ? short_time_map_1sparse(spec, eps) : short_time_map_ksparse(spec, eps);
    return channel_power(step, n_steps);
}

long steps_for_accuracy(double t, int k, double eps) {
    if (eps <= 0.0) throw validation_error("steps_for_accuracy: eps must be positive");
    const double raw = t * t * std::pow(static_cast<double>(k), 4) / eps;
    return std::max(1L, static_cast<long>(std::ceil(raw)));
}

} // namespace lindsim
