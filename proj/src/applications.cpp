#include "lindsim/applications.hpp"

#include <cmath>
#include <set>

namespace lindsim {

// ---------------- oscillator ----------------

void OscillatorSpec::validate() const {
    if (levels < 2) throw validation_error("OscillatorSpec: need at least 2 levels");
    if (lambda < 0.0 || lambda > 1.0) throw validation_error("OscillatorSpec: lambda in [0,1]");
}

ComplexMatrix annihilation_op(int levels) {
    ComplexMatrix a(levels, levels);
    for (int j = 1; j < levels; ++j) a(j - 1, j) = std::sqrt(static_cast<double>(j));
    return a;
}

LindbladModel oscillator_model(const OscillatorSpec& spec) {
    spec.validate();
    const int n = spec.levels;
    const double root_n = std::sqrt(static_cast<double>(n));
    ComplexMatrix a = annihilation_op(n);
    LindbladModel model;
    model.dim = n;
    switch (spec.direction) {
        case OscillatorDirection::Down:
            model.lindblad_ops.push_back(a * cd(1.0 / root_n, 0.0));
            break;
        case OscillatorDirection::Up:
            model.lindblad_ops.push_back(a.adjoint() * cd(1.0 / root_n, 0.0));
            break;
        case OscillatorDirection::Mixed:
            model.lindblad_ops.push_back(a.adjoint() * cd(std::sqrt(spec.lambda) / root_n, 0.0));
            model.lindblad_ops.push_back(a * cd(std::sqrt(1.0 - spec.lambda) / root_n, 0.0));
            break;
    }
    return model;
}

// ---------------- quantum stochastic walks ----------------

void WalkSpec::validate() const {
    if (vertices <= 0) throw validation_error("WalkSpec: vertices must be positive");
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= vertices || e.v < 0 || e.v >= vertices || e.u == e.v)
            throw validation_error("WalkSpec: bad edge");
        if (e.weight < 0) throw validation_error("WalkSpec: edge weights must be nonnegative");
    }
    if (hamiltonian == WalkHamiltonian::Custom &&
        (custom_h.rows() != vertices || custom_h.cols() != vertices))
        throw validation_error("WalkSpec: custom Hamiltonian shape mismatch");
}

ComplexMatrix WalkSpec::rate_matrix() const {
    ComplexMatrix m(vertices, vertices);
    for (const auto& e : edges) m(e.u, e.v) += e.weight;
    return m;
}

ComplexMatrix WalkSpec::adjacency() const {
    ComplexMatrix a(vertices, vertices);
    for (const auto& e : edges) {
        a(e.u, e.v) = 1.0;
        a(e.v, e.u) = 1.0;
    }
    return a;
}

ComplexMatrix WalkSpec::laplacian() const {
    ComplexMatrix a = adjacency();
    ComplexMatrix l(vertices, vertices);
    for (int i = 0; i < vertices; ++i) {
        double deg = 0.0;
        for (int j = 0; j < vertices; ++j) deg += a(i, j).real();
        l(i, i) = deg;
        for (int j = 0; j < vertices; ++j) l(i, j) -= a(i, j);
    }
    return l;
}

WalkSpec unweighted_walk(int vertices, const std::vector<std::pair<int, int>>& undirected_edges,
                         WalkHamiltonian h) {
    std::vector<int> deg(vertices, 0);
    for (const auto& [u, v] : undirected_edges) {
        deg[u]++;
        deg[v]++;
    }
    WalkSpec spec;
    spec.vertices = vertices;
    spec.hamiltonian = h;
    for (const auto& [u, v] : undirected_edges) {
        spec.edges.push_back({u, v, 1.0 / deg[v]});
        spec.edges.push_back({v, u, 1.0 / deg[u]});
    }
    return spec;
}

Superoperator stochastic_walk_generator(const WalkSpec& spec) {
    spec.validate();
    const int n = spec.vertices;
    ComplexMatrix m = spec.rate_matrix();

    OvercompleteGKS g;
    g.dim = n;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (k != l && m(k, l).real() > 0.0)
                g.entries.push_back({k, l, k, l, 0.5 * m(k, l).real()});
    switch (spec.hamiltonian) {
        case WalkHamiltonian::Laplacian:
            g.hamiltonian = spec.laplacian() * cd(spec.hamiltonian_weight, 0.0);
            break;
        case WalkHamiltonian::Adjacency:
            g.hamiltonian = spec.adjacency() * cd(spec.hamiltonian_weight, 0.0);
            break;
        case WalkHamiltonian::Custom:
            g.hamiltonian = spec.custom_h * cd(spec.hamiltonian_weight, 0.0);
            break;
        case WalkHamiltonian::None:
            break;
    }
    return liouvillian(g);
}

StationaryResult stationary_state(const Superoperator& generator) {
    const int n = generator.dim;
    const int side = n * n;
    const ComplexMatrix& s = generator.matrix;
    const double scale = std::max(s.frobenius_norm(), 1e-300);

    auto spec = hermitian_eig(s.adjoint() * s);
    // Squared singular values; nullspace detection relative to the top one.
    // The eigensolver resolves eigenvalues to ~1e-13 * ||S^dag S||_F, so the
    // cut must sit well above that floor and well below the squared gap.
    const double top = std::max(spec.eigenvalues.back(), 0.0);
    const double cut = std::max(1e-10 * top, 1e-20 * scale * scale);
    StationaryResult out;
    for (double ev : spec.eigenvalues)
        if (ev <= cut) out.nullspace_dim++;
    if (out.nullspace_dim == 0)
        throw numeric_error("stationary_state: no null vector within tolerance");
    out.unique = out.nullspace_dim == 1;
    if (!out.unique) return out;        // report non-uniqueness, do not choose

    ComplexMatrix rho(n, n);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) rho(k, l) = spec.eigenvectors(vec_index(k, l, n), 0);
    ComplexMatrix herm(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) herm(r, c) = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
    cd tr = herm.trace();
    if (std::abs(tr) < 1e-12)
        throw numeric_error("stationary_state: null vector has vanishing trace");
    herm *= cd(1.0, 0.0) / tr;
    out.rho = herm;

    std::vector<cd> v(side);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) v[vec_index(k, l, n)] = out.rho(k, l);
    std::vector<cd> w = s.apply(v);
    double res = 0.0;
    for (const auto& z : w) res += std::norm(z);
    out.residual = std::sqrt(res);
    return out;
}

// ---------------- hypercube decoherence ----------------

ComplexMatrix hypercube_adjacency(int n) {
    const int dim = 1 << n;
    ComplexMatrix a(dim, dim);
    for (int x = 0; x < dim; ++x)
        for (int j = 0; j < n; ++j) a(x ^ (1 << (n - 1 - j)), x) += 1.0;
    return a;
}

Superoperator hypercube_generator(int n, HypercubeModel model, double param) {
    if (n < 1) throw validation_error("hypercube_generator: n must be >= 1");
    const int dim = 1 << n;
    ComplexMatrix a = hypercube_adjacency(n);

    if (model == HypercubeModel::Alagic) {
        const double p = param;
        if (p < 0.0 || p >= 4.0 / n)
            throw validation_error("hypercube_generator: Alagic requires 0 <= p < 4/n");
        LindbladModel lm;
        lm.dim = dim;
        lm.hamiltonian = a * cd(1.0 - p, 0.0);
        const double root_p = std::sqrt(p);
        for (int j = 0; j < n; ++j)
            for (int alpha = 0; alpha < 2; ++alpha) {
                // Pi_alpha on qubit j (qubit 1 = most significant bit).
                ComplexMatrix op(dim, dim);
                for (int x = 0; x < dim; ++x)
                    if (((x >> (n - 1 - j)) & 1) == alpha) op(x, x) = root_p;
                lm.lindblad_ops.push_back(std::move(op));
            }
        return liouvillian(lm);
    }

    const double lambda = param;
    if (lambda < 0.0) throw validation_error("hypercube_generator: Strauch requires lambda >= 0");
    IdenticalCoordinateSpec ic;
    ic.dim = dim;
    ic.a.assign(dim, 0.5 * lambda);
    ic.c.assign(dim, 0.0);
    Superoperator diss = liouvillian(ic.gks());
    LindbladModel ham_only;
    ham_only.dim = dim;
    ham_only.hamiltonian = a;
    Superoperator ham = liouvillian(ham_only);
    ham.matrix += diss.matrix;
    return ham;
}

QuantumChannel hypercube_decoherence(int n, HypercubeModel model, double param, double t) {
    return exact_channel(hypercube_generator(n, model, param), t);
}

} // namespace lindsim
