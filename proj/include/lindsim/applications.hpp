#ifndef LINDSIM_APPLICATIONS_HPP
#define LINDSIM_APPLICATIONS_HPP

#include "lindsim/sparse_classes.hpp"

namespace lindsim {

// ---- truncated damped harmonic oscillator (section 5.3) ----

enum class OscillatorDirection { Up, Down, Mixed };

struct OscillatorSpec {
    int levels = 0;                     // N >= 2 Fock levels
    OscillatorDirection direction = OscillatorDirection::Down;
    double lambda = 0.0;                // Mixed: lambda L_up + (1-lambda) L_down

    void validate() const;
};

// Lindblad operators a/sqrt(N), a^dag/sqrt(N) (weighted for Mixed); both are
// bidiagonal, hence 1-sparse.
LindbladModel oscillator_model(const OscillatorSpec& spec);

ComplexMatrix annihilation_op(int levels);

// ---- quantum stochastic walks (section 6.1) ----

enum class WalkHamiltonian { Laplacian, Adjacency, None, Custom };

struct WalkSpec {
    int vertices = 0;
    // Directed weighted edges (u, v, w): transition rate M_{u,v} = w for the
    // classical jump v -> u. Undirected graphs list both directions.
    struct Edge {
        int u, v;
        double weight;
    };
    std::vector<Edge> edges;
    WalkHamiltonian hamiltonian = WalkHamiltonian::None;
    ComplexMatrix custom_h;
    double hamiltonian_weight = 1.0;

    void validate() const;
    ComplexMatrix rate_matrix() const;     // M
    ComplexMatrix adjacency() const;       // 1 where any edge connects u,v
    ComplexMatrix laplacian() const;       // D - A of the undirected support
};

// Unweighted random walk rates M_{k,l} = 1/deg(l) for the undirected graph.
WalkSpec unweighted_walk(int vertices, const std::vector<std::pair<int, int>>& undirected_edges,
                         WalkHamiltonian h);

// Walk generator: the optional Hamiltonian part plus a dissipator
// is diagonal-GKS with a_{k,l} = M_{k,l}/2, so diagonal states follow the
// classical master equation exactly.
Superoperator stochastic_walk_generator(const WalkSpec& spec);

struct StationaryResult {
    ComplexMatrix rho;
    double residual = 0.0;              // ||L(rho)||_F
    int nullspace_dim = 0;
    bool unique = false;
};

// Null vector of the Liouvillian by smallest singular pair, Hermitized and
// trace-normalized. Reports non-uniqueness instead of choosing when the
// nullspace has dimension > 1.
StationaryResult stationary_state(const Superoperator& generator);

// ---- decoherence on the hypercube (section 6.2) ----

enum class HypercubeModel { Alagic, Strauch };

// Vertices are binary strings, qubit 1 = most significant bit.
// Alagic: generator -(1-p) i[A, .] + p * (per-qubit projector jump terms).
// Strauch: -i[A, .] + identical-coordinate dissipator (a_x = lambda/2, c = 0).
QuantumChannel hypercube_decoherence(int n, HypercubeModel model, double param, double t);
Superoperator hypercube_generator(int n, HypercubeModel model, double param);
ComplexMatrix hypercube_adjacency(int n);

} // namespace lindsim

#endif
