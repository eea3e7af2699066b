#ifndef LINDSIM_LINDBLAD_HPP
#define LINDSIM_LINDBLAD_HPP

#include <optional>

#include "lindsim/linalg.hpp"

namespace lindsim {

// Vectorization convention used throughout: column stacking,
// vec(|k><l|) = e_{l*N + k}, so vec(X rho Y) = (Y^T (x) X) vec(rho).
inline int vec_index(int k, int l, int n) { return l * n + k; }

// Operator form of the master equation: dp/dt = -i[H, rho] + sum_j D[L_j](rho).
struct LindbladModel {
    int dim = 0;
    ComplexMatrix hamiltonian;          // N x N Hermitian; zero matrix if absent
    std::vector<ComplexMatrix> lindblad_ops;

    void validate() const;
};

struct GksEntry {
    int k, l, kp, lp;
    cd value;
};

// Overcomplete GKS form: N^2 x N^2 PSD coefficient matrix A over matrix
// units, composite index (k,l) -> k*N + l. Entries are stored for one
// triangle only; the conjugate mirror is implied.
struct OvercompleteGKS {
    int dim = 0;
    std::vector<GksEntry> entries;
    std::optional<ComplexMatrix> hamiltonian;
    // Black-box accounting: bumped every time an entry oracle is consulted.
    mutable long queries = 0;

    static int composite(int k, int l, int n) { return k * n + l; }

    ComplexMatrix dense() const;        // full N^2 x N^2 realization
    void validate(double psd_tol = 1e-9) const;
};

// A Lindbladian (or any linear map on operators) as a matrix acting on
// column-stacked vec(rho).
struct Superoperator {
    int dim = 0;
    ComplexMatrix matrix;               // N^2 x N^2

    ComplexMatrix apply(const ComplexMatrix& rho) const;
    double trace_annihilation_residual() const;
};

struct CptpReport {
    double min_choi_eigenvalue = 0.0;
    double trace_preservation_error = 0.0;
    bool pass = false;
};

// CPTP map stored as an unnormalized Choi matrix
// J(E) = sum_{x,y} E(|x><y|) (x) |x><y|, output factor first:
// J[(u,x),(v,y)] = <u| E(|x><y|) |v>, row index u*dim_in + x.
struct QuantumChannel {
    int dim_in = 0;
    int dim_out = 0;
    ComplexMatrix choi;

    ComplexMatrix apply(const ComplexMatrix& rho) const;
    CptpReport validate_cptp(double tol = 1e-9) const;
};

// Choi <-> superoperator reshuffle (square channels).
ComplexMatrix choi_from_superop(const ComplexMatrix& s, int n);
ComplexMatrix superop_from_choi(const ComplexMatrix& j, int n);
Superoperator superop_of_channel(const QuantumChannel& e);
QuantumChannel channel_from_superop_matrix(const ComplexMatrix& s, int n);

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
QuantumChannel channel_power(const QuantumChannel& e, long n);
QuantumChannel identity_channel(int n);

// A_{(k,l),(k',l')} = 1/2 sum_j a_{j;(k,l)} conj(a_{j;(k',l')}) with a_j the
// computational-basis entries of L_j.
OvercompleteGKS gks_from_lindblad_ops(const LindbladModel& model);

// Spectral factorization of A; the recovered operators are unique only up
// to unitary mixing, so callers compare generators, not operators.
LindbladModel lindblad_ops_from_gks(const OvercompleteGKS& gks, double psd_tol = 1e-9);

Superoperator liouvillian(const LindbladModel& model);
Superoperator liouvillian(const OvercompleteGKS& gks);

// e^{L t} as a channel; the oracle every construction in this project is
// measured against.
QuantumChannel exact_channel(const Superoperator& generator, double t);

struct ChoiDistance {
    double lower = 0.0;                 // ||J1 - J2||_1 / N
    double upper = 0.0;                 // ||J1 - J2||_1
};

// Bracketing pair for the diamond distance: lower <= ||.||_diamond <= upper.
ChoiDistance choi_distance(const QuantumChannel& e1, const QuantumChannel& e2);

// ||T(rho)||_1 for a unit-trace-norm rho: certified lower bound on the
// 1->1 norm of T.
double one_to_one_norm_witness(const Superoperator& t, const ComplexMatrix& rho);

} // namespace lindsim

#endif
