#ifndef LINDSIM_STINESPRING_HPP
#define LINDSIM_STINESPRING_HPP

#include <functional>

#include "lindsim/lindblad.hpp"

namespace lindsim {

// Invariant sparsity structure: a neighbor permutation nu whose
// orbits S_x = {x, nu(x), ..., nu^{r_x - 1}(x)} partition [N], with orbit
// sizes r_x bounded by d.
struct SparsityPattern {
    int dim = 0;
    int d = 0;
    std::vector<int> nu;
    std::vector<int> order;             // r_x per x (constant on each orbit)

    int nu_power(int x, int i) const;
    std::vector<std::vector<int>> orbits() const;
    void validate() const;
};

// Build the pattern from explicitly ordered orbits; nu maps each element to
// its cyclic successor within its orbit.
SparsityPattern pattern_from_sets(int dim, const std::vector<std::vector<int>>& sets);

// All-singleton pattern (identity nu), the d=1 case.
SparsityPattern singleton_pattern(int dim);

// Gram matrix of a channel: the dN x dN matrix with blocks
// M[(i,x),(j,y)] = a_ij^{xy}, composite index (i,x) -> i*N + x.
struct GramMatrix {
    SparsityPattern pattern;
    ComplexMatrix m;

    cd coeff(int i, int j, int x, int y) const { return m(i * pattern.dim + x, j * pattern.dim + y); }
    // Trace preservation: sum_j a_jj^{xx} = 1 and, for i >= 1,
    // sum_j a_{(i+j) mod r, j}^{x nu^i(x)} = 0.
    double trace_constraint_residual() const;
};

// Reads a_ij^{xy} off the Choi matrix; throws if the channel has support
// outside the pattern (reporting the offending (x,y) pair).
GramMatrix gram_of_channel(const QuantumChannel& channel, const SparsityPattern& pattern,
                           double support_tol = 1e-9);

// Unnormalized ancilla states |phi_{x,i}>, one per (x, i in [r_x]), with
// <phi_{y,j}|phi_{x,i}> = a_ij^{xy}. Ancilla dimension fixed at dN+2.
struct AncillaFamily {
    int dim = 0;
    int d = 0;
    int anc_dim = 0;
    std::vector<std::vector<cd>> phi;   // phi[x*d + i]

    const std::vector<cd>& at(int x, int i) const { return phi[static_cast<size_t>(x) * d + i]; }
    std::vector<cd>& at(int x, int i) { return phi[static_cast<size_t>(x) * d + i]; }
};

// Global factorization M = G G^dag via the Hermitian spectrum.
AncillaFamily gram_vectors_full(const GramMatrix& gram, double psd_tol = 1e-9);

// Entry accessor for a Gram matrix; implementations should bump a counter
// per consultation when query accounting matters.
using GramEntryOracle = std::function<cd(int row, int col)>;

struct LowRankResult {
    std::vector<cd> v;
    long queries = 0;
    double condition_number = 0.0;
};

// Low-rank Gram-vector extraction: recover the Gram vector of row x from the entries
// of M restricted to S (plus x), using at most (|S|+1)^2 oracle queries.
LowRankResult low_rank_gram_vector(const GramEntryOracle& oracle, int rank,
                                   const std::vector<int>& s, int x);

// Greedy pivoted selection of a full-rank principal submatrix: repeatedly
// add the index maximizing the smallest eigenvalue of the extension. Rank is
// decided by the eigenvalue threshold 1e-10 * ||M||.
std::vector<int> greedy_principal_submatrix(const ComplexMatrix& m, int rank);
int numeric_rank(const ComplexMatrix& m, double rel_tol = 1e-10);

// Realized sparse Stinespring isometry V|x> = sum_i |nu^i(x)>|phi_{x,i}>,
// stored as an (N * anc_dim) x N matrix, row index u * anc_dim + a.
struct SparseStinespringIsometry {
    SparsityPattern pattern;
    AncillaFamily ancilla;
    ComplexMatrix v;

    double isometry_defect() const;     // ||V^dag V - I||_max
};

SparseStinespringIsometry isometry_from_ancilla(const SparsityPattern& pattern,
                                                const AncillaFamily& ancilla,
                                                double tol = 1e-9);

// E(rho) = Tr_anc[V rho V^dag], assembled directly into the Choi matrix.
QuantumChannel channel_from_isometry(const SparseStinespringIsometry& iso);

struct TwoStageReport {
    bool pass = false;
    double max_error = 0.0;             // worst column deviation over k in [d]
    double orthogonality_residual = 0.0; // pairwise-family orthogonality precondition
    int d = 0;
};

// Builds the prepare stage U_forward and the uncompute stage U_backward as
// explicit unitaries on
// C^{d+2} (x) C^N (x) C^anc for the orbit of x, and checks
// U_bwd U_fwd |0>|nu^k(x)>|0> = |0> sum_j |nu^{j+k}(x)>|phi_{nu^k(x),j}>.
TwoStageReport verify_two_stage(const SparseStinespringIsometry& iso, int x,
                                double tol = 1e-9);

// Channel of a Lindbladian acting on the first c qubits of an
// n-qubit system, produced through the rank-2^{2c} Gram path (Algorithm 1).
QuantumChannel local_lindbladian_channel(const LindbladModel& l_c, int c, int n, double t);

// Unitary completion mapping |0> to the given (nonzero) state; Householder
// reflection, deterministic.
ComplexMatrix householder_preparation(const std::vector<cd>& target);

} // namespace lindsim

#endif
