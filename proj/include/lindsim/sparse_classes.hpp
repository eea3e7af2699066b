#ifndef LINDSIM_SPARSE_CLASSES_HPP
#define LINDSIM_SPARSE_CLASSES_HPP

#include "lindsim/stinespring.hpp"

namespace lindsim {

// ---- identical-coordinate: A_{(i,i),(i,i)} = a_i, A_{(i,i),(j,j)} = c_i + c_j ----

struct IdenticalCoordinateSpec {
    int dim = 0;
    std::vector<double> a;
    std::vector<double> c;

    void validate() const;              // a_i >= 0, |c_i+c_j| <= sqrt(a_i a_j)
    OvercompleteGKS gks() const;
    // Numerical PSD status of the N x N coefficient core; the pairwise
    // constraints do not imply this in general, so disagreements are
    // reported rather than silently trusted.
    double min_core_eigenvalue() const;
};

QuantumChannel identical_coordinate_channel(const IdenticalCoordinateSpec& spec, double t);
SparseStinespringIsometry identical_coordinate_isometry(const IdenticalCoordinateSpec& spec, double t);

// ---- strongly 1-sparse diagonal ----

struct Strongly1SparseSpec {
    int dim = 0;
    std::vector<int> nu;                // involution
    std::vector<double> off;            // off[x] = a_{nu(x),x}; must be 0 at fixed points
    std::vector<double> diag;           // diag[x] = a_{x,x}

    void validate() const;
    OvercompleteGKS gks() const;
    Superoperator generator() const;
};

QuantumChannel strongly_1sparse_channel(const Strongly1SparseSpec& spec, double t);
SparseStinespringIsometry strongly_1sparse_isometry(const Strongly1SparseSpec& spec, double t);

// ---- d-sparse diagonal ----

struct DiagonalEntry {
    int k, l;
    double value;
};

struct DiagonalSpec {
    int dim = 0;
    int d = 0;
    std::vector<DiagonalEntry> entries; // a_{k,l} >= 0, row/column d-sparse

    void validate() const;
    ComplexMatrix dense() const;
    Superoperator generator() const;
};

// Edge-coloring decomposition: at most 3d^2 strongly 1-sparse pieces (plus
// one diagonal piece); entries are moved verbatim, so the sum is exact.
std::vector<Strongly1SparseSpec> decompose_d_sparse(const DiagonalSpec& spec);

QuantumChannel d_sparse_diagonal_channel(const DiagonalSpec& spec, double t, long r);

// ---- dense diagonal ----

struct DenseDiagonalSpec {
    int dim = 0;
    std::vector<double> a;              // a_k >= 0; a_{k,l} = a_k for every l

    void validate() const;
    double total() const;               // S = sum_k a_k
    double prefix_sum(int k1, int k2) const;
    Superoperator generator() const;
};

QuantumChannel dense_diagonal_channel(const DenseDiagonalSpec& spec, double t);

// Gate-sequence construction: composes U1, SWAP, P1, U2, P2 and the
// controlled flip as explicit matrices, verifies the product prepares the
// dense-diagonal isometry columns, and returns the
// isometry re-encoded on the standard compact ancilla.
SparseStinespringIsometry dense_diagonal_gate_sequence(const DenseDiagonalSpec& spec, double t);

// ---- 1-ket-sparse ----

struct OneKetSparseSpec {
    int dim = 0;
    std::vector<int> nu;                // involution
    std::vector<double> a;              // a[x] = a_{x,nu(x)}, symmetric on orbits
    std::vector<double> aprime;         // a'[x] = a_{x,x}
    std::vector<double> b;              // real, b^2 <= 4 a a' per orbit; 0 at fixed points

    void validate() const;
    Superoperator generator() const;
};

QuantumChannel one_ket_sparse_channel(const OneKetSparseSpec& spec, double t);
SparseStinespringIsometry one_ket_sparse_isometry(const OneKetSparseSpec& spec, double t);

// ---- sparse Lindblad operators (section 5) ----

struct SparseLindbladOpSpec {
    int dim = 0;
    int k = 0;
    std::vector<std::vector<int>> perms;   // nu_1..nu_k, with nu_i(x) != nu_j(x)
    ComplexMatrix coeffs;                  // N x k, c_{j,i} = coefficient of |nu_i(j)> in L|j>
    double rescale = 1.0;                  // factor folded out so ||L||_max <= 1

    void validate() const;
    ComplexMatrix lindblad_op() const;     // rescaled operator (max entry <= 1)
    Superoperator generator() const;       // of the rescaled operator
    double max_entry() const;
};

// Cover a k-sparse matrix by at most k weighted permutations: pad the
// nonzero pattern to a k-regular simple bipartite graph with zero-weight
// edges, then peel off perfect matchings.
SparseLindbladOpSpec permutation_cover(const ComplexMatrix& l, int k);

// Exact short-time isometry for a 1-sparse operator:
// V|m> = sqrt(1 - eps|c_m|^2)|m>|0> + sqrt(eps) c_m |nu(m)>|1>.
QuantumChannel short_time_map_1sparse(const SparseLindbladOpSpec& spec, double eps);

// The approximate short-time isometry V_eps (rows (u, anc), anc in {0,1}):
// first-order jump amplitudes on ancilla |1> plus a second-order correction
// on ancilla |0> summed over all ordered pairs (i,j), so the first-order
// defect of Tr_anc[V rho V^dag] against (1 + eps L) cancels exactly.
ComplexMatrix short_time_isometry_ksparse(const SparseLindbladOpSpec& spec, double eps);

// Hamiltonian embedding H = [[0, V],[V^dag, 0]],
// E_eps(rho) = Tr_anc[e^{-iH pi/2}(|2><2| (x) rho) e^{iH pi/2}].
QuantumChannel short_time_map_ksparse(const SparseLindbladOpSpec& spec, double eps);

// n-fold composition of the short-time map with eps = t/n (times are
// in the rescaled clock; callers fold spec.rescale into t).
QuantumChannel sparse_op_evolution(const SparseLindbladOpSpec& spec, double t, long n);

// Step-count helper for a target accuracy: n = ceil(t^2 k^4 / eps).
long steps_for_accuracy(double t, int k, double eps);

} // namespace lindsim

#endif
