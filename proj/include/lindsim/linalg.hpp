#ifndef LINDSIM_LINALG_HPP
#define LINDSIM_LINALG_HPP

#include "lindsim/matrix.hpp"

namespace lindsim {

// Eigendecomposition of a Hermitian matrix: M = U diag(lambda) U^dag with
// ascending eigenvalues and unitary U (columns are eigenvectors).
struct HermitianSpectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix reconstruct() const;
};

// Cyclic Jacobi rotations; input is symmetrized first and must be Hermitian
// within 1e-12 * ||M||. Converges when the off-diagonal Frobenius mass drops
// below 1e-13 * ||M||_F.
HermitianSpectrum hermitian_eig(const ComplexMatrix& m);

// Matrix exponential by scaling-and-squaring over a fixed-order Taylor
// series; the scaled one-norm is brought below 0.5 before the series.
ComplexMatrix expm(const ComplexMatrix& m);

// Sum of singular values, computed from the Hermitian spectrum of M^dag M.
double trace_norm(const ComplexMatrix& m);

// Largest singular value (sqrt of the top eigenvalue of M^dag M).
double spectral_norm(const ComplexMatrix& m);

enum class Subsystem { First, Second };

// Reduce an operator on C^{dA} (x) C^{dB}, keeping the selected factor.
// Composite index convention: (a, b) -> a * dB + b.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem keep);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace lindsim

#endif
