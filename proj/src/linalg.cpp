#include "lindsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lindsim {

ComplexMatrix HermitianSpectrum::reconstruct() const {
    const int n = eigenvectors.rows();
    ComplexMatrix scaled = eigenvectors;
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) scaled(r, c) *= eigenvalues[c];
    return scaled * eigenvectors.adjoint();
}

HermitianSpectrum hermitian_eig(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("hermitian_eig: matrix not square");
    const int n = m.rows();
    const double scale = m.frobenius_norm();

    double herm_dev = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) herm_dev = std::max(herm_dev, std::abs(m(r, c) - std::conj(m(c, r))));
    if (herm_dev > 1e-12 * std::max(scale, 1.0))
        throw validation_error("hermitian_eig: input not Hermitian within tolerance");

    ComplexMatrix a(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = 1e-13 * std::max(scale, 1e-300);
    const int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        off = std::sqrt(2.0 * off);
        if (off < threshold) break;
        if (sweep == max_sweeps - 1) throw numeric_error("hermitian_eig: Jacobi did not converge");

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cd apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= threshold / n) continue;
                const cd phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Zeroing the pivot needs t^2 - 2 tau t - 1 = 0; take the
                // smaller-magnitude root for stability.
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (tau >= 0)
                    t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary on the (p,q) plane: U[p][p]=c, U[p][q]=-s*phase,
                // U[q][p]=s*conj(phase), U[q][q]=c.   A <- U^dag A U, V <- V U.
                const cd upq = -s * phase;
                const cd uqp = s * std::conj(phase);
                for (int i = 0; i < n; ++i) {
                    const cd aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * c + aiq * uqp;
                    a(i, q) = aip * upq + aiq * c;
                }
                for (int j = 0; j < n; ++j) {
                    const cd apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(uqp) * aqj;
                    a(q, j) = std::conj(upq) * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const cd vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * c + viq * uqp;
                    v(i, q) = vip * upq + viq * c;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

    HermitianSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (int c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (int r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    }
    if (!out.eigenvectors.finite()) throw numeric_error("hermitian_eig: non-finite result");
    return out;
}

ComplexMatrix expm(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("expm: matrix not square");
    const int n = m.rows();
    const double norm = m.one_norm();

    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    ComplexMatrix a = m;
    a *= cd(std::ldexp(1.0, -squarings), 0.0);

    // Horner evaluation of the degree-20 Taylor polynomial; with the scaled
    // norm <= 0.5 the series remainder is below 1e-25.
    const int order = 20;
    ComplexMatrix p = ComplexMatrix::identity(n);
    for (int j = order; j >= 1; --j) {
        p = a * p;
        p *= cd(1.0 / j, 0.0);
        p += ComplexMatrix::identity(n);
    }
    for (int s = 0; s < squarings; ++s) p = p * p;
    if (!p.finite()) throw numeric_error("expm: non-finite result");
    return p;
}

double trace_norm(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("trace_norm: matrix not square");
    auto spec = hermitian_eig(m.adjoint() * m);
    double s = 0.0;
    for (double ev : spec.eigenvalues) s += std::sqrt(std::max(ev, 0.0));
    return s;
}

double spectral_norm(const ComplexMatrix& m) {
    auto spec = hermitian_eig(m.adjoint() * m);
    return std::sqrt(std::max(spec.eigenvalues.back(), 0.0));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem keep) {
    if (!m.square() || m.rows() != dim_a * dim_b)
        throw validation_error("partial_trace: dimension mismatch");
    if (keep == Subsystem::First) {
        ComplexMatrix out(dim_a, dim_a);
        for (int a1 = 0; a1 < dim_a; ++a1)
            for (int a2 = 0; a2 < dim_a; ++a2) {
                cd s = 0.0;
                for (int b = 0; b < dim_b; ++b) s += m(a1 * dim_b + b, a2 * dim_b + b);
                out(a1, a2) = s;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (int b1 = 0; b1 < dim_b; ++b1)
        for (int b2 = 0; b2 < dim_b; ++b2) {
            cd s = 0.0;
            for (int a = 0; a < dim_a; ++a) s += m(a * dim_b + b1, a * dim_b + b2);
            out(b1, b2) = s;
        }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ar = 0; ar < a.rows(); ++ar)
        for (int ac = 0; ac < a.cols(); ++ac) {
            const cd v = a(ar, ac);
            if (v == cd(0.0, 0.0)) continue;
            for (int br = 0; br < b.rows(); ++br)
                for (int bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
        }
    return out;
}

} // namespace lindsim
