#include "lindsim/matrix.hpp"

#include <cmath>

namespace lindsim {

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw validation_error("matrix add: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw validation_error("matrix sub: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd s) {
    for (auto& v : a_) v *= s;
    return *this;
}

namespace {

// Split-plane product for larger sizes: four real blocked multiplies
// vectorize far better than a std::complex inner loop.
void multiply_split(const ComplexMatrix& A, const ComplexMatrix& B, ComplexMatrix& C) {
    const int n = A.rows(), k = A.cols(), m = B.cols();
    std::vector<double> ar(static_cast<size_t>(n) * k), ai(ar.size());
    std::vector<double> br(static_cast<size_t>(k) * m), bi(br.size());
    std::vector<double> cr(static_cast<size_t>(n) * m, 0.0), ci(cr.size(), 0.0);
    for (size_t i = 0; i < ar.size(); ++i) {
        ar[i] = A.data()[i].real();
        ai[i] = A.data()[i].imag();
    }
    for (size_t i = 0; i < br.size(); ++i) {
        br[i] = B.data()[i].real();
        bi[i] = B.data()[i].imag();
    }
    for (int i = 0; i < n; ++i) {
        const double* arow = &ar[static_cast<size_t>(i) * k];
        const double* aimg = &ai[static_cast<size_t>(i) * k];
        double* crow = &cr[static_cast<size_t>(i) * m];
        double* cimg = &ci[static_cast<size_t>(i) * m];
        for (int p = 0; p < k; ++p) {
            const double x = arow[p], y = aimg[p];
            const double* brow = &br[static_cast<size_t>(p) * m];
            const double* bimg = &bi[static_cast<size_t>(p) * m];
            for (int j = 0; j < m; ++j) {
                crow[j] += x * brow[j] - y * bimg[j];
                cimg[j] += x * bimg[j] + y * brow[j];
            }
        }
    }
    for (size_t i = 0; i < cr.size(); ++i) C.data()[i] = cd(cr[i], ci[i]);
}

} // namespace

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw validation_error("matrix multiply: shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    if (a.rows() >= 32 && a.cols() >= 32 && b.cols() >= 32) {
        multiply_split(a, b, c);
        return c;
    }
    for (int i = 0; i < a.rows(); ++i) {
        for (int p = 0; p < a.cols(); ++p) {
            const cd v = a(i, p);
            if (v == cd(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += v * b(p, j);
        }
    }
    return c;
}

std::vector<cd> ComplexMatrix::apply(const std::vector<cd>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw validation_error("matrix apply: shape mismatch");
    std::vector<cd> out(rows_, cd(0.0, 0.0));
    for (int i = 0; i < rows_; ++i) {
        cd s = 0.0;
        const cd* row = &a_[static_cast<size_t>(i) * cols_];
        for (int j = 0; j < cols_; ++j) s += row[j] * v[j];
        out[i] = s;
    }
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

double ComplexMatrix::one_norm() const {
    double best = 0.0;
    for (int c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (int r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

cd ComplexMatrix::trace() const {
    cd s = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

bool ComplexMatrix::finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

} // namespace lindsim
