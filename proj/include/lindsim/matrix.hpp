#ifndef LINDSIM_MATRIX_HPP
#define LINDSIM_MATRIX_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lindsim {

using cd = std::complex<double>;

// Thrown when an input violates a documented precondition (bad dimensions,
// failed structural invariants, malformed files). CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Thrown when a numerical invariant fails during computation (lost positivity,
// non-convergence, inconsistent ancilla families). CLI maps this to exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense complex matrix, row-major. Sized for desk-scale Hilbert spaces: the
// largest objects in this project are superoperators of side N^2 <= 65536,
// used in practice only at N <= 64.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, cd(0.0, 0.0)) {
        if (rows < 0 || cols < 0) throw validation_error("ComplexMatrix: negative dimension");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cd& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cd& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cd>& data() const { return a_; }
    std::vector<cd>& data() { return a_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cd s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cd s) { return a *= s; }
    friend ComplexMatrix operator*(cd s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    std::vector<cd> apply(const std::vector<cd>& v) const;

    double frobenius_norm() const;
    double max_abs() const;
    // Maximum absolute column sum; cheap rigorous bound on the spectral norm.
    double one_norm() const;
    cd trace() const;

    bool finite() const;

private:
    int rows_, cols_;
    std::vector<cd> a_;
};

} // namespace lindsim

#endif
