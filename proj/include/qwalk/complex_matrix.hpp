#ifndef QWALK_COMPLEX_MATRIX_HPP
#define QWALK_COMPLEX_MATRIX_HPP

#include <cassert>
#include <complex>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix. Everything in this library is at most
/// 41x41, so no attempt is made at blocking or sparsity.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const Complex& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        assert(cols_ == o.rows_);
        ComplexMatrix out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Complex a = (*this)(i, k);
                if (a == 0.0) continue;
                for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
            }
        return out;
    }

    ComplexVector operator*(const ComplexVector& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        ComplexVector out(rows_);
        for (int i = 0; i < rows_; ++i) {
            Complex acc = 0.0;
            for (int k = 0; k < cols_; ++k) acc += (*this)(i, k) * v[k];
            out[i] = acc;
        }
        return out;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        ComplexMatrix out(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
        return out;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    ComplexMatrix pow(long t) const {
        assert(rows_ == cols_ && t >= 0);
        ComplexMatrix result = identity(rows_);
        ComplexMatrix base = *this;
        while (t > 0) {
            if (t & 1) result = result * base;
            base = base * base;
            t >>= 1;
        }
        return result;
    }

    /// Largest entry magnitude.
    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    double max_abs_diff(const ComplexMatrix& o) const { return (*this - o).max_abs(); }

    /// Max-norm deviation from unitarity, |A^dagger A - I|_max.
    double unitarity_defect() const {
        return (adjoint() * (*this)).max_abs_diff(identity(cols_));
    }

private:
    int rows_ = 0, cols_ = 0;
    ComplexVector data_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
    return out;
}

inline double norm_squared(const ComplexVector& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return s;
}

} // namespace qwalk

#endif
