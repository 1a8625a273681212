#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/errors.hpp"
#include "stpnet/logical_matrix.hpp"

namespace stpnet {

using BigInt = boost::multiprecision::cpp_int;

/// Row-major dense matrix over an ordinary ring (integers or big integers).
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static DenseMatrix from(const BooleanMatrix& b) {
        DenseMatrix m(b.rows(), b.cols());
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b.get(i, j)) m(i, j) = T(1);
        return m;
    }

    static DenseMatrix from(const LogicalMatrix& l) {
        DenseMatrix m(l.rows(), l.cols());
        for (std::size_t j = 0; j < l.cols(); ++j) m(l.index(j), j) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T trace() const {
        T t(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = DenseMatrix<long long>;
using CountMatrix = DenseMatrix<BigInt>;

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    DenseMatrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

template <class T>
DenseMatrix<T> kron(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    DenseMatrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

/// Left semi-tensor product (A (x) I_{t/n}) (B (x) I_{t/p}), t = lcm(n, p).
template <class T>
DenseMatrix<T> stp(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    const std::size_t t = std::lcm(a.cols(), b.rows());
    return multiply(kron(a, DenseMatrix<T>::identity(t / a.cols())),
                    kron(b, DenseMatrix<T>::identity(t / b.rows())));
}

} // namespace stpnet
