#include <bit>
#include <string>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/errors.hpp"
#include "stpnet/logical_matrix.hpp"

namespace stpnet {

DeltaVector::DeltaVector(std::size_t dim, std::size_t index) : dim_(dim), index_(index) {
    if (dim == 0 || index == 0 || index > dim)
        throw DimensionError("delta_" + std::to_string(dim) + "^" + std::to_string(index) + " is not a unit vector");
}

LogicalMatrix::LogicalMatrix(std::size_t rows, std::vector<std::size_t> rowOfColumn)
    : rows_(rows), index_(std::move(rowOfColumn)) {
    if (rows_ == 0) throw DimensionError("logical matrix needs at least one row");
    for (auto r : index_)
        if (r >= rows_) throw DimensionError("logical matrix column points past row " + std::to_string(rows_));
}

LogicalMatrix LogicalMatrix::delta(std::size_t rows, const std::vector<std::size_t>& oneBased) {
    std::vector<std::size_t> idx;
    idx.reserve(oneBased.size());
    for (auto i : oneBased) {
        if (i == 0 || i > rows)
            throw DimensionError("delta_" + std::to_string(rows) + " index " + std::to_string(i) + " out of range");
        idx.push_back(i - 1);
    }
    return LogicalMatrix(rows, std::move(idx));
}

LogicalMatrix LogicalMatrix::identity(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return LogicalMatrix(n, std::move(idx));
}

std::vector<std::size_t> LogicalMatrix::delta_indices() const {
    std::vector<std::size_t> out(index_);
    for (auto& i : out) ++i;
    return out;
}

LogicalMatrix LogicalMatrix::block(std::size_t first, std::size_t count) const {
    if (first + count > cols()) throw DimensionError("column block out of range");
    return LogicalMatrix(rows_, std::vector<std::size_t>(index_.begin() + first, index_.begin() + first + count));
}

BooleanMatrix::BooleanMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

BooleanMatrix::BooleanMatrix(const LogicalMatrix& m) : BooleanMatrix(m.rows(), m.cols()) {
    for (std::size_t j = 0; j < m.cols(); ++j) set(m.index(j), j);
}

BooleanMatrix BooleanMatrix::identity(std::size_t n) {
    BooleanMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BooleanMatrix BooleanMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BooleanMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("ragged Boolean matrix rows");
        for (std::size_t j = 0; j < cols; ++j) {
            if (rows[i][j] != 0 && rows[i][j] != 1) throw DimensionError("Boolean matrix entry is not 0 or 1");
            if (rows[i][j]) m.set(i, j);
        }
    }
    return m;
}

BooleanMatrix BooleanMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> v;
    for (auto r : rows) v.emplace_back(r);
    return from_rows(v);
}

void BooleanMatrix::set(std::size_t row, std::size_t col, bool value) {
    if (row >= rows_ || col >= cols_) throw DimensionError("Boolean matrix index out of range");
    auto& w = bits_[row * stride_ + (col >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (col & 63);
    w = value ? (w | bit) : (w & ~bit);
}

std::size_t BooleanMatrix::count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::vector<std::size_t> BooleanMatrix::column_support(std::size_t col) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows_; ++i)
        if (get(i, col)) out.push_back(i);
    return out;
}

std::vector<std::size_t> BooleanMatrix::row_support(std::size_t row) const {
    std::vector<std::size_t> out;
    auto words = row_words(row);
    for (std::size_t k = 0; k < stride_; ++k) {
        std::uint64_t w = words[k];
        while (w) {
            out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

BooleanMatrix BooleanMatrix::transpose() const {
    BooleanMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (auto j : row_support(i)) t.set(j, i);
    return t;
}

BooleanMatrix BooleanMatrix::block_columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw DimensionError("column block out of range");
    BooleanMatrix b(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j)
            if (get(i, first + j)) b.set(i, j);
    return b;
}

bool BooleanMatrix::is_logical() const {
    std::vector<std::size_t> perColumn(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (auto j : row_support(i)) ++perColumn[j];
    for (auto c : perColumn)
        if (c != 1) return false;
    return true;
}

bool BooleanMatrix::at_most_one_per_column() const {
    std::vector<std::size_t> perColumn(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (auto j : row_support(i))
            if (++perColumn[j] > 1) return false;
    return true;
}

LogicalMatrix BooleanMatrix::to_logical() const {
    if (!is_logical()) throw DimensionError("Boolean matrix is not logical");
    std::vector<std::size_t> idx(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (auto j : row_support(i)) idx[j] = i;
    return LogicalMatrix(rows_, std::move(idx));
}

std::vector<std::vector<int>> BooleanMatrix::to_rows() const {
    std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (auto j : row_support(i)) out[i][j] = 1;
    return out;
}

} // namespace stpnet
