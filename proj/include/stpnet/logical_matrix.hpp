#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace stpnet {

/// The canonical vector delta_dim^index, i.e. column `index` of I_dim.
/// `index` is 1-based, matching the delta notation used in model files.
class DeltaVector {
public:
    DeltaVector(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t index() const noexcept { return index_; }
    /// 0-based row of the single 1.
    std::size_t position() const noexcept { return index_ - 1; }

    friend bool operator==(const DeltaVector&, const DeltaVector&) = default;

private:
    std::size_t dim_;
    std::size_t index_;
};

/// A matrix whose every column is a unit vector. Stored as one row index per
/// column. The C++ API is 0-based; `delta()` and `delta_indices()` speak the
/// 1-based delta_m[i1, ..., in] notation.
class LogicalMatrix {
public:
    LogicalMatrix() = default;
    /// `rowOfColumn[j]` is the 0-based row of the 1 in column j.
    LogicalMatrix(std::size_t rows, std::vector<std::size_t> rowOfColumn);

    /// delta_rows[i1, ..., in] with 1-based indices.
    static LogicalMatrix delta(std::size_t rows, const std::vector<std::size_t>& oneBased);
    static LogicalMatrix delta(std::size_t rows, std::initializer_list<std::size_t> oneBased) {
        return delta(rows, std::vector<std::size_t>(oneBased));
    }
    static LogicalMatrix identity(std::size_t n);
    static LogicalMatrix from_delta(const DeltaVector& v) { return LogicalMatrix(v.dim(), {v.position()}); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return index_.size(); }
    std::size_t index(std::size_t col) const { return index_.at(col); }
    const std::vector<std::size_t>& indices() const noexcept { return index_; }
    std::vector<std::size_t> delta_indices() const;
    DeltaVector column(std::size_t col) const { return DeltaVector(rows_, index(col) + 1); }
    bool get(std::size_t row, std::size_t col) const { return index(col) == row; }

    /// Columns [first, first + count).
    LogicalMatrix block(std::size_t first, std::size_t count) const;

    friend bool operator==(const LogicalMatrix&, const LogicalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<std::size_t> index_;
};

} // namespace stpnet
