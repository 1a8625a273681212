#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "stpnet/logical_matrix.hpp"

namespace stpnet {

/// Dense 0/1 matrix, bit-packed row-major in 64-bit words. Bits past
/// `cols()` in the last word of a row are always zero.
class BooleanMatrix {
public:
    BooleanMatrix() = default;
    BooleanMatrix(std::size_t rows, std::size_t cols);
    explicit BooleanMatrix(const LogicalMatrix& m);

    static BooleanMatrix identity(std::size_t n);
    static BooleanMatrix from_rows(const std::vector<std::vector<int>>& rows);
    static BooleanMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    std::size_t words_per_row() const noexcept { return stride_; }

    bool get(std::size_t row, std::size_t col) const {
        return (bits_[row * stride_ + (col >> 6)] >> (col & 63)) & 1u;
    }
    void set(std::size_t row, std::size_t col, bool value = true);

    std::span<const std::uint64_t> row_words(std::size_t row) const {
        return {bits_.data() + row * stride_, stride_};
    }
    std::span<std::uint64_t> row_words(std::size_t row) {
        return {bits_.data() + row * stride_, stride_};
    }

    std::size_t count() const;
    bool any() const { return count() != 0; }
    std::vector<std::size_t> column_support(std::size_t col) const;
    std::vector<std::size_t> row_support(std::size_t row) const;

    BooleanMatrix transpose() const;
    /// Columns [first, first + count).
    BooleanMatrix block_columns(std::size_t first, std::size_t count) const;
    /// Every column holds exactly one 1.
    bool is_logical() const;
    /// Every column holds at most one 1.
    bool at_most_one_per_column() const;
    /// Requires is_logical().
    LogicalMatrix to_logical() const;

    std::vector<std::vector<int>> to_rows() const;

    friend bool operator==(const BooleanMatrix&, const BooleanMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> bits_;
};

} // namespace stpnet
