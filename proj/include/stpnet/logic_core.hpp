#pragma once

// Exact matrix algebra: semi-tensor, Kronecker and Khatri-Rao products on
// logical matrices, Boolean sum/product/power, and big-integer walk counts.

#include <cstddef>
#include <vector>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/dense_matrix.hpp"
#include "stpnet/logical_matrix.hpp"

namespace stpnet {

LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b);
DeltaVector stp(const DeltaVector& a, const DeltaVector& b);

LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b);
BooleanMatrix kron(const BooleanMatrix& a, const BooleanMatrix& b);

/// Column-wise STP; throws DimensionError when column counts differ.
LogicalMatrix khatri_rao(const LogicalMatrix& a, const LogicalMatrix& b);

BooleanMatrix bool_add(const BooleanMatrix& a, const BooleanMatrix& b);
BooleanMatrix bool_mul(const BooleanMatrix& a, const BooleanMatrix& b);
/// s-fold Boolean product, s >= 1.
BooleanMatrix bool_power(const BooleanMatrix& a, std::size_t s);

/// y = A x over the Boolean semiring; `x` is a 0/1 vector of length cols(A).
std::vector<bool> bool_apply(const BooleanMatrix& a, const std::vector<bool>& x);

CountMatrix to_count(const BooleanMatrix& a);
BooleanMatrix booleanize(const CountMatrix& a);

/// tr(A^s) over the integers: the number of closed walks of length s.
BigInt int_power_trace(const BooleanMatrix& a, std::size_t s);
/// tr(A^1), ..., tr(A^sMax).
std::vector<BigInt> power_traces(const BooleanMatrix& a, std::size_t sMax);

} // namespace stpnet
