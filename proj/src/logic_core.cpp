#include "stpnet/logic_core.hpp"

#include <numeric>

#include "stpnet/errors.hpp"

namespace stpnet {

LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b) {
    const std::size_t t = std::lcm(a.cols(), b.rows());
    const std::size_t padA = t / a.cols();
    const std::size_t padB = t / b.rows();
    std::vector<std::size_t> idx(b.cols() * padB);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        // Row of the 1 in column j of (B (x) I_padB), then pushed through (A (x) I_padA).
        const std::size_t mid = b.index(j / padB) * padB + j % padB;
        idx[j] = a.index(mid / padA) * padA + mid % padA;
    }
    return LogicalMatrix(a.rows() * padA, std::move(idx));
}

DeltaVector stp(const DeltaVector& a, const DeltaVector& b) {
    return DeltaVector(a.dim() * b.dim(), a.position() * b.dim() + b.index());
}

LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b) {
    std::vector<std::size_t> idx(a.cols() * b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t l = 0; l < b.cols(); ++l) idx[j * b.cols() + l] = a.index(j) * b.rows() + b.index(l);
    return LogicalMatrix(a.rows() * b.rows(), std::move(idx));
}

BooleanMatrix kron(const BooleanMatrix& a, const BooleanMatrix& b) {
    BooleanMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (auto j : a.row_support(i))
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (auto l : b.row_support(k)) r.set(i * b.rows() + k, j * b.cols() + l);
    return r;
}

LogicalMatrix khatri_rao(const LogicalMatrix& a, const LogicalMatrix& b) {
    if (a.cols() != b.cols())
        throw DimensionError("khatri_rao: column counts differ (" + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.cols()) + ")");
    std::vector<std::size_t> idx(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) idx[j] = a.index(j) * b.rows() + b.index(j);
    return LogicalMatrix(a.rows() * b.rows(), std::move(idx));
}

BooleanMatrix bool_add(const BooleanMatrix& a, const BooleanMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("bool_add: dimensions differ");
    BooleanMatrix r(a);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = r.row_words(i);
        auto src = b.row_words(i);
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] |= src[k];
    }
    return r;
}

BooleanMatrix bool_mul(const BooleanMatrix& a, const BooleanMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("bool_mul: inner dimensions differ");
    BooleanMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = r.row_words(i);
        for (auto k : a.row_support(i)) {
            auto src = b.row_words(k);
            for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
        }
    }
    return r;
}

BooleanMatrix bool_power(const BooleanMatrix& a, std::size_t s) {
    if (!a.square()) throw DimensionError("bool_power: matrix is not square");
    if (s == 0) throw DimensionError("bool_power: exponent must be positive");
    BooleanMatrix result = a;
    BooleanMatrix base = a;
    --s;
    while (s) {
        if (s & 1) result = bool_mul(result, base);
        s >>= 1;
        if (s) base = bool_mul(base, base);
    }
    return result;
}

std::vector<bool> bool_apply(const BooleanMatrix& a, const std::vector<bool>& x) {
    if (x.size() != a.cols()) throw DimensionError("bool_apply: vector length differs from column count");
    std::vector<bool> y(a.rows(), false);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (auto j : a.row_support(i))
            if (x[j]) {
                y[i] = true;
                break;
            }
    return y;
}

CountMatrix to_count(const BooleanMatrix& a) { return CountMatrix::from(a); }

BooleanMatrix booleanize(const CountMatrix& a) {
    BooleanMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) r.set(i, j);
    return r;
}

std::vector<BigInt> power_traces(const BooleanMatrix& a, std::size_t sMax) {
    if (!a.square()) throw DimensionError("power_traces: matrix is not square");
    const std::size_t n = a.rows();
    // predecessors[j] = { k : A(k, j) = 1 }, so (P A)(i, j) = sum over k of P(i, k).
    std::vector<std::vector<std::size_t>> predecessors(n);
    for (std::size_t k = 0; k < n; ++k)
        for (auto j : a.row_support(k)) predecessors[j].push_back(k);

    std::vector<BigInt> traces;
    traces.reserve(sMax);
    CountMatrix power = to_count(a);
    for (std::size_t s = 1; s <= sMax; ++s) {
        if (s > 1) {
            CountMatrix next(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    BigInt acc = 0;
                    for (auto k : predecessors[j]) acc += power(i, k);
                    next(i, j) = std::move(acc);
                }
            power = std::move(next);
        }
        traces.push_back(power.trace());
    }
    return traces;
}

BigInt int_power_trace(const BooleanMatrix& a, std::size_t s) {
    if (s == 0) throw DimensionError("int_power_trace: exponent must be positive");
    return power_traces(a, s).back();
}

} // namespace stpnet
