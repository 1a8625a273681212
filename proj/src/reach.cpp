#include "stpnet/reach.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "stpnet/errors.hpp"
#include "stpnet/logic_core.hpp"

namespace stpnet {

ReachabilityResult reach_matrix(const BooleanMatrix& M, bool keepPerStep) {
    if (!M.square()) throw DimensionError("reach_matrix: matrix is not square");
    ReachabilityResult r;
    // closure(k) covers walks of length 1..k; C <- C + C*C doubles k until nothing changes.
    BooleanMatrix C = M;
    for (;;) {
        BooleanMatrix next = bool_add(C, bool_mul(C, C));
        if (next == C) break;
        C = std::move(next);
    }
    r.C = std::move(C);
    if (keepPerStep) {
        std::vector<BooleanMatrix> powers;
        if (M.rows() > 0) powers.push_back(M);
        for (std::size_t s = 2; s <= M.rows(); ++s) powers.push_back(bool_mul(powers.back(), M));
        r.perStep = std::move(powers);
    }
    return r;
}

BooleanMatrix reach_matrix_by_powers(const BooleanMatrix& M) {
    if (!M.square()) throw DimensionError("reach_matrix: matrix is not square");
    BooleanMatrix sum(M.rows(), M.cols());
    if (M.rows() == 0) return sum;
    BooleanMatrix power = M;
    for (std::size_t s = 1; s <= M.rows(); ++s) {
        sum = bool_add(sum, power);
        if (s < M.rows()) power = bool_mul(power, M);
    }
    return sum;
}

bool is_reachable(const ReachabilityResult& reach, std::size_t from, std::size_t to) {
    if (from >= reach.C.rows() || to >= reach.C.rows()) throw DimensionError("is_reachable: state index out of range");
    return reach.C.get(to, from);
}

bool is_reachable(const BooleanMatrix& M, std::size_t from, std::size_t to) {
    if (from >= M.rows() || to >= M.rows()) throw DimensionError("is_reachable: state index out of range");
    return is_reachable(reach_matrix(M), from, to);
}

bool is_invariant_set(const BooleanMatrix& M, const StateSet& Z) {
    if (!M.square()) throw DimensionError("is_invariant_set: matrix is not square");
    if (Z.empty()) throw DimensionError("is_invariant_set: empty set");
    std::vector<bool> member(M.rows(), false);
    for (auto z : Z) {
        if (z >= M.rows()) throw DimensionError("is_invariant_set: state index out of range");
        member[z] = true;
    }
    for (auto j : Z)
        for (std::size_t i = 0; i < M.rows(); ++i)
            if (M.get(i, j) && !member[i]) return false;
    return true;
}

BooleanMatrix permute(const BooleanMatrix& M, const std::vector<std::size_t>& permutation) {
    if (!M.square() || permutation.size() != M.rows()) throw DimensionError("permute: size mismatch");
    BooleanMatrix out(M.rows(), M.cols());
    for (std::size_t a = 0; a < permutation.size(); ++a)
        for (std::size_t b = 0; b < permutation.size(); ++b)
            if (M.get(permutation[a], permutation[b])) out.set(a, b);
    return out;
}

PartitionCheck check_attractor_partition(const BooleanMatrix& M, const std::vector<StateSet>& sets) {
    if (!M.square()) throw DimensionError("check_attractor_partition: matrix is not square");
    PartitionCheck check;
    std::vector<bool> used(M.rows(), false);
    for (const auto& Z : sets) {
        StateSet sorted(Z);
        std::sort(sorted.begin(), sorted.end());
        for (auto z : sorted) {
            if (z >= M.rows()) throw DimensionError("state " + std::to_string(z + 1) + " out of range");
            if (used[z]) throw DimensionError("sets overlap at state " + std::to_string(z + 1));
            used[z] = true;
        }
        check.sets.push_back(std::move(sorted));
    }
    check.verdict = true;
    for (const auto& Z : check.sets)
        if (Z.empty() || !is_invariant_set(M, Z)) check.verdict = false;
    if (check.verdict) {
        for (const auto& Z : check.sets) check.permutation.insert(check.permutation.end(), Z.begin(), Z.end());
        for (std::size_t s = 0; s < M.rows(); ++s)
            if (!used[s]) check.permutation.push_back(s);
        check.permuted = permute(M, check.permutation);
    }
    return check;
}

std::vector<StateSet> strongly_connected_components(const BooleanMatrix& M) {
    if (!M.square()) throw DimensionError("strongly_connected_components: matrix is not square");
    const std::size_t n = M.rows();
    const BooleanMatrix succ = M.transpose();  // row j lists successors of j
    std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<std::size_t> stack;
    std::vector<StateSet> components;
    std::size_t counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        onStack[v] = true;
        for (auto w : succ.row_support(v)) {
            if (index[w] == SIZE_MAX) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (onStack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            StateSet comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                onStack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            components.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == SIZE_MAX) visit(v);
    // Tarjan emits sinks first.
    std::reverse(components.begin(), components.end());
    return components;
}

} // namespace stpnet
