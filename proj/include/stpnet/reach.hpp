#pragma once

// Reachability via Boolean matrix powers, invariant-set checks and the
// block-triangular form that exhibits them.

#include <cstddef>
#include <optional>
#include <vector>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/ts_model.hpp"

namespace stpnet {

/// C(i, j) = 1 iff state j reaches state i in 1..n steps. Zero steps never
/// count, so C(i, i) = 1 only when i lies on a cycle.
struct ReachabilityResult {
    BooleanMatrix C;
    /// M^(1), ..., M^(n) when requested.
    std::optional<std::vector<BooleanMatrix>> perStep;
};

/// Closure by repeated Boolean squaring with a running sum.
ReachabilityResult reach_matrix(const BooleanMatrix& M, bool keepPerStep = false);
/// Sum of M^(s) for s = 1..n, term by term.
BooleanMatrix reach_matrix_by_powers(const BooleanMatrix& M);

bool is_reachable(const ReachabilityResult& reach, std::size_t from, std::size_t to);
bool is_reachable(const BooleanMatrix& M, std::size_t from, std::size_t to);

/// Every successor of a member is a member. Throws on an empty set.
bool is_invariant_set(const BooleanMatrix& M, const StateSet& Z);

struct PartitionCheck {
    std::vector<StateSet> sets;
    bool verdict = false;
    /// permutation[k] = original state placed at position k: members of
    /// sets[0], sets[1], ... in order, then the remaining states.
    std::vector<std::size_t> permutation;
    /// permuted(a, b) = M(permutation[a], permutation[b]).
    std::optional<BooleanMatrix> permuted;
};

/// Throws DimensionError on overlapping or out-of-range sets.
PartitionCheck check_attractor_partition(const BooleanMatrix& M, const std::vector<StateSet>& sets);

BooleanMatrix permute(const BooleanMatrix& M, const std::vector<std::size_t>& permutation);

/// Strongly connected components in topological order of the condensation
/// (sources first); each component sorted.
std::vector<StateSet> strongly_connected_components(const BooleanMatrix& M);

} // namespace stpnet
