#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/dense_matrix.hpp"
#include "stpnet/ts_model.hpp"

namespace stpnet {

/// A closed state sequence; the edge from back() to front() is implied.
using Cycle = std::vector<std::size_t>;

enum class CycleClass { FixedPoint, SimpleCycle, PowerCycle, CompoundCycle };

const char* to_string(CycleClass c);

struct CycleReport {
    std::size_t sMax = 0;
    /// counts[s - 1] = number of cycles of length s (rotation classes of
    /// closed walks whose minimal period is s).
    std::vector<BigInt> counts;
    std::vector<std::size_t> fixedPoints;
    /// Canonical rotation, lexicographic order.
    std::vector<Cycle> simpleCycles;
    bool truncated = false;
};

/// N_1..N_sMax from traces of integer powers of M. Throws InternalError if
/// a division that the counting argument guarantees exact leaves a remainder.
std::vector<BigInt> count_cycles(const BooleanMatrix& M, std::size_t sMax);

std::vector<std::size_t> enumerate_fixed_points(const BooleanMatrix& M);

struct SimpleCycleOptions {
    /// Longest cycle reported; defaults to the state count.
    std::optional<std::size_t> maxLength;
    std::size_t cap = 1'000'000;
    /// When false, exceeding `cap` throws CapExceeded.
    bool allowTruncation = false;
};

struct SimpleCycleResult {
    std::vector<Cycle> cycles;
    bool truncated = false;
};

/// Elementary circuits of the graph of M (edge j -> i when M(i, j) = 1).
SimpleCycleResult enumerate_simple_cycles(const BooleanMatrix& M, const SimpleCycleOptions& options = {});

/// Rotation putting the smallest state first; among several such rotations
/// the lexicographically smallest.
Cycle canonical_rotation(const Cycle& c);

/// Throws InvalidTrajectory unless `traj` is a closed walk of M.
void require_closed_walk(const BooleanMatrix& M, const Cycle& traj);

CycleClass classify_cycle(const BooleanMatrix& M, const Cycle& traj);

struct DecompositionNode {
    Cycle cycle;
    /// Position in the parent's cycle where this one is spliced in.
    std::size_t offset = 0;
    std::vector<DecompositionNode> children;
};

/// Result of repeatedly cutting out the first closed sub-walk found by a
/// left-to-right scan: extracted[i] was removed at position at[i] of the
/// sequence as it stood then, leaving `residue`, itself a simple cycle.
struct CycleDecomposition {
    std::vector<Cycle> extracted;
    std::vector<std::size_t> at;
    Cycle residue;

    /// Undo the extractions in reverse order.
    Cycle reconstruct() const;
    /// Residue as the root; each extracted cycle hangs off the cycle that
    /// owns its anchor state once everything is reinserted.
    DecompositionNode tree() const;
};

/// Scans `traj` from its first element. Throws InvalidTrajectory on empty input.
CycleDecomposition decompose_cycle(const Cycle& traj);
CycleDecomposition decompose_cycle(const BooleanMatrix& M, const Cycle& traj);

CycleReport analyze_cycles(const BooleanMatrix& M, std::size_t sMax, const SimpleCycleOptions& options = {});

enum class ControlMode { Undistinguished, Distinguished };

/// Cycles of a controlled system after folding or lifting its inputs.
CycleReport control_cycles(const TransitionSystem& ts, std::size_t sMax, ControlMode mode,
                           const SimpleCycleOptions& options = {});

} // namespace stpnet
