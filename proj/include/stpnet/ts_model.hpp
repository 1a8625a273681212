#pragma once

// Transition systems in algebraic form and the transformations between them:
// input folding (undistinguished control), control lifting (distinguished
// control), disturbance folding and state-feedback closed loops.

#include <cstddef>
#include <string>
#include <vector>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/logical_matrix.hpp"

namespace stpnet {

/// Sorted, duplicate-free list of 0-based state indices.
using StateSet = std::vector<std::size_t>;

struct Labels {
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

/// x(t+1) = L u(t) x(t), y(t) = H x(t).
///
/// L is n x (n*m) with column index u*n + x (0-based). The input index may
/// itself be a product (disturbance, control): u = d*controls + c, so that
/// the disturbance is the most significant STP factor. Purely control-driven
/// systems have disturbances() == 1.
class TransitionSystem {
public:
    TransitionSystem(BooleanMatrix transitions, LogicalMatrix output, std::size_t controls = 1,
                     std::size_t disturbances = 1);

    static TransitionSystem autonomous(BooleanMatrix m, LogicalMatrix output) {
        return TransitionSystem(std::move(m), std::move(output));
    }

    std::size_t states() const noexcept { return L_.rows(); }
    std::size_t inputs() const noexcept { return controls_ * disturbances_; }
    std::size_t controls() const noexcept { return controls_; }
    std::size_t disturbances() const noexcept { return disturbances_; }
    std::size_t outputs() const noexcept { return H_.rows(); }

    const BooleanMatrix& L() const noexcept { return L_; }
    const LogicalMatrix& H() const noexcept { return H_; }

    /// |successors(x, u)| <= 1 everywhere.
    bool deterministic() const { return L_.at_most_one_per_column(); }
    /// L delta_m^input, an n x n block.
    BooleanMatrix input_block(std::size_t input) const;
    StateSet successors(std::size_t state, std::size_t input) const;

    Labels labels;

    friend bool operator==(const TransitionSystem& a, const TransitionSystem& b) {
        return a.L_ == b.L_ && a.H_ == b.H_ && a.controls_ == b.controls_ && a.disturbances_ == b.disturbances_;
    }

private:
    BooleanMatrix L_;
    LogicalMatrix H_;
    std::size_t controls_;
    std::size_t disturbances_;
};

/// x(t+1) = M x(t), y(t) = H x(t).
struct AutonomousTS {
    BooleanMatrix M;
    LogicalMatrix H;

    AutonomousTS(BooleanMatrix m, LogicalMatrix h);

    std::size_t states() const noexcept { return M.rows(); }
    TransitionSystem as_ts() const { return TransitionSystem::autonomous(M, H); }

    friend bool operator==(const AutonomousTS&, const AutonomousTS&) = default;
};

/// A nominal model (no disturbance) paired with its disturbed counterpart.
/// Both share state count, control arity and output arity.
struct DisturbedModel {
    TransitionSystem nominal;
    TransitionSystem disturbed;

    DisturbedModel(TransitionSystem nominalModel, TransitionSystem disturbedModel);

    std::size_t states() const noexcept { return nominal.states(); }
    std::size_t controls() const noexcept { return nominal.controls(); }
};

/// Boolean sum of all input blocks of L.
AutonomousTS to_undistinguished(const TransitionSystem& ts);

/// State w = u x of size m*n; Xi stacks L m times. Outputs read the x part.
AutonomousTS to_distinguished(const TransitionSystem& ts);

/// Boolean sum over the disturbance blocks of a control-free system.
/// Throws DimensionError if a control input is still open.
AutonomousTS disturbed_tsr(const TransitionSystem& ts);
AutonomousTS disturbed_tsr(const DisturbedModel& dm);

/// Closes u = G x. G is controls x n. Disturbance inputs stay open.
TransitionSystem closed_loop(const TransitionSystem& ts, const LogicalMatrix& G);
DisturbedModel closed_loop(const DisturbedModel& dm, const LogicalMatrix& G);

/// Union of successors of every state in `from` under `input`.
StateSet step(const TransitionSystem& ts, const StateSet& from, std::size_t input);

} // namespace stpnet
