#pragma once

// Output-based quotients ("simulations") of transition systems, language
// containment against the quotient, output robustness under disturbances and
// exhaustive search for robust state feedback.

#include <cstddef>
#include <optional>
#include <vector>

#include "stpnet/boolean_matrix.hpp"
#include "stpnet/logical_matrix.hpp"
#include "stpnet/ts_model.hpp"

namespace stpnet {

/// One class per output label 1..p, whether or not any state produces it.
struct QuotientSystem {
    std::size_t classes = 0;
    std::size_t inputs = 1;
    /// p x (p*m), column u*p + c holds the successor classes of class c under u.
    BooleanMatrix Q;
    /// Booleanized H H^T: diagonal, 1 exactly on inhabited classes.
    BooleanMatrix Hbar;
    /// members[c] = states whose output is c; empty for unused labels.
    std::vector<StateSet> members;

    friend bool operator==(const QuotientSystem&, const QuotientSystem&) = default;
};

std::vector<StateSet> output_partition(const LogicalMatrix& H);

/// Q = H x_B L x_B (I_m (x) H^T).
QuotientSystem quotient(const TransitionSystem& ts);
QuotientSystem quotient(const AutonomousTS& ts);

struct ContainmentResult {
    bool holds = true;
    /// First violation: class and an output word realizable from its members
    /// but not from the class in the quotient. 0-based.
    std::optional<std::size_t> violatingClass;
    std::vector<std::size_t> violatingWord;
};

/// Checks every output word of length up to horizon + 1 (y(0)..y(horizon)).
/// Throws CapExceeded when states * p^(horizon+1) exceeds `bound`.
ContainmentResult check_containment(const TransitionSystem& ts, std::size_t horizon,
                                    std::size_t bound = 50'000'000);

struct RobustnessWitness {
    std::size_t cls;    // 0-based
    std::size_t input;  // 0-based
};

struct RobustnessVerdict {
    bool robust = false;
    QuotientSystem nominalQuotient;
    QuotientSystem disturbedQuotient;
    std::optional<RobustnessWitness> witness;
};

/// Compares the quotients of two autonomous systems for exact equality.
RobustnessVerdict compare_quotients(const AutonomousTS& nominal, const AutonomousTS& disturbedTsr);

/// Requires both models control-free. The disturbed model is folded first.
RobustnessVerdict is_output_robust(const DisturbedModel& dm);

struct FeedbackSearchOptions {
    std::size_t cap = 1'000'000;
    /// Examine only the first `cap` candidates instead of failing.
    bool allowTruncation = false;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct FeedbackSearchResult {
    /// Robust feedback matrices in lexicographic order of their columns.
    std::vector<LogicalMatrix> feedbacks;
    /// controls^states, saturated at SIZE_MAX.
    std::size_t candidates = 0;
    std::size_t examined = 0;
    bool truncated = false;
};

/// The rank-th G in lexicographic order (first column most significant).
LogicalMatrix feedback_candidate(std::size_t controls, std::size_t states, std::size_t rank);

FeedbackSearchResult find_robust_feedback(const DisturbedModel& dm, const FeedbackSearchOptions& options = {});

} // namespace stpnet
