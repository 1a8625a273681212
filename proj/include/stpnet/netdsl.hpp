#pragma once

// Text front end for logical networks (.bn) and explicit transition systems
// (.ts), plus compilation of logic rules to structure matrices and the
// algebraic state-space form.
//
// Vector-form convention: Boolean true is delta_2^1 and false is delta_2^2;
// a k-valued variable with value j is delta_k^j. Joint states are the STP of
// the variables in declaration order, first variable most significant.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stpnet/logical_matrix.hpp"
#include "stpnet/ts_model.hpp"

namespace stpnet {

enum class ExprKind { Var, Const, Not, And, Or, Xor, Iff, Implies, Table };

/// Expression tree. Values are carried as 0-based delta positions, so for
/// Boolean expressions 0 means true and 1 means false.
struct Expr {
    ExprKind kind = ExprKind::Const;
    std::string name;                 // Var
    std::size_t value = 0;            // Const
    std::vector<Expr> args;           // operator operands; Table argument variables
    std::vector<std::size_t> table;   // Table: output per argument combination, STP order
    std::size_t line = 0;
    std::size_t column = 0;

    static Expr var(std::string n) {
        Expr e;
        e.kind = ExprKind::Var;
        e.name = std::move(n);
        return e;
    }
    static Expr constant(std::size_t position) {
        Expr e;
        e.kind = ExprKind::Const;
        e.value = position;
        return e;
    }
    static Expr op(ExprKind k, std::vector<Expr> operands) {
        Expr e;
        e.kind = k;
        e.args = std::move(operands);
        return e;
    }
};

/// Names referenced anywhere in `e`, in first-appearance order.
std::vector<std::string> referenced_variables(const Expr& e);

/// Evaluates `e` with variable values supplied as delta positions.
std::size_t evaluate(const Expr& e, std::size_t arity,
                     const std::function<std::size_t(const std::string&)>& lookup);

struct Network {
    std::string name;
    std::size_t arity = 2;
    std::vector<std::string> stateVars;
    std::vector<std::string> inputVars;
    std::vector<std::string> disturbanceVars;
    std::vector<Expr> updates;                      // one per state variable
    std::optional<Expr> output;
    std::vector<std::optional<Expr>> nominalUpdates;  // per state; empty or sized like stateVars
    std::map<std::string, std::size_t> nominalDisturbance;  // disturbance -> fixed delta position

    /// Structure-matrix argument order: disturbances, inputs, states.
    std::vector<std::string> arguments() const;
    bool disturbed() const { return !disturbanceVars.empty(); }
};

struct TransitionSpec {
    struct Group {
        std::size_t state = 0;  // 0-based
        std::size_t input = 0;  // 0-based
        StateSet successors;    // 0-based, may be empty
    };

    std::string name;
    std::size_t states = 0;
    std::size_t inputs = 1;
    std::size_t outputs = 0;  // 0: no observation map given
    std::vector<Group> transitions;
    std::map<std::size_t, std::size_t> observations;  // state -> output, 0-based
};

Network parse_network(std::string_view text);
TransitionSpec parse_ts(std::string_view text);

/// Either kind of model file; decided by the header keyword.
bool looks_like_network(std::string_view text);

/// k x k^|vars| structure matrix of f over `vars`.
LogicalMatrix structure_matrix(const Expr& f, const std::vector<std::string>& vars, std::size_t arity);

/// L over (disturbances, inputs, states); H from the output rule or identity.
TransitionSystem assemble_assr(const Network& net);
/// The disturbance-free model: `nominal` overrides and fixed disturbance
/// values applied. Throws ParseError if a rule still depends on a free
/// disturbance.
TransitionSystem assemble_nominal(const Network& net);
/// Nominal and disturbed models of a network that declares disturbances.
DisturbedModel assemble_disturbed_model(const Network& net);

TransitionSystem spec_to_ts(const TransitionSpec& spec);

/// .ts text that parses back to an equivalent spec.
std::string print_ts(const TransitionSpec& spec);
/// "delta <rows> [i1 ... in]" with 1-based indices.
std::string print_delta(const LogicalMatrix& m);

} // namespace stpnet
