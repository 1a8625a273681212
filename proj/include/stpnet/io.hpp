#pragma once

// JSON and Graphviz renderings of analysis results. All indices in the
// rendered output are 1-based.

#include <string>

#include <json.hpp>

#include "stpnet/attractors.hpp"
#include "stpnet/reach.hpp"
#include "stpnet/simulation.hpp"
#include "stpnet/ts_model.hpp"

namespace stpnet {

using Json = nlohmann::ordered_json;

/// {"delta": [...]} when every column is a unit vector, else {"rows": [[...]]}.
Json matrix_json(const BooleanMatrix& m);
Json matrix_json(const LogicalMatrix& m);
Json big_int_json(const BigInt& v);

Json to_json(const TransitionSystem& ts);
Json to_json(const AutonomousTS& ts);
Json to_json(const CycleReport& report);
Json to_json(const QuotientSystem& q);
Json to_json(const RobustnessVerdict& v);
Json to_json(const FeedbackSearchResult& r);
Json reach_json(const ReachabilityResult& r, const PartitionCheck* partition);

/// Transition graph: nodes carry state and output labels, edges the inputs
/// that realize them.
std::string to_dot(const TransitionSystem& ts, const std::string& name = "ts");
std::string quotient_dot(const QuotientSystem& q, const std::string& name = "quotient");
/// Graph of strongly connected components.
std::string condensation_dot(const BooleanMatrix& M, const std::string& name = "condensation");

} // namespace stpnet
