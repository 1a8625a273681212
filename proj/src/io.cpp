#include "stpnet/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace stpnet {

namespace {

Json one_based(const std::vector<std::size_t>& v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(x + 1);
    return out;
}

std::string label_or(const std::vector<std::string>& labels, std::size_t i, const std::string& prefix) {
    return i < labels.size() ? labels[i] : prefix + std::to_string(i + 1);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

Json matrix_json(const BooleanMatrix& m) {
    if (m.is_logical()) return matrix_json(m.to_logical());
    return Json{{"rows", m.to_rows()}};
}

Json matrix_json(const LogicalMatrix& m) {
    return Json{{"dim", m.rows()}, {"delta", m.delta_indices()}};
}

Json big_int_json(const BigInt& v) {
    if (v <= BigInt(INT64_MAX)) return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

Json to_json(const TransitionSystem& ts) {
    Json j;
    j["states"] = ts.states();
    j["inputs"] = ts.inputs();
    j["controls"] = ts.controls();
    j["disturbances"] = ts.disturbances();
    j["outputs"] = ts.outputs();
    j["deterministic"] = ts.deterministic();
    j["L"] = matrix_json(ts.L());
    j["H"] = matrix_json(ts.H());
    j["labels"] = Json{{"states", ts.labels.states}, {"inputs", ts.labels.inputs}, {"outputs", ts.labels.outputs}};
    return j;
}

Json to_json(const AutonomousTS& ts) {
    Json j;
    j["states"] = ts.states();
    j["outputs"] = ts.H.rows();
    j["M"] = matrix_json(ts.M);
    j["H"] = matrix_json(ts.H);
    return j;
}

Json to_json(const CycleReport& report) {
    Json j;
    j["s_max"] = report.sMax;
    Json counts = Json::array();
    for (const auto& c : report.counts) counts.push_back(big_int_json(c));
    j["counts"] = std::move(counts);
    j["fixed_points"] = one_based(report.fixedPoints);
    Json cycles = Json::array();
    for (const auto& c : report.simpleCycles) cycles.push_back(one_based(c));
    j["simple_cycles"] = std::move(cycles);
    j["truncated"] = report.truncated;
    return j;
}

Json to_json(const QuotientSystem& q) {
    Json j;
    j["classes"] = q.classes;
    j["inputs"] = q.inputs;
    j["Q"] = q.Q.to_rows();
    j["Hbar"] = q.Hbar.to_rows();
    Json members = Json::array();
    for (const auto& m : q.members) members.push_back(one_based(m));
    j["members"] = std::move(members);
    return j;
}

Json to_json(const RobustnessVerdict& v) {
    Json j;
    j["robust"] = v.robust;
    j["witness"] = v.witness ? Json{{"class", v.witness->cls + 1}, {"input", v.witness->input + 1}} : Json(nullptr);
    j["nominal_quotient"] = to_json(v.nominalQuotient);
    j["disturbed_quotient"] = to_json(v.disturbedQuotient);
    return j;
}

Json to_json(const FeedbackSearchResult& r) {
    Json j;
    j["candidates"] = r.candidates;
    j["examined"] = r.examined;
    j["truncated"] = r.truncated;
    Json list = Json::array();
    for (const auto& g : r.feedbacks) list.push_back(matrix_json(g));
    j["feedbacks"] = std::move(list);
    return j;
}

Json reach_json(const ReachabilityResult& r, const PartitionCheck* partition) {
    Json j;
    j["reachable"] = r.C.to_rows();
    if (partition) {
        j["invariant"] = partition->verdict;
        j["permutation"] = partition->verdict ? one_based(partition->permutation) : Json(nullptr);
    } else {
        j["invariant"] = nullptr;
        j["permutation"] = nullptr;
    }
    return j;
}

std::string to_dot(const TransitionSystem& ts, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << escape(name) << "\" {\n  rankdir=LR;\n  node [shape=ellipse];\n";
    for (std::size_t x = 0; x < ts.states(); ++x) {
        out << "  s" << x + 1 << " [label=\"" << escape(label_or(ts.labels.states, x, "x")) << "\\n"
            << escape(label_or(ts.labels.outputs, ts.H().index(x), "O")) << "\"];\n";
    }
    // (from, to) -> inputs realizing the edge, in input order.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> edges;
    for (std::size_t u = 0; u < ts.inputs(); ++u)
        for (std::size_t x = 0; x < ts.states(); ++x)
            for (auto y : ts.successors(x, u)) edges[{x, y}].push_back(u);
    for (const auto& [edge, inputs] : edges) {
        out << "  s" << edge.first + 1 << " -> s" << edge.second + 1;
        if (ts.inputs() > 1) {
            out << " [label=\"";
            for (std::size_t k = 0; k < inputs.size(); ++k)
                out << (k ? "," : "") << escape(label_or(ts.labels.inputs, inputs[k], "u"));
            out << "\"]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string quotient_dot(const QuotientSystem& q, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << escape(name) << "\" {\n  rankdir=LR;\n";
    for (std::size_t c = 0; c < q.classes; ++c) {
        out << "  c" << c + 1 << " [label=\"O" << c + 1 << "\\n{";
        for (std::size_t k = 0; k < q.members[c].size(); ++k) out << (k ? "," : "") << q.members[c][k] + 1;
        out << "}\"" << (q.members[c].empty() ? ", style=dashed" : "") << "];\n";
    }
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> edges;
    for (std::size_t u = 0; u < q.inputs; ++u)
        for (std::size_t c = 0; c < q.classes; ++c)
            for (std::size_t d = 0; d < q.classes; ++d)
                if (q.Q.get(d, u * q.classes + c)) edges[{c, d}].push_back(u);
    for (const auto& [edge, inputs] : edges) {
        out << "  c" << edge.first + 1 << " -> c" << edge.second + 1;
        if (q.inputs > 1) {
            out << " [label=\"";
            for (std::size_t k = 0; k < inputs.size(); ++k) out << (k ? "," : "") << "u" << inputs[k] + 1;
            out << "\"]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string condensation_dot(const BooleanMatrix& M, const std::string& name) {
    const auto components = strongly_connected_components(M);
    std::vector<std::size_t> owner(M.rows());
    for (std::size_t c = 0; c < components.size(); ++c)
        for (auto x : components[c]) owner[x] = c;
    std::ostringstream out;
    out << "digraph \"" << escape(name) << "\" {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::size_t c = 0; c < components.size(); ++c) {
        const bool cyclic = components[c].size() > 1 || M.get(components[c][0], components[c][0]);
        out << "  k" << c + 1 << " [label=\"{";
        for (std::size_t k = 0; k < components[c].size(); ++k) out << (k ? "," : "") << components[c][k] + 1;
        out << "}\"" << (cyclic ? ", peripheries=2" : "") << "];\n";
    }
    std::map<std::size_t, std::vector<std::size_t>> edges;
    for (std::size_t j = 0; j < M.cols(); ++j)
        for (auto i : M.column_support(j))
            if (owner[i] != owner[j]) edges[owner[j]].push_back(owner[i]);
    for (auto& [from, targets] : edges) {
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (auto to : targets) out << "  k" << from + 1 << " -> k" << to + 1 << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace stpnet
