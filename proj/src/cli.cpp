#include "stpnet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "stpnet/attractors.hpp"
#include "stpnet/errors.hpp"
#include "stpnet/io.hpp"
#include "stpnet/logic_core.hpp"
#include "stpnet/netdsl.hpp"
#include "stpnet/reach.hpp"
#include "stpnet/simulation.hpp"
#include "stpnet/ts_model.hpp"

namespace stpnet::cli {

namespace {

// Bad flags, unreadable files and the like: exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Model {
    std::optional<Network> network;
    std::optional<TransitionSpec> spec;
    TransitionSystem ts;
};

Model load(const std::string& path) {
    const std::string text = read_file(path);
    try {
        if (looks_like_network(text)) {
            Network net = parse_network(text);
            TransitionSystem ts = assemble_assr(net);
            return Model{std::move(net), std::nullopt, std::move(ts)};
        }
        TransitionSpec spec = parse_ts(text);
        TransitionSystem ts = spec_to_ts(spec);
        return Model{std::nullopt, std::move(spec), std::move(ts)};
    } catch (const ParseError& e) {
        throw ParseError(path + ":" + e.what(), 0, 0);
    }
}

const std::string& single_input(const RunConfig& c) {
    if (c.inputPaths.size() != 1) throw ConfigError("expected exactly one model file");
    return c.inputPaths.front();
}

DisturbedModel load_disturbed(const RunConfig& c) {
    if (c.nominalPath || c.disturbedPath) {
        if (!c.nominalPath || !c.disturbedPath) throw ConfigError("--nominal and --disturbed go together");
        if (!c.inputPaths.empty()) throw ConfigError("give either a model file or --nominal/--disturbed, not both");
        TransitionSystem nominal = load(*c.nominalPath).ts;
        if (nominal.disturbances() != 1) throw ConfigError("the nominal model must not declare disturbances");
        Model disturbed = load(*c.disturbedPath);
        if (disturbed.network) return DisturbedModel(std::move(nominal), std::move(disturbed.ts));
        // A plain transition system: its inputs are (disturbance, control) pairs.
        const std::size_t ell = nominal.controls();
        if (disturbed.ts.inputs() % ell != 0)
            throw ConfigError("disturbed input count is not a multiple of the nominal control count");
        TransitionSystem ts(disturbed.ts.L(), disturbed.ts.H(), ell, disturbed.ts.inputs() / ell);
        return DisturbedModel(std::move(nominal), std::move(ts));
    }
    Model m = load(single_input(c));
    if (!m.network || !m.network->disturbed())
        throw ConfigError("single-file robustness analysis needs a .bn model with a 'disturbance' declaration");
    return assemble_disturbed_model(*m.network);
}

std::vector<std::size_t> parse_indices(const std::string& text, std::size_t limit, const char* what) {
    std::vector<std::size_t> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        std::istringstream words(token);
        std::string w;
        while (words >> w) {
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(w, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != w.size() || v < 1 || v > limit)
                throw ConfigError(std::string("bad ") + what + " '" + w + "' (expected 1.." + std::to_string(limit) + ")");
            out.push_back(v - 1);
        }
    }
    return out;
}

std::vector<StateSet> parse_sets(const std::string& text, std::size_t n) {
    std::vector<StateSet> sets;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ';')) sets.push_back(parse_indices(part, n, "state"));
    if (sets.empty()) throw ConfigError("--sets is empty");
    return sets;
}

std::string matrix_text(const BooleanMatrix& m) {
    if (m.is_logical()) return print_delta(m.to_logical());
    std::ostringstream out;
    out << "[";
    const auto rows = m.to_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << (i ? "\n " : "");
        for (std::size_t j = 0; j < rows[i].size(); ++j) out << (j ? " " : "") << rows[i][j];
    }
    out << "]";
    return out.str();
}

std::string list_text(const std::vector<std::size_t>& v, const char* open = "(", const char* close = ")") {
    std::ostringstream out;
    out << open;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i] + 1;
    out << close;
    return out.str();
}

AutonomousTS convert(const TransitionSystem& ts, const std::string& mode) {
    if (mode == "undistinguished") return to_undistinguished(ts);
    if (mode == "distinguished") return to_distinguished(ts);
    throw ConfigError("--mode must be 'undistinguished' or 'distinguished'");
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void require_format(const RunConfig& c, std::initializer_list<Format> allowed) {
    for (auto f : allowed)
        if (f == c.format) return;
    throw ConfigError("output format not supported by this command");
}

int cmd_assr(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text, Format::Dot});
    Model m = load(single_input(c));
    TransitionSystem ts = m.ts;
    if (c.model == "nominal") {
        if (!m.network) throw ConfigError("--model nominal needs a .bn model");
        ts = assemble_nominal(*m.network);
    } else if (c.model != "full") {
        throw ConfigError("--model must be 'full' or 'nominal'");
    }
    if (c.format == Format::Json) emit_json(out, to_json(ts));
    else if (c.format == Format::Dot) out << to_dot(ts);
    else out << (ts.inputs() == 1 ? "M = " : "L = ") << matrix_text(ts.L()) << "\nH = " << print_delta(ts.H()) << "\n";
    return kExitOk;
}

int cmd_convert(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text, Format::Dot});
    const AutonomousTS a = convert(load(single_input(c)).ts, c.mode);
    if (c.format == Format::Json) emit_json(out, to_json(a));
    else if (c.format == Format::Dot) out << to_dot(a.as_ts());
    else out << "M = " << matrix_text(a.M) << "\nH = " << print_delta(a.H) << "\n";
    return kExitOk;
}

int cmd_attractors(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text});
    const AutonomousTS a = convert(load(single_input(c)).ts, c.mode);
    std::size_t sMax = 0;
    if (c.sMax) {
        sMax = *c.sMax;
        if (sMax == 0) throw ConfigError("--smax must be positive");
    } else if (a.M.at_most_one_per_column()) {
        sMax = a.states();
    } else {
        throw ConfigError("--smax is required for nondeterministic systems");
    }
    SimpleCycleOptions opts;
    opts.maxLength = c.maxLength;
    opts.cap = c.cap;
    opts.allowTruncation = c.allowTruncation;
    const CycleReport r = analyze_cycles(a.M, sMax, opts);
    if (c.format == Format::Json) {
        emit_json(out, to_json(r));
        return kExitOk;
    }
    for (std::size_t s = 1; s <= r.counts.size(); ++s) out << "N_" << s << " = " << r.counts[s - 1] << "\n";
    out << "fixed points: " << list_text(r.fixedPoints, "{", "}") << "\n";
    out << "simple cycles:";
    for (const auto& cyc : r.simpleCycles) out << " " << list_text(cyc);
    out << (r.truncated ? " ... (truncated)" : "") << "\n";
    return kExitOk;
}

int cmd_reach(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text});
    const AutonomousTS a = convert(load(single_input(c)).ts, c.mode);
    const ReachabilityResult r = reach_matrix(a.M);
    std::optional<PartitionCheck> partition;
    if (c.sets) partition = check_attractor_partition(a.M, parse_sets(*c.sets, a.states()));
    std::optional<bool> query;
    if (c.from || c.to) {
        if (!c.from || !c.to) throw ConfigError("--from and --to go together");
        if (*c.from < 1 || *c.from > a.states() || *c.to < 1 || *c.to > a.states())
            throw ConfigError("--from/--to out of range 1.." + std::to_string(a.states()));
        query = is_reachable(r, *c.from - 1, *c.to - 1);
    }
    if (c.format == Format::Json) {
        Json j = reach_json(r, partition ? &*partition : nullptr);
        if (query) j["query"] = Json{{"from", *c.from}, {"to", *c.to}, {"reachable", *query}};
        emit_json(out, j);
        return kExitOk;
    }
    out << "C = " << matrix_text(r.C) << "\n";
    if (partition) {
        out << "invariant: " << (partition->verdict ? "yes" : "no") << "\n";
        if (partition->verdict) out << "permutation: " << list_text(partition->permutation, "[", "]") << "\n";
    }
    if (query) out << "x" << *c.from << " -> x" << *c.to << ": " << (*query ? "reachable" : "unreachable") << "\n";
    return kExitOk;
}

int cmd_quotient(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text, Format::Dot});
    const TransitionSystem ts = load(single_input(c)).ts;
    const QuotientSystem q = quotient(ts);
    std::optional<ContainmentResult> containment;
    if (c.horizon) containment = check_containment(ts, *c.horizon);
    if (c.format == Format::Dot) {
        out << quotient_dot(q);
        return kExitOk;
    }
    if (c.format == Format::Json) {
        Json j = to_json(q);
        if (containment) {
            j["containment"] = Json{{"horizon", *c.horizon}, {"holds", containment->holds}};
            if (!containment->holds) {
                j["containment"]["class"] = *containment->violatingClass + 1;
                Json word = Json::array();
                for (auto o : containment->violatingWord) word.push_back(o + 1);
                j["containment"]["word"] = word;
            }
        }
        emit_json(out, j);
    } else {
        out << "Q = " << matrix_text(q.Q) << "\nHbar = " << matrix_text(q.Hbar) << "\n";
        for (std::size_t k = 0; k < q.members.size(); ++k)
            out << "class " << k + 1 << ": " << list_text(q.members[k], "{", "}") << "\n";
        if (containment) out << "containment to horizon " << *c.horizon << ": " << (containment->holds ? "holds" : "VIOLATED") << "\n";
    }
    return containment && !containment->holds ? kExitAnalysis : kExitOk;
}

int cmd_robust(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text});
    DisturbedModel dm = load_disturbed(c);
    if (c.feedback) {
        auto idx = parse_indices(*c.feedback, dm.controls(), "feedback index");
        if (idx.size() != dm.states())
            throw ConfigError("--feedback needs " + std::to_string(dm.states()) + " entries");
        dm = closed_loop(dm, LogicalMatrix(dm.controls(), std::move(idx)));
    } else if (dm.controls() != 1) {
        throw DimensionError("the model has an open control input; pass --feedback or use search-feedback");
    }
    const RobustnessVerdict v = is_output_robust(dm);
    if (c.format == Format::Json) {
        emit_json(out, to_json(v));
    } else {
        out << "robust: " << (v.robust ? "yes" : "no") << "\n";
        out << "nominal quotient: " << matrix_text(v.nominalQuotient.Q) << "\n";
        out << "disturbed quotient: " << matrix_text(v.disturbedQuotient.Q) << "\n";
        if (v.witness) out << "differs at class " << v.witness->cls + 1 << ", input " << v.witness->input + 1 << "\n";
    }
    return kExitOk;
}

int cmd_search(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text});
    const DisturbedModel dm = load_disturbed(c);
    FeedbackSearchOptions opts;
    opts.cap = c.cap;
    opts.allowTruncation = c.allowTruncation;
    opts.threads = c.threads;
    const FeedbackSearchResult r = find_robust_feedback(dm, opts);
    if (c.format == Format::Json) {
        emit_json(out, to_json(r));
        return kExitOk;
    }
    out << r.feedbacks.size() << " robust feedback(s) among " << r.examined << " candidates"
        << (r.truncated ? " (search truncated)" : "") << "\n";
    for (const auto& g : r.feedbacks) out << "G = " << print_delta(g) << "\n";
    return kExitOk;
}

int cmd_dot(const RunConfig& c, std::ostream& out) {
    const TransitionSystem ts = load(single_input(c)).ts;
    if (c.graph == "ts") out << to_dot(ts);
    else if (c.graph == "condensation") out << condensation_dot(to_undistinguished(ts).M);
    else if (c.graph == "quotient") out << quotient_dot(quotient(ts));
    else throw ConfigError("--graph must be 'ts', 'condensation' or 'quotient'");
    return kExitOk;
}

// Randomized self-consistency run over library invariants.
int cmd_check(const RunConfig& c, std::ostream& out) {
    require_format(c, {Format::Json, Format::Text});
    const unsigned long long seed = c.seed.value_or(1);
    std::mt19937_64 rng(seed);
    std::size_t traceOk = 0, containmentOk = 0, reachOk = 0;
    Json failures = Json::array();
    for (std::size_t t = 0; t < c.trials; ++t) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
        const std::size_t p = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.1, 0.6)(rng));
        BooleanMatrix L(n, n * m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n * m; ++j)
                if (edge(rng)) L.set(i, j);
        std::vector<std::size_t> h(n);
        for (auto& x : h) x = std::uniform_int_distribution<std::size_t>(0, p - 1)(rng);
        const TransitionSystem ts(L, LogicalMatrix(p, h), m);
        const BooleanMatrix M = to_undistinguished(ts).M;

        const std::size_t sMax = 8;
        const auto counts = count_cycles(M, sMax);
        const auto traces = power_traces(M, sMax);
        bool identity = true;
        for (std::size_t s = 1; s <= sMax; ++s) {
            BigInt sum = 0;
            for (std::size_t k = 1; k <= s; ++k)
                if (s % k == 0) sum += BigInt(k) * counts[k - 1];
            identity = identity && sum == traces[s - 1];
        }
        if (identity) ++traceOk;
        else failures.push_back(Json{{"trial", t}, {"check", "trace_identity"}});

        if (check_containment(ts, 5).holds) ++containmentOk;
        else failures.push_back(Json{{"trial", t}, {"check", "containment"}});

        if (reach_matrix(M).C == reach_matrix_by_powers(M)) ++reachOk;
        else failures.push_back(Json{{"trial", t}, {"check", "reach_closure"}});
    }
    Json j;
    j["seed"] = seed;
    j["trials"] = c.trials;
    j["passed"] = Json{{"trace_identity", traceOk}, {"containment", containmentOk}, {"reach_closure", reachOk}};
    j["failures"] = failures;
    if (c.format == Format::Json) {
        emit_json(out, j);
    } else {
        out << "seed " << seed << ", " << c.trials << " trials, " << failures.size() << " failure(s)\n";
    }
    return failures.empty() ? kExitOk : kExitAnalysis;
}

} // namespace

std::size_t default_cap() {
    if (const char* env = std::getenv("STPNET_CAP")) {
        try {
            std::size_t pos = 0;
            const auto v = std::stoull(env, &pos);
            if (pos == std::char_traits<char>::length(env) && v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1'000'000;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
        case Command::Assr: return cmd_assr(config, out);
        case Command::Attractors: return cmd_attractors(config, out);
        case Command::Convert: return cmd_convert(config, out);
        case Command::Reach: return cmd_reach(config, out);
        case Command::Quotient: return cmd_quotient(config, out);
        case Command::Robust: return cmd_robust(config, out);
        case Command::SearchFeedback: return cmd_search(config, out);
        case Command::ExportDot: return cmd_dot(config, out);
        case Command::Check: return cmd_check(config, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "analysis error: " << e.what() << "\n";
        return kExitAnalysis;
    }
    return kExitConfig;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Algebraic analysis of logical networks and finite transition systems"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.cap = default_cap();
    std::string format = "json";

    auto common = [&](CLI::App* sub, bool withFile = true) {
        if (withFile) sub->add_option("file", cfg.inputPaths, "model file (.bn or .ts)");
        sub->add_option("--format", format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
    };
    auto modeOption = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "input handling: undistinguished or distinguished")
            ->check(CLI::IsMember({"undistinguished", "distinguished"}));
    };
    auto capOptions = [&](CLI::App* sub) {
        sub->add_option("--cap", cfg.cap, "enumeration cap (default from STPNET_CAP or 1000000)");
        sub->add_flag("--allow-truncated", cfg.allowTruncation, "report a truncated result instead of failing at the cap");
    };
    auto pairOptions = [&](CLI::App* sub) {
        sub->add_option("--nominal", cfg.nominalPath, "nominal model file");
        sub->add_option("--disturbed", cfg.disturbedPath, "disturbed model file");
    };

    auto* assr = app.add_subcommand("assr", "print the algebraic state-space form");
    common(assr);
    assr->add_option("--model", cfg.model, "full or nominal")->check(CLI::IsMember({"full", "nominal"}));

    auto* attractors = app.add_subcommand("attractors", "count and enumerate cycles");
    common(attractors);
    modeOption(attractors);
    capOptions(attractors);
    attractors->add_option("--smax", cfg.sMax, "longest cycle length to count");
    attractors->add_option("--max-len", cfg.maxLength, "longest simple cycle to enumerate");

    auto* conv = app.add_subcommand("convert", "fold or lift inputs into an autonomous system");
    common(conv);
    modeOption(conv);

    auto* reach = app.add_subcommand("reach", "reachability and invariant sets");
    common(reach);
    modeOption(reach);
    reach->add_option("--sets", cfg.sets, "candidate invariant sets, e.g. \"1,2;4\"");
    reach->add_option("--from", cfg.from, "source state");
    reach->add_option("--to", cfg.to, "target state");

    auto* quot = app.add_subcommand("quotient", "output-based quotient system");
    common(quot);
    quot->add_option("--horizon", cfg.horizon, "also check output-language containment to this horizon")
        ->check(CLI::PositiveNumber);

    auto* robust = app.add_subcommand("robust", "output robustness of a disturbed model");
    common(robust);
    pairOptions(robust);
    robust->add_option("--feedback", cfg.feedback, "close u = G x first; G as delta indices, e.g. \"1 1 2 2\"");

    auto* search = app.add_subcommand("search-feedback", "exhaustive search for robust state feedback");
    common(search);
    pairOptions(search);
    capOptions(search);
    search->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");

    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
    dot->add_option("file", cfg.inputPaths, "model file (.bn or .ts)");
    dot->add_option("--graph", cfg.graph, "ts, condensation or quotient")
        ->check(CLI::IsMember({"ts", "condensation", "quotient"}));

    auto* check = app.add_subcommand("check", "randomized self-consistency run");
    common(check, false);
    check->add_option("--seed", cfg.seed, "random seed");
    check->add_option("--trials", cfg.trials, "number of random systems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const std::pair<CLI::App*, Command> table[] = {
        {assr, Command::Assr},        {attractors, Command::Attractors},  {conv, Command::Convert},
        {reach, Command::Reach},      {quot, Command::Quotient},          {robust, Command::Robust},
        {search, Command::SearchFeedback}, {dot, Command::ExportDot},     {check, Command::Check}};
    for (const auto& [sub, command] : table)
        if (sub->parsed()) cfg.command = command;
    cfg.format = format == "text" ? Format::Text : format == "dot" ? Format::Dot : Format::Json;
    if (cfg.command == Command::ExportDot) cfg.format = Format::Dot;
    return run(cfg, out, err);
}

} // namespace stpnet::cli
