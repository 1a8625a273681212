#include "stpnet/attractors.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "stpnet/errors.hpp"
#include "stpnet/logic_core.hpp"

namespace stpnet {

namespace {

using Successors = std::vector<std::vector<std::size_t>>;

Successors successor_lists(const BooleanMatrix& M) {
    Successors succ(M.cols());
    const BooleanMatrix t = M.transpose();
    for (std::size_t j = 0; j < M.cols(); ++j) succ[j] = t.row_support(j);
    return succ;
}

struct Collector {
    std::vector<Cycle> cycles;
    std::size_t cap;
    bool truncated = false;

    // Returns false once the cap is hit.
    bool add(const Cycle& c) {
        if (cycles.size() >= cap) {
            truncated = true;
            return false;
        }
        cycles.push_back(c);
        return true;
    }
};

// Johnson's elementary-circuit search rooted at the smallest vertex `start`.
class JohnsonSearch {
public:
    JohnsonSearch(const Successors& succ, Collector& out) : succ_(succ), out_(out), blocked_(succ.size()), B_(succ.size()) {}

    bool run() {
        for (start_ = 0; start_ < succ_.size(); ++start_) {
            for (std::size_t v = start_; v < succ_.size(); ++v) {
                blocked_[v] = false;
                B_[v].clear();
            }
            circuit(start_);
            if (stop_) return false;
        }
        return true;
    }

private:
    void unblock(std::size_t u) {
        blocked_[u] = false;
        auto pending = std::move(B_[u]);
        B_[u].clear();
        for (auto w : pending)
            if (blocked_[w]) unblock(w);
    }

    bool circuit(std::size_t v) {
        bool found = false;
        path_.push_back(v);
        blocked_[v] = true;
        for (auto w : succ_[v]) {
            if (stop_) break;
            if (w < start_) continue;
            if (w == start_) {
                if (!out_.add(path_)) stop_ = true;
                found = true;
            } else if (!blocked_[w] && circuit(w)) {
                found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (auto w : succ_[v]) {
                if (w < start_) continue;
                auto& list = B_[w];
                if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
            }
        }
        path_.pop_back();
        return found;
    }

    const Successors& succ_;
    Collector& out_;
    std::vector<bool> blocked_;
    std::vector<std::vector<std::size_t>> B_;
    std::vector<std::size_t> path_;
    std::size_t start_ = 0;
    bool stop_ = false;
};

// Depth-limited variant; Johnson's blocking is unsound once paths are cut short.
class BoundedSearch {
public:
    BoundedSearch(const Successors& succ, Collector& out, std::size_t maxLen)
        : succ_(succ), out_(out), maxLen_(maxLen), onPath_(succ.size(), false) {}

    void run() {
        for (start_ = 0; start_ < succ_.size() && !stop_; ++start_) extend(start_);
    }

private:
    void extend(std::size_t v) {
        path_.push_back(v);
        onPath_[v] = true;
        for (auto w : succ_[v]) {
            if (stop_) break;
            if (w < start_) continue;
            if (w == start_) {
                if (!out_.add(path_)) stop_ = true;
            } else if (!onPath_[w] && path_.size() < maxLen_) {
                extend(w);
            }
        }
        onPath_[v] = false;
        path_.pop_back();
    }

    const Successors& succ_;
    Collector& out_;
    std::size_t maxLen_;
    std::vector<bool> onPath_;
    std::vector<std::size_t> path_;
    std::size_t start_ = 0;
    bool stop_ = false;
};

std::size_t minimal_period(const Cycle& c) {
    const std::size_t len = c.size();
    for (std::size_t p = 1; p < len; ++p) {
        if (len % p) continue;
        bool repeats = true;
        for (std::size_t i = p; i < len && repeats; ++i) repeats = c[i] == c[i - p];
        if (repeats) return p;
    }
    return len;
}

} // namespace

const char* to_string(CycleClass c) {
    switch (c) {
    case CycleClass::FixedPoint: return "fixed_point";
    case CycleClass::SimpleCycle: return "simple_cycle";
    case CycleClass::PowerCycle: return "power_cycle";
    case CycleClass::CompoundCycle: return "compound_cycle";
    }
    return "unknown";
}

std::vector<BigInt> count_cycles(const BooleanMatrix& M, std::size_t sMax) {
    if (!M.square()) throw DimensionError("count_cycles: matrix is not square");
    if (sMax == 0) throw DimensionError("count_cycles: sMax must be positive");
    const auto traces = power_traces(M, sMax);
    std::vector<BigInt> counts(sMax);
    for (std::size_t s = 1; s <= sMax; ++s) {
        BigInt numerator = traces[s - 1];
        for (std::size_t k = 1; k < s; ++k)
            if (s % k == 0) numerator -= BigInt(k) * counts[k - 1];
        if (numerator < 0 || numerator % s != 0)
            throw InternalError("cycle count for length " + std::to_string(s) + " is not an exact non-negative quotient");
        counts[s - 1] = numerator / s;
    }
    return counts;
}

std::vector<std::size_t> enumerate_fixed_points(const BooleanMatrix& M) {
    if (!M.square()) throw DimensionError("enumerate_fixed_points: matrix is not square");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (M.get(i, i)) out.push_back(i);
    return out;
}

SimpleCycleResult enumerate_simple_cycles(const BooleanMatrix& M, const SimpleCycleOptions& options) {
    if (!M.square()) throw DimensionError("enumerate_simple_cycles: matrix is not square");
    const std::size_t n = M.rows();
    const std::size_t maxLen = options.maxLength.value_or(n);
    const auto succ = successor_lists(M);
    Collector out{{}, options.cap};
    if (maxLen >= n) {
        JohnsonSearch(succ, out).run();
    } else if (maxLen > 0) {
        BoundedSearch(succ, out, maxLen).run();
    }
    if (out.truncated && !options.allowTruncation)
        throw CapExceeded("simple-cycle enumeration exceeded the cap of " + std::to_string(options.cap) + " cycles");
    std::sort(out.cycles.begin(), out.cycles.end());
    return {std::move(out.cycles), out.truncated};
}

Cycle canonical_rotation(const Cycle& c) {
    if (c.empty()) return c;
    Cycle best;
    const auto smallest = *std::min_element(c.begin(), c.end());
    for (std::size_t r = 0; r < c.size(); ++r) {
        if (c[r] != smallest) continue;
        Cycle rotated(c.begin() + static_cast<std::ptrdiff_t>(r), c.end());
        rotated.insert(rotated.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r));
        if (best.empty() || rotated < best) best = std::move(rotated);
    }
    return best;
}

void require_closed_walk(const BooleanMatrix& M, const Cycle& traj) {
    if (!M.square()) throw DimensionError("transition matrix is not square");
    if (traj.empty()) throw InvalidTrajectory("empty trajectory");
    for (auto s : traj)
        if (s >= M.rows()) throw InvalidTrajectory("state " + std::to_string(s + 1) + " out of range");
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto from = traj[i];
        const auto to = traj[(i + 1) % traj.size()];
        if (!M.get(to, from))
            throw InvalidTrajectory("no transition " + std::to_string(from + 1) + " -> " + std::to_string(to + 1));
    }
}

CycleClass classify_cycle(const BooleanMatrix& M, const Cycle& traj) {
    require_closed_walk(M, traj);
    if (traj.size() == 1) return CycleClass::FixedPoint;
    Cycle sorted(traj);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return CycleClass::SimpleCycle;
    if (minimal_period(traj) < traj.size()) return CycleClass::PowerCycle;
    return CycleClass::CompoundCycle;
}

CycleDecomposition decompose_cycle(const Cycle& traj) {
    if (traj.empty()) throw InvalidTrajectory("empty trajectory");
    CycleDecomposition d;
    Cycle current = traj;
    for (;;) {
        std::map<std::size_t, std::size_t> firstSeen;
        std::size_t i = 0, j = 0;
        bool repeat = false;
        for (j = 0; j < current.size(); ++j) {
            auto [it, fresh] = firstSeen.emplace(current[j], j);
            if (!fresh) {
                i = it->second;
                repeat = true;
                break;
            }
        }
        if (!repeat) break;
        d.extracted.emplace_back(current.begin() + static_cast<std::ptrdiff_t>(i),
                                 current.begin() + static_cast<std::ptrdiff_t>(j));
        d.at.push_back(i);
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(i),
                      current.begin() + static_cast<std::ptrdiff_t>(j));
    }
    d.residue = std::move(current);
    return d;
}

CycleDecomposition decompose_cycle(const BooleanMatrix& M, const Cycle& traj) {
    require_closed_walk(M, traj);
    return decompose_cycle(traj);
}

Cycle CycleDecomposition::reconstruct() const {
    Cycle current = residue;
    for (std::size_t k = extracted.size(); k-- > 0;)
        current.insert(current.begin() + static_cast<std::ptrdiff_t>(at[k]), extracted[k].begin(), extracted[k].end());
    return current;
}

DecompositionNode CycleDecomposition::tree() const {
    struct Flat {
        Cycle cycle;
        std::size_t parent;
        std::size_t offset;
    };
    std::vector<Flat> nodes{{residue, 0, 0}};
    // owner[p] = (node, offset within that node's cycle) for each position of the rebuilt sequence.
    std::vector<std::pair<std::size_t, std::size_t>> owner;
    for (std::size_t k = 0; k < residue.size(); ++k) owner.emplace_back(0, k);
    for (std::size_t k = extracted.size(); k-- > 0;) {
        const auto [parent, offset] = owner.at(at[k]);
        const std::size_t id = nodes.size();
        nodes.push_back({extracted[k], parent, offset});
        std::vector<std::pair<std::size_t, std::size_t>> mine;
        for (std::size_t q = 0; q < extracted[k].size(); ++q) mine.emplace_back(id, q);
        owner.insert(owner.begin() + static_cast<std::ptrdiff_t>(at[k]), mine.begin(), mine.end());
    }
    auto build = [&](auto&& self, std::size_t id) -> DecompositionNode {
        DecompositionNode node{nodes[id].cycle, nodes[id].offset, {}};
        for (std::size_t c = 1; c < nodes.size(); ++c)
            if (nodes[c].parent == id && c != id) node.children.push_back(self(self, c));
        return node;
    };
    return build(build, 0);
}

CycleReport analyze_cycles(const BooleanMatrix& M, std::size_t sMax, const SimpleCycleOptions& options) {
    CycleReport r;
    r.sMax = sMax;
    r.counts = count_cycles(M, sMax);
    r.fixedPoints = enumerate_fixed_points(M);
    auto simple = enumerate_simple_cycles(M, options);
    r.simpleCycles = std::move(simple.cycles);
    r.truncated = simple.truncated;
    return r;
}

CycleReport control_cycles(const TransitionSystem& ts, std::size_t sMax, ControlMode mode,
                           const SimpleCycleOptions& options) {
    const AutonomousTS converted = mode == ControlMode::Undistinguished ? to_undistinguished(ts) : to_distinguished(ts);
    return analyze_cycles(converted.M, sMax, options);
}

} // namespace stpnet
