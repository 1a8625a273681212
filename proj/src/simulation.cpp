#include "stpnet/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <string>
#include <thread>

#include "stpnet/errors.hpp"
#include "stpnet/logic_core.hpp"

namespace stpnet {

namespace {

std::size_t saturating_power(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > SIZE_MAX / base) return SIZE_MAX;
        r *= base;
    }
    return r;
}

using Word = std::vector<std::size_t>;

// Output words of length 1..horizon+1 produced from any state in `start`
// when every input is allowed at every step.
template <class Successors, class Emit>
std::set<Word> output_language(const StateSet& start, std::size_t stateCount, std::size_t horizon,
                               Successors successors, Emit emit) {
    std::set<Word> words;
    std::map<Word, std::vector<bool>> frontier;
    for (auto x : start) {
        auto& slot = frontier[{emit(x)}];
        slot.resize(stateCount, false);
        slot[x] = true;
    }
    for (std::size_t t = 0; t <= horizon && !frontier.empty(); ++t) {
        std::map<Word, std::vector<bool>> next;
        for (const auto& [word, states] : frontier) {
            words.insert(word);
            if (t == horizon) continue;
            for (std::size_t x = 0; x < stateCount; ++x) {
                if (!states[x]) continue;
                for (auto y : successors(x)) {
                    Word longer(word);
                    longer.push_back(emit(y));
                    auto& slot = next[longer];
                    slot.resize(stateCount, false);
                    slot[y] = true;
                }
            }
        }
        frontier = std::move(next);
    }
    return words;
}

} // namespace

std::vector<StateSet> output_partition(const LogicalMatrix& H) {
    std::vector<StateSet> classes(H.rows());
    for (std::size_t x = 0; x < H.cols(); ++x) classes[H.index(x)].push_back(x);
    return classes;
}

QuotientSystem quotient(const TransitionSystem& ts) {
    const std::size_t m = ts.inputs();
    const BooleanMatrix H(ts.H());
    QuotientSystem q;
    q.classes = ts.outputs();
    q.inputs = m;
    q.Q = bool_mul(bool_mul(H, ts.L()), kron(BooleanMatrix::identity(m), H.transpose()));
    q.Hbar = bool_mul(H, H.transpose());
    q.members = output_partition(ts.H());
    return q;
}

QuotientSystem quotient(const AutonomousTS& ts) { return quotient(ts.as_ts()); }

ContainmentResult check_containment(const TransitionSystem& ts, std::size_t horizon, std::size_t bound) {
    if (horizon == 0) throw DimensionError("check_containment: horizon must be at least 1");
    const std::size_t n = ts.states();
    const std::size_t p = ts.outputs();
    const std::size_t words = saturating_power(p, horizon + 1);
    if (words == SIZE_MAX || words > bound / n)
        throw CapExceeded("containment check of " + std::to_string(n) + " states to horizon " +
                          std::to_string(horizon) + " exceeds the bound of " + std::to_string(bound));

    const QuotientSystem q = quotient(ts);
    // Successors with the input chosen freely at each step.
    const AutonomousTS folded = to_undistinguished(ts);
    const BooleanMatrix concreteNext = folded.M.transpose();
    BooleanMatrix classNext(p, p);
    for (std::size_t u = 0; u < q.inputs; ++u)
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t c = 0; c < p; ++c)
                if (q.Q.get(i, u * p + c)) classNext.set(c, i);

    ContainmentResult result;
    for (std::size_t c = 0; c < p; ++c) {
        if (q.members[c].empty()) continue;
        const auto concrete = output_language(
            q.members[c], n, horizon, [&](std::size_t x) { return concreteNext.row_support(x); },
            [&](std::size_t x) { return ts.H().index(x); });
        const auto abstract = output_language(
            StateSet{c}, p, horizon, [&](std::size_t k) { return classNext.row_support(k); },
            [](std::size_t k) { return k; });
        for (const auto& w : concrete)
            if (!abstract.count(w)) {
                result.holds = false;
                result.violatingClass = c;
                result.violatingWord = w;
                return result;
            }
    }
    return result;
}

RobustnessVerdict compare_quotients(const AutonomousTS& nominal, const AutonomousTS& disturbedTsr) {
    if (nominal.states() != disturbedTsr.states() || nominal.H.rows() != disturbedTsr.H.rows())
        throw DimensionError("nominal and disturbed models have different dimensions");
    RobustnessVerdict v;
    v.nominalQuotient = quotient(nominal);
    v.disturbedQuotient = quotient(disturbedTsr);
    const auto& a = v.nominalQuotient;
    const auto& b = v.disturbedQuotient;
    v.robust = a.Q == b.Q && a.Hbar == b.Hbar;
    if (!v.robust) {
        for (std::size_t col = 0; col < a.Q.cols() && !v.witness; ++col)
            for (std::size_t i = 0; i < a.Q.rows(); ++i)
                if (a.Q.get(i, col) != b.Q.get(i, col)) {
                    v.witness = RobustnessWitness{col % a.classes, col / a.classes};
                    break;
                }
        for (std::size_t c = 0; c < a.classes && !v.witness; ++c)
            if (a.Hbar.get(c, c) != b.Hbar.get(c, c)) v.witness = RobustnessWitness{c, 0};
    }
    return v;
}

RobustnessVerdict is_output_robust(const DisturbedModel& dm) {
    if (dm.nominal.controls() != 1 || dm.disturbed.controls() != 1)
        throw DimensionError("is_output_robust: close the control loop first");
    return compare_quotients(to_undistinguished(dm.nominal), disturbed_tsr(dm));
}

LogicalMatrix feedback_candidate(std::size_t controls, std::size_t states, std::size_t rank) {
    std::vector<std::size_t> idx(states);
    for (std::size_t j = states; j-- > 0;) {
        idx[j] = rank % controls;
        rank /= controls;
    }
    return LogicalMatrix(controls, std::move(idx));
}

FeedbackSearchResult find_robust_feedback(const DisturbedModel& dm, const FeedbackSearchOptions& options) {
    const std::size_t n = dm.states();
    const std::size_t ell = dm.controls();
    FeedbackSearchResult result;
    result.candidates = saturating_power(ell, n);
    if (result.candidates > options.cap) {
        if (!options.allowTruncation)
            throw CapExceeded("feedback search space of " +
                              (result.candidates == SIZE_MAX ? std::string("more than 2^64")
                                                             : std::to_string(result.candidates)) +
                              " candidates exceeds the cap of " + std::to_string(options.cap));
        result.truncated = true;
    }
    result.examined = std::min(result.candidates, options.cap);

    std::vector<char> robust(result.examined, 0);
    std::atomic<std::size_t> nextChunk{0};
    constexpr std::size_t chunk = 64;
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t first = nextChunk.fetch_add(chunk);
                if (first >= result.examined || failed) return;
                const std::size_t last = std::min(first + chunk, result.examined);
                for (std::size_t r = first; r < last; ++r)
                    robust[r] = is_output_robust(closed_loop(dm, feedback_candidate(ell, n, r))).robust ? 1 : 0;
            }
        } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, (result.examined + chunk - 1) / chunk));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    for (std::size_t r = 0; r < result.examined; ++r)
        if (robust[r]) result.feedbacks.push_back(feedback_candidate(ell, n, r));
    return result;
}

} // namespace stpnet
