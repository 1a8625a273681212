#include "stpnet/ts_model.hpp"

#include <algorithm>
#include <string>

#include "stpnet/errors.hpp"
#include "stpnet/logic_core.hpp"

namespace stpnet {

TransitionSystem::TransitionSystem(BooleanMatrix transitions, LogicalMatrix output, std::size_t controls,
                                   std::size_t disturbances)
    : L_(std::move(transitions)), H_(std::move(output)), controls_(controls), disturbances_(disturbances) {
    if (controls_ == 0 || disturbances_ == 0) throw DimensionError("input arities must be positive");
    if (L_.rows() == 0) throw DimensionError("transition system needs at least one state");
    if (L_.cols() != L_.rows() * inputs())
        throw DimensionError("L is " + std::to_string(L_.rows()) + "x" + std::to_string(L_.cols()) + ", expected " +
                             std::to_string(L_.rows()) + "x" + std::to_string(L_.rows() * inputs()));
    if (H_.cols() != L_.rows()) throw DimensionError("H column count differs from state count");
}

BooleanMatrix TransitionSystem::input_block(std::size_t input) const {
    if (input >= inputs()) throw DimensionError("input index out of range");
    return L_.block_columns(input * states(), states());
}

StateSet TransitionSystem::successors(std::size_t state, std::size_t input) const {
    if (state >= states() || input >= inputs()) throw DimensionError("state or input index out of range");
    return L_.column_support(input * states() + state);
}

AutonomousTS::AutonomousTS(BooleanMatrix m, LogicalMatrix h) : M(std::move(m)), H(std::move(h)) {
    if (!M.square()) throw DimensionError("autonomous transition matrix must be square");
    if (H.cols() != M.rows()) throw DimensionError("H column count differs from state count");
}

DisturbedModel::DisturbedModel(TransitionSystem nominalModel, TransitionSystem disturbedModel)
    : nominal(std::move(nominalModel)), disturbed(std::move(disturbedModel)) {
    if (nominal.disturbances() != 1) throw DimensionError("nominal model must not carry a disturbance input");
    if (nominal.states() != disturbed.states()) throw DimensionError("nominal and disturbed state counts differ");
    if (nominal.controls() != disturbed.controls())
        throw DimensionError("nominal and disturbed control arities differ");
    if (nominal.outputs() != disturbed.outputs()) throw DimensionError("nominal and disturbed output arities differ");
}

AutonomousTS to_undistinguished(const TransitionSystem& ts) {
    BooleanMatrix m = ts.input_block(0);
    for (std::size_t u = 1; u < ts.inputs(); ++u) m = bool_add(m, ts.input_block(u));
    return AutonomousTS(std::move(m), ts.H());
}

AutonomousTS to_distinguished(const TransitionSystem& ts) {
    const std::size_t n = ts.states();
    const std::size_t m = ts.inputs();
    BooleanMatrix xi(n * m, n * m);
    for (std::size_t blockRow = 0; blockRow < m; ++blockRow)
        for (std::size_t i = 0; i < n; ++i)
            for (auto col : ts.L().row_support(i)) xi.set(blockRow * n + i, col);
    std::vector<std::size_t> h(n * m);
    for (std::size_t w = 0; w < n * m; ++w) h[w] = ts.H().index(w % n);
    return AutonomousTS(std::move(xi), LogicalMatrix(ts.outputs(), std::move(h)));
}

AutonomousTS disturbed_tsr(const TransitionSystem& ts) {
    if (ts.controls() != 1) throw DimensionError("disturbed_tsr: control input is still open; close the loop first");
    return to_undistinguished(ts);
}

AutonomousTS disturbed_tsr(const DisturbedModel& dm) { return disturbed_tsr(dm.disturbed); }

TransitionSystem closed_loop(const TransitionSystem& ts, const LogicalMatrix& G) {
    const std::size_t n = ts.states();
    if (G.rows() != ts.controls() || G.cols() != n)
        throw DimensionError("closed_loop: G must be " + std::to_string(ts.controls()) + "x" + std::to_string(n));
    BooleanMatrix out(n, n * ts.disturbances());
    for (std::size_t i = 0; i < n; ++i) {
        auto row = ts.L().row_words(i);
        for (std::size_t d = 0; d < ts.disturbances(); ++d)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t src = (d * ts.controls() + G.index(j)) * n + j;
                if ((row[src >> 6] >> (src & 63)) & 1u) out.set(i, d * n + j);
            }
    }
    TransitionSystem result(std::move(out), ts.H(), 1, ts.disturbances());
    result.labels.states = ts.labels.states;
    result.labels.outputs = ts.labels.outputs;
    return result;
}

DisturbedModel closed_loop(const DisturbedModel& dm, const LogicalMatrix& G) {
    return DisturbedModel(closed_loop(dm.nominal, G), closed_loop(dm.disturbed, G));
}

StateSet step(const TransitionSystem& ts, const StateSet& from, std::size_t input) {
    if (input >= ts.inputs()) throw DimensionError("step: input index out of range");
    std::vector<bool> present(ts.states(), false);
    for (auto x : from) {
        if (x >= ts.states()) throw DimensionError("step: state index out of range");
        for (auto y : ts.successors(x, input)) present[y] = true;
    }
    StateSet out;
    for (std::size_t i = 0; i < present.size(); ++i)
        if (present[i]) out.push_back(i);
    return out;
}

} // namespace stpnet
