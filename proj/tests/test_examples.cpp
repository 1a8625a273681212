#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "stpnet/attractors.hpp"
#include "stpnet/errors.hpp"
#include "stpnet/logic_core.hpp"
#include "stpnet/netdsl.hpp"
#include "stpnet/reach.hpp"
#include "stpnet/simulation.hpp"

using namespace stpnet;

namespace {

std::string read_model(const std::string& name) {
    std::ifstream in(std::string(STPNET_MODELS_DIR) + "/" + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 1 -> {1, 2}, 2 -> 1.
const BooleanMatrix kTwoState = BooleanMatrix::from_rows({{1, 1}, {1, 0}});
// 1 -> {2, 3}, 2 -> 3, 3 -> {1, 4}, 4 -> 4.
const BooleanMatrix kFourState = BooleanMatrix::from_rows({{0, 0, 1, 0}, {1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}});

TransitionSystem four_state_ts() { return spec_to_ts(parse_ts(read_model("four_state_ts.ts"))); }

} // namespace

TEST_CASE("small products") {
    CHECK(stp(DeltaVector(2, 1), DeltaVector(2, 2)) == DeltaVector(4, 2));
    auto a = LogicalMatrix::delta(2, {2, 1});
    CHECK(stp(LogicalMatrix::identity(2), a) == a);
    auto x = stp(LogicalMatrix::delta(2, {1, 2, 2, 1}), LogicalMatrix::from_delta(DeltaVector(2, 2)));
    CHECK(x.rows() == 2);
    CHECK(x.cols() == 2);
    CHECK(oracle::dense(x) == oracle::stp(oracle::dense(LogicalMatrix::delta(2, {1, 2, 2, 1})),
                                          oracle::dense(LogicalMatrix::delta(2, {2}))));

    const auto H = LogicalMatrix::delta(2, {2, 1, 1, 2, 1, 2, 2, 1});
    CHECK(kron(LogicalMatrix::identity(1), H) == H);
    const auto HH = kron(H, H);
    CHECK(HH.rows() == 4);
    CHECK(HH.cols() == 64);
    const auto dH = oracle::dense(H);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 64; ++j) CHECK(HH.get(i, j) == (dH[i / 2][j / 8] * dH[i % 2][j % 8] == 1));
    CHECK(kron(LogicalMatrix::identity(2), LogicalMatrix::delta(2, {1, 2})) == LogicalMatrix::identity(4));

    CHECK(khatri_rao(LogicalMatrix::delta(2, {1, 2}), LogicalMatrix::delta(2, {1, 1})) == LogicalMatrix::delta(4, {1, 3}));
    CHECK(khatri_rao(a, a).delta_indices() == std::vector<std::size_t>{4, 1});
    CHECK(khatri_rao(LogicalMatrix::delta(2, {1, 2}), LogicalMatrix::delta(2, {1, 2})) == LogicalMatrix::delta(4, {1, 4}));
}

TEST_CASE("two-state system") {
    CHECK(bool_mul(kTwoState, kTwoState) == BooleanMatrix::from_rows({{1, 1}, {1, 1}}));
    CHECK(bool_power(kTwoState, 2) == BooleanMatrix::from_rows({{1, 1}, {1, 1}}));
    CHECK(bool_power(kTwoState, 1) == kTwoState);
    CHECK(bool_power(BooleanMatrix::identity(3), 5) == BooleanMatrix::identity(3));
    CHECK_THROWS_AS(bool_power(BooleanMatrix(2, 3), 2), DimensionError);
    CHECK_THROWS_AS(int_power_trace(BooleanMatrix(2, 3), 2), DimensionError);
    CHECK(enumerate_fixed_points(kTwoState) == std::vector<std::size_t>{0});
    CHECK(classify_cycle(kTwoState, {0, 1}) == CycleClass::SimpleCycle);
    CHECK(classify_cycle(kTwoState, {0, 1, 0, 1, 0, 1}) == CycleClass::PowerCycle);
    // Arbitrarily long compound cycles: 1 2 (1 1 2) (1 1 1 2) ...
    for (std::size_t s = 1; s <= 5; ++s) {
        Cycle c;
        for (std::size_t r = 1; r <= s; ++r) {
            c.insert(c.end(), r, 0);
            c.push_back(1);
        }
        CHECK(c.size() == s * (s + 3) / 2 - 0 * s);
        if (s > 1) CHECK(classify_cycle(kTwoState, c) == CycleClass::CompoundCycle);
    }
    CHECK(reach_matrix(kTwoState).C == BooleanMatrix::from_rows({{1, 1}, {1, 1}}));
    CHECK_FALSE(check_attractor_partition(kTwoState, {{0}, {1}}).verdict);

    auto d = decompose_cycle(kTwoState, {0, 1, 0, 0, 1});
    CHECK(d.extracted == std::vector<Cycle>{{0, 1}, {0}});
    CHECK(d.residue == Cycle{0, 1});
    auto single = decompose_cycle(kTwoState, {0, 1});
    CHECK(single.extracted.empty());
    CHECK(single.tree().cycle == Cycle{0, 1});
    CHECK(single.tree().children.empty());
    CHECK_THROWS_AS(decompose_cycle(kTwoState, {1, 1}), InvalidTrajectory);
}

TEST_CASE("four-state autonomous system") {
    CHECK(count_cycles(kFourState, 4) == std::vector<BigInt>{1, 1, 1, 0});
    CHECK(enumerate_simple_cycles(kFourState).cycles == std::vector<Cycle>{{0, 1, 2}, {0, 2}, {3}});
    const auto C = reach_matrix(kFourState).C;
    CHECK(C.column_support(3) == std::vector<std::size_t>{3});
    CHECK_FALSE(is_reachable(kFourState, 3, 1));
    CHECK(is_reachable(kFourState, 3, 3));
    CHECK_THROWS_AS(is_reachable(kFourState, 4, 0), DimensionError);
    CHECK(is_invariant_set(kFourState, {3}));
    CHECK_FALSE(is_invariant_set(kFourState, {0, 1, 2}));
    CHECK(is_invariant_set(kFourState, {0, 1, 2, 3}));
    auto p = check_attractor_partition(kFourState, {{3}});
    CHECK(p.verdict);
    CHECK(p.permutation.front() == 3);
    CHECK(p.permuted->get(0, 0));
    CHECK(p.permuted->row_support(0) == std::vector<std::size_t>{0, 3});
}

TEST_CASE("identity and zero systems") {
    const auto I = BooleanMatrix::identity(4);
    CHECK(count_cycles(I, 5) == std::vector<BigInt>{4, 0, 0, 0, 0});
    CHECK(enumerate_simple_cycles(I).cycles.size() == 4);
    CHECK(int_power_trace(BooleanMatrix::identity(3), 7) == 3);
    CHECK(enumerate_fixed_points(BooleanMatrix(3, 3)).empty());
    CHECK(reach_matrix(BooleanMatrix(3, 3)).C == BooleanMatrix(3, 3));
    CHECK(output_partition(LogicalMatrix::identity(3)) == std::vector<StateSet>{{0}, {1}, {2}});
}

TEST_CASE("four-state transition system") {
    TransitionSpec spec = parse_ts(read_model("four_state_ts.ts"));
    CHECK(spec.states == 4);
    CHECK(spec.inputs == 2);
    CHECK(spec.transitions.size() == 5);
    CHECK(spec.observations == std::map<std::size_t, std::size_t>{{0, 0}, {1, 1}, {2, 2}, {3, 1}});

    const auto ts = four_state_ts();
    CHECK(ts.L().column_support(4).empty());
    CHECK(step(ts, {0}, 0) == StateSet{1, 2});
    CHECK(step(ts, {0}, 1).empty());
    CHECK(output_partition(ts.H()) == std::vector<StateSet>{{0}, {1, 3}, {2}});

    const auto MI = to_undistinguished(ts).M;
    CHECK(int_power_trace(MI, 1) == 3);
    CHECK(int_power_trace(MI, 2) == 7);
    CHECK(enumerate_fixed_points(MI) == std::vector<std::size_t>{1, 2, 3});
    CHECK(classify_cycle(MI, {1, 1, 2}) == CycleClass::CompoundCycle);
    auto d = decompose_cycle(MI, {1, 1, 2});
    CHECK(d.extracted == std::vector<Cycle>{{1}});
    CHECK(d.residue == Cycle{1, 2});
    CHECK(is_reachable(MI, 0, 3));

    auto u = control_cycles(ts, 5, ControlMode::Undistinguished);
    CHECK(u.counts == std::vector<BigInt>{3, 2, 4, 7, 16});
    auto dist = control_cycles(ts, 5, ControlMode::Distinguished);
    CHECK(dist.counts == count_cycles(to_distinguished(ts).M, 5));
    CHECK(check_containment(ts, 4).holds);

    TransitionSystem single(BooleanMatrix::identity(1), LogicalMatrix::identity(1));
    CHECK(to_undistinguished(single).M == single.L());
    CHECK(to_distinguished(single).M == single.L());
    CHECK(spec_to_ts(parse_ts("ts one\nstates 1\ntrans 1 1 -> 1\n")).L() == BooleanMatrix::identity(1));
}

TEST_CASE("three-node network with a disturbance") {
    const Network net = parse_network(read_model("three_node.bn"));
    CHECK(net.stateVars.size() == 3);
    CHECK(net.inputVars.empty());
    CHECK(net.output.has_value());
    CHECK(structure_matrix(*net.output, net.stateVars, 2) == LogicalMatrix::delta(2, {2, 1, 1, 2, 1, 2, 2, 1}));

    const auto dm = assemble_disturbed_model(net);
    CHECK(dm.nominal.L() == BooleanMatrix(LogicalMatrix::delta(8, {7, 6, 7, 5, 1, 3, 1, 4})));
    CHECK(dm.disturbed.L() ==
          BooleanMatrix(LogicalMatrix::delta(8, {7, 6, 7, 5, 7, 5, 7, 6, 1, 4, 1, 3, 7, 5, 7, 6})));

    const auto T = disturbed_tsr(dm);
    CHECK(T.M == BooleanMatrix::from_rows({{1, 0, 1, 0, 0, 0, 0, 0},
                                           {0, 0, 0, 0, 0, 0, 0, 0},
                                           {0, 0, 0, 1, 0, 0, 0, 0},
                                           {0, 1, 0, 0, 0, 0, 0, 0},
                                           {0, 0, 0, 1, 0, 1, 0, 0},
                                           {0, 1, 0, 0, 0, 0, 0, 1},
                                           {1, 0, 1, 0, 1, 0, 1, 0},
                                           {0, 0, 0, 0, 0, 0, 0, 0}}));
    // Folding dominates each fixed disturbance value.
    for (std::size_t xi = 0; xi < 2; ++xi)
        CHECK(bool_add(T.M, dm.disturbed.input_block(xi)) == T.M);
    CHECK(disturbed_tsr(dm.nominal).M == dm.nominal.L());

    const auto v = is_output_robust(dm);
    CHECK(v.robust);
    CHECK(v.nominalQuotient.Q == BooleanMatrix::from_rows({{0, 1}, {1, 1}}));
    CHECK(v.nominalQuotient.members == std::vector<StateSet>{{1, 2, 4, 7}, {0, 3, 5, 6}});
    CHECK(check_containment(dm.nominal, 5).holds);
    CHECK(is_output_robust(DisturbedModel(dm.nominal, dm.nominal)).robust);

    // The separate-file pair describes the same models.
    const auto nominal = assemble_assr(parse_network(read_model("three_node_nominal.bn")));
    const auto disturbed = assemble_assr(parse_network(read_model("three_node_disturbed.bn")));
    CHECK(nominal.L() == dm.nominal.L());
    CHECK(disturbed.L() == dm.disturbed.L());

    // Xor is the only reading of the printed rules that gives this nominal matrix.
    Network nor = parse_network("network t\nstate x1, x2, x3\nx1' = !x1\nx2' = !(x1 | x3)\nx3' = !(x1 | x2) | x3\n");
    CHECK(assemble_assr(nor).L() != dm.nominal.L());
}

TEST_CASE("three-node network with a control") {
    const auto dm = assemble_disturbed_model(parse_network(read_model("three_node_controlled.bn")));
    CHECK(dm.controls() == 2);
    CHECK_THROWS_AS(is_output_robust(dm), DimensionError);
    const auto G = LogicalMatrix::delta(2, {1, 1, 1, 1, 2, 2, 2, 2});
    const auto closed = closed_loop(dm, G);
    CHECK(closed.nominal.L() == BooleanMatrix(LogicalMatrix::delta(8, {7, 6, 7, 5, 1, 3, 1, 4})));
    CHECK(closed.nominal.deterministic());
    CHECK(is_output_robust(closed).robust);

    const auto found = find_robust_feedback(dm);
    CHECK(found.candidates == 256);
    CHECK(std::find(found.feedbacks.begin(), found.feedbacks.end(), G) != found.feedbacks.end());
}

TEST_CASE("robustness is lost when the disturbance adds a class self-loop") {
    const auto dm = assemble_disturbed_model(parse_network(read_model("three_node.bn")));
    const AutonomousTS nominal(dm.nominal.L(), dm.nominal.H());
    BooleanMatrix T = disturbed_tsr(dm).M;
    T.set(1, 0);  // 1 -> 2 goes from class 2 to class 1, already present
    CHECK(compare_quotients(nominal, AutonomousTS(T, nominal.H)).robust);
    T.set(2, 1);  // 2 -> 3 stays inside class 1, which the nominal model never does
    const auto v = compare_quotients(nominal, AutonomousTS(T, nominal.H));
    CHECK_FALSE(v.robust);
    REQUIRE(v.witness);
    CHECK(v.witness->cls == 0);
}
