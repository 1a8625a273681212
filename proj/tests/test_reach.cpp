#include <doctest.h>

#include "oracles.hpp"
#include "stpnet/errors.hpp"
#include "stpnet/logic_core.hpp"
#include "stpnet/reach.hpp"

using namespace stpnet;

TEST_CASE("closure equals breadth-first search") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        const double density = std::uniform_real_distribution<double>(0.0, 3.0)(rng) / static_cast<double>(n);
        const auto M = oracle::random_boolean(rng, n, n, density);
        const auto r = reach_matrix(M);
        CHECK(oracle::dense(r.C) == oracle::bfs_closure(M));
        CHECK(r.C == reach_matrix_by_powers(M));
    }
}

TEST_CASE("per-step powers") {
    auto M = BooleanMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    auto r = reach_matrix(M, true);
    REQUIRE(r.perStep);
    REQUIRE(r.perStep->size() == 3);
    CHECK((*r.perStep)[2] == BooleanMatrix::identity(3));
    CHECK((*r.perStep)[1] == bool_mul(M, M));
}

TEST_CASE("zero-step paths do not count") {
    auto M = BooleanMatrix::from_rows({{0, 0}, {1, 1}});
    auto r = reach_matrix(M);
    CHECK_FALSE(is_reachable(r, 0, 0));
    CHECK(is_reachable(r, 0, 1));
    CHECK(is_reachable(r, 1, 1));
    CHECK_FALSE(is_reachable(M, 1, 0));
}

TEST_CASE("invariant sets and block-triangular form") {
    // 1 -> 2 -> 3 -> 2, 4 -> 4.
    auto M = BooleanMatrix::from_rows({{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    CHECK(is_invariant_set(M, {1, 2}));
    CHECK_FALSE(is_invariant_set(M, {0, 1}));
    CHECK_THROWS(is_invariant_set(M, {}));

    auto p = check_attractor_partition(M, {{3}, {1, 2}});
    CHECK(p.verdict);
    CHECK(p.permutation == std::vector<std::size_t>{3, 1, 2, 0});
    REQUIRE(p.permuted);
    // Columns of the invariant blocks have no entries outside their block.
    for (std::size_t col = 0; col < 3; ++col)
        for (std::size_t row = 0; row < 4; ++row) {
            const std::size_t blockOf[] = {0, 1, 1, 2};
            if (blockOf[row] != blockOf[col]) CHECK_FALSE(p.permuted->get(row, col));
        }
    CHECK(*p.permuted == permute(M, p.permutation));

    CHECK_FALSE(check_attractor_partition(M, {{0}}).verdict);
    CHECK_THROWS_AS(check_attractor_partition(M, {{1, 2}, {2}}), DimensionError);
    CHECK_THROWS_AS(check_attractor_partition(M, {{7}}), DimensionError);
}

TEST_CASE("strongly connected components") {
    auto M = BooleanMatrix::from_rows({{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    auto sccs = strongly_connected_components(M);
    CHECK(sccs.size() == 3);
    // 0 must come before {1, 2}.
    auto pos = [&](std::size_t v) {
        for (std::size_t i = 0; i < sccs.size(); ++i)
            if (std::find(sccs[i].begin(), sccs[i].end(), v) != sccs[i].end()) return i;
        return sccs.size();
    };
    CHECK(pos(0) < pos(1));
    CHECK(pos(1) == pos(2));

    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        auto R = oracle::random_boolean(rng, n, n, 0.15);
        auto reach = oracle::bfs_closure(R);
        auto comps = strongly_connected_components(R);
        std::vector<std::size_t> comp(n);
        for (std::size_t i = 0; i < comps.size(); ++i)
            for (auto v : comps[i]) comp[v] = i;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const bool mutual = a == b || (reach[a][b] && reach[b][a]);
                CHECK((comp[a] == comp[b]) == mutual);
                if (reach[b][a] && comp[a] != comp[b]) CHECK(comp[a] < comp[b]);
            }
    }
}
