// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "parapath/gadgets.hpp"
#include "parapath/oracle.hpp"
#include "parapath/solver.hpp"
#include "test_support.hpp"

using namespace parapath;

namespace {

GppInstance gn_instance(int n, AffineWeight f0, AffineWeight f1, Rational L) {
    gadgets::GnFragment g = gadgets::make_gn(n, f0, f1);
    return {std::move(g.dag), std::move(g.weights), {std::move(L)}, std::nullopt};
}

}  // namespace

TEST_CASE("single edge") {
    GppInstance inst{Dag(2, 0, 1, {{0, 1}}),
                     ScalarWeights{AffineWeight{2, 1}},
                     {Rational(-1)},
                     std::nullopt};
    SolveResult res = solve_scalar_linear(inst, 3);
    CHECK(res.path == Path{0});
    CHECK(res.cost == -7);
}

TEST_CASE("G2 with +-1 offsets maximizes to 2") {
    GppInstance inst = gn_instance(2, {1, 1}, {1, -1}, 1);
    SolveResult res = solve_scalar_linear(inst, 0);
    CHECK(res.cost == 2);
    CHECK(res.path == Path{0, 2});  // the (+1, +1) string
    auto [bp, bc] = oracle::best_path(inst, {Rational(0)});
    CHECK(bc == res.cost);
}

TEST_CASE("negative slope picks the crossing chain") {
    GppInstance inst{Dag(2, 0, 1, {{0, 1}, {0, 1}}),
                     ScalarWeights{AffineWeight{-1, 0}, AffineWeight{1, 0}},
                     {Rational(1)},
                     std::nullopt};
    SolveResult res = solve_scalar_linear(inst, -5);
    CHECK(res.cost == 5);
    CHECK(res.path == Path{0});
}

TEST_CASE("rejects non-affine and vector weights") {
    GppInstance pl_inst{Dag(2, 0, 1, {{0, 1}}),
                        ScalarWeights{PLFunction::from_parts({0}, {{-1, 0}, {1, 0}})},
                        {Rational(1)},
                        std::nullopt};
    CHECK_THROWS_AS(solve_scalar_linear(pl_inst, 0), Error);
    GppInstance vec = gadgets::product_partition_gadget({Integer(2)});
    CHECK_THROWS_AS(solve_scalar_linear(vec, 0), Error);
}

TEST_CASE("L = 0 warns and returns zero cost") {
    GppInstance inst{Dag(2, 0, 1, {{0, 1}}),
                     ScalarWeights{AffineWeight{2, 1}},
                     {Rational(0)},
                     std::nullopt};
    SolveResult res = solve_scalar_linear(inst, 3);
    CHECK(res.cost == 0);
    CHECK(res.zero_liquidation_warning);
    CHECK(res.path == Path{0});
}

TEST_CASE("oracle equivalence on random instances") {
    std::mt19937_64 rng(20240517);
    for (int round = 0; round < 250; ++round) {
        GppInstance inst = random_affine_instance(rng);
        Rational x0 = rand_rational(rng, -10, 10, 8);
        SolveResult res = solve_scalar_linear(inst, x0);
        auto [op, oc] = oracle::best_path(inst, {x0});
        REQUIRE(res.cost == oc);
        // The returned path must actually achieve the reported cost.
        CHECK(path_cost(inst, res.path, {x0}) == res.cost);
    }
}

TEST_CASE("relaxation rounds are exact and monotone") {
    std::mt19937_64 rng(555);
    for (int round = 0; round < 60; ++round) {
        GppInstance inst = random_affine_instance(rng, {.max_vertices = 7, .max_edges = 12});
        Rational x0 = rand_rational(rng, -5, 5, 4);
        auto edges = detail::affine_edges(inst);
        const int n = inst.dag.vertex_count();
        detail::LabelHistory hist = detail::relax(n, inst.dag.source(), edges, x0, n - 1);

        // Round-limited oracle: compositions over explicit edge walks.
        for (int k = 1; k < n; ++k) {
            std::vector<std::optional<Rational>> expect_max(n), expect_min(n);
            expect_max[0] = expect_min[0] = x0;
            // BFS over paths with <= k edges (DAG, so walk = path).
            std::vector<std::pair<int, Rational>> frontier{{inst.dag.source(), x0}};
            for (int depth = 0; depth < k; ++depth) {
                std::vector<std::pair<int, Rational>> next;
                for (const auto& [v, val] : frontier)
                    for (int e : inst.dag.out_edges(v)) {
                        const AffineWeight& w = inst.affine(e);
                        Rational nv = w.a * val + w.b;
                        int to = inst.dag.edge(e).to;
                        if (!expect_max[to] || *expect_max[to] < nv) expect_max[to] = nv;
                        if (!expect_min[to] || *expect_min[to] > nv) expect_min[to] = nv;
                        next.emplace_back(to, std::move(nv));
                    }
                frontier = std::move(next);
            }
            for (int v = 0; v < n; ++v) {
                CHECK(hist.value_at(v, false, k) == expect_max[v]);
                CHECK(hist.value_at(v, true, k) == expect_min[v]);
                // Monotone across rounds.
                auto prev_max = hist.value_at(v, false, k - 1);
                auto prev_min = hist.value_at(v, true, k - 1);
                if (prev_max) CHECK(*prev_max <= *hist.value_at(v, false, k));
                if (prev_min) CHECK(*prev_min >= *hist.value_at(v, true, k));
            }
        }
    }
}

TEST_CASE("final labels: min <= max, source pinned at x0") {
    std::mt19937_64 rng(606);
    for (int round = 0; round < 60; ++round) {
        GppInstance inst = random_affine_instance(rng, {.max_vertices = 8, .max_edges = 14});
        Rational x0 = rand_rational(rng, -6, 6, 4);
        auto edges = detail::affine_edges(inst);
        const int n = inst.dag.vertex_count();
        RelaxState st =
            detail::relax(n, inst.dag.source(), edges, x0, n - 1).final_state();
        CHECK(st.r_max[inst.dag.source()] == x0);
        CHECK(st.r_min[inst.dag.source()] == x0);
        CHECK(st.p_max[inst.dag.source()].edge == -1);
        for (int v = 0; v < n; ++v) {
            CHECK(bool(st.r_max[v]) == bool(st.r_min[v]));
            if (st.r_max[v] && st.r_min[v]) CHECK(*st.r_min[v] <= *st.r_max[v]);
        }
    }
}

TEST_CASE("budget: too-small budget is infeasible") {
    GppInstance inst{Dag(2, 0, 1, {{0, 1}}),
                     ScalarWeights{AffineWeight{2, 1}},
                     {Rational(-1)},
                     std::nullopt};
    CHECK_THROWS_AS(solve_scalar_linear_budgeted(inst, 3, {3}, 2), Error);
    SolveResult res = solve_scalar_linear_budgeted(inst, 3, {3}, 3);
    CHECK(res.path == Path{0});
    CHECK(res.cost == solve_scalar_linear(inst, 3).cost);
}

TEST_CASE("budget: diamond excludes the long cheap path") {
    // Vertices 0 -> {1} -> 3 long way (duration 4, great cost) vs direct
    // edge (duration 1, poor cost); L = 1 so bigger composed value wins.
    GppInstance inst{Dag(3, 0, 2, {{0, 1}, {1, 2}, {0, 2}}),
                     ScalarWeights{AffineWeight{1, 50}, AffineWeight{1, 50}, AffineWeight{1, 1}},
                     {Rational(1)},
                     std::nullopt};
    std::vector<long long> durations{2, 2, 1};
    SolveResult unlimited = solve_scalar_linear(inst, 0);
    CHECK(unlimited.path == Path{0, 1});
    CHECK(unlimited.cost == 100);
    SolveResult tight = solve_scalar_linear_budgeted(inst, 0, durations, 2);
    CHECK(tight.path == Path{2});
    CHECK(tight.cost == 1);
    SolveResult loose = solve_scalar_linear_budgeted(inst, 0, durations, 4);
    CHECK(loose.path == unlimited.path);
    CHECK(loose.cost == unlimited.cost);
}

TEST_CASE("budget: unit durations with T = n-1 match the unbudgeted solver") {
    std::mt19937_64 rng(808);
    for (int round = 0; round < 100; ++round) {
        GppInstance inst = random_affine_instance(rng, {.max_vertices = 9, .max_edges = 16});
        Rational x0 = rand_rational(rng, -10, 10, 5);
        std::vector<long long> unit(inst.dag.edge_count(), 1);
        SolveResult a = solve_scalar_linear(inst, x0);
        SolveResult b =
            solve_scalar_linear_budgeted(inst, x0, unit, inst.dag.vertex_count() - 1);
        CHECK(a.cost == b.cost);
    }
}

TEST_CASE("budget: stale parent pointers cannot leak longer paths") {
    // u's max label improves in the final round through the longer arm;
    // the path reported for t must still be the one within budget.
    GppInstance inst{Dag(4, 0, 3, {{0, 1}, {0, 2}, {2, 1}, {1, 3}}),
                     ScalarWeights{AffineWeight{1, 1}, AffineWeight{1, 5}, AffineWeight{1, 5},
                                   AffineWeight{1, 0}},
                     {Rational(1)},
                     std::nullopt};
    std::vector<long long> unit(4, 1);
    SolveResult res = solve_scalar_linear_budgeted(inst, 0, unit, 2);
    CHECK(res.path == Path{0, 3});
    CHECK(res.cost == 1);
    CHECK(path_cost(inst, res.path, {Rational(0)}) == res.cost);
}
