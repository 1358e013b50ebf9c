// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "parapath/instance.hpp"

namespace parapath {

/// Saturating count of s-t paths (UINT64_MAX on overflow).
inline std::uint64_t count_paths(const Dag& dag) {
    constexpr std::uint64_t kMax = UINT64_MAX;
    std::vector<std::uint64_t> dp(dag.vertex_count(), 0);
    dp[dag.source()] = 1;
    for (int v : dag.topological_order()) {
        if (dp[v] == 0) continue;
        for (int e : dag.out_edges(v)) {
            int to = dag.edge(e).to;
            dp[to] = (dp[to] > kMax - dp[v]) ? kMax : dp[to] + dp[v];
        }
    }
    return dp[dag.target()];
}

// mt19937_64 output reduced by modulo: biased in principle, but identical
// on every platform, which is what seeded reproducibility needs here.
inline long long rand_int(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational rand_rational(std::mt19937_64& rng, long long lo, long long hi,
                              long long max_den = 10) {
    long long den = rand_int(rng, 1, max_den);
    return Rational(Integer(rand_int(rng, lo * den, hi * den)), Integer(den));
}

struct RandomInstanceOptions {
    int min_vertices = 2;
    int max_vertices = 12;
    int max_edges = 24;
    long long coeff_lo = -9;
    long long coeff_hi = 9;
    std::uint64_t max_paths = 0;    // 0 = no bound
    bool unit_liquidation = false;  // L in {-1, +1} instead of any nonzero coefficient
};

/// Random scalar all-affine instance: a monotone spine guarantees an s-t
/// path, extra forward edges (parallel ones allowed) fill up to the edge
/// budget, and instances over the path bound are redrawn.
inline GppInstance random_affine_instance(std::mt19937_64& rng,
                                          const RandomInstanceOptions& opt = {}) {
    for (;;) {
        int n = static_cast<int>(rand_int(rng, opt.min_vertices, opt.max_vertices));
        std::vector<std::pair<int, int>> arcs;
        int at = 0;
        while (at != n - 1) {
            int next = at + 1;
            for (int v = at + 1; v < n - 1; ++v)
                if (rand_int(rng, 0, 1) == 0) {
                    next = v;
                    break;
                }
            if (rand_int(rng, 0, 2) == 0) next = n - 1;
            arcs.emplace_back(at, next);
            at = next;
        }
        const long long spine = static_cast<long long>(arcs.size());
        long long m = rand_int(rng, spine, std::max<long long>(spine, opt.max_edges));
        while (static_cast<long long>(arcs.size()) < m) {
            int u = static_cast<int>(rand_int(rng, 0, n - 2));
            int v = static_cast<int>(rand_int(rng, u + 1, n - 1));
            arcs.emplace_back(u, v);
        }
        Dag dag(n, 0, n - 1, arcs);
        if (opt.max_paths && count_paths(dag) > opt.max_paths) continue;

        ScalarWeights weights;
        weights.reserve(arcs.size());
        for (std::size_t i = 0; i < arcs.size(); ++i)
            weights.push_back(AffineWeight{Rational(rand_int(rng, opt.coeff_lo, opt.coeff_hi)),
                                           Rational(rand_int(rng, opt.coeff_lo, opt.coeff_hi))});
        Rational L;
        if (opt.unit_liquidation) {
            L = rand_int(rng, 0, 1) == 0 ? Rational(-1) : Rational(1);
        } else {
            do {
                L = Rational(rand_int(rng, opt.coeff_lo, opt.coeff_hi));
            } while (L == 0);
        }
        return {std::move(dag), std::move(weights), {std::move(L)}, std::nullopt};
    }
}

}  // namespace parapath
