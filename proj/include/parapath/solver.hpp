// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parapath/instance.hpp"

namespace parapath {

/// Final relaxation labels. Unreached vertices hold no value (the
/// +-infinity sentinels); weights are never applied to a sentinel.
struct RelaxState {
    struct Parent {
        int edge = -1;
        bool from_min = false;  // continue backtracking on the min chain at edge.from
    };
    std::vector<std::optional<Rational>> r_max;
    std::vector<std::optional<Rational>> r_min;
    std::vector<Parent> p_max;
    std::vector<Parent> p_min;
};

struct SolveResult {
    Path path;
    Rational cost;
    bool zero_liquidation_warning = false;
};

namespace detail {

struct RelaxEdge {
    int id;
    int from;
    int to;
    Rational a;
    Rational b;
};

// Every label improvement is recorded with the round it happened in.
// Backtracking walks versions under a decreasing round bound, which keeps
// the reconstructed path consistent with the reported value even when a
// predecessor label improved after the pointer was taken (that matters
// once the round count is capped by a time budget: following the latest
// pointers could splice in a longer-than-budget subpath).
struct LabelHistory {
    struct Version {
        long long round;
        int edge;       // -1 marks the origin at the source
        bool from_min;  // chain to continue from at edge.from
        Rational value;
    };
    std::vector<std::vector<Version>> max_chain;
    std::vector<std::vector<Version>> min_chain;

    const std::vector<Version>& chain(int v, bool min_chain_flag) const {
        return min_chain_flag ? min_chain[v] : max_chain[v];
    }

    // Latest version recorded in rounds <= bound.
    const Version* version_at(int v, bool min_chain_flag, long long bound) const {
        const auto& versions = chain(v, min_chain_flag);
        const Version* found = nullptr;
        for (const auto& ver : versions) {
            if (ver.round > bound) break;
            found = &ver;
        }
        return found;
    }

    std::optional<Rational> value_at(int v, bool min_chain_flag, long long bound) const {
        const Version* ver = version_at(v, min_chain_flag, bound);
        if (!ver) return std::nullopt;
        return ver->value;
    }

    RelaxState final_state() const {
        RelaxState st;
        const std::size_t n = max_chain.size();
        st.r_max.resize(n);
        st.r_min.resize(n);
        st.p_max.resize(n);
        st.p_min.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (!max_chain[v].empty()) {
                st.r_max[v] = max_chain[v].back().value;
                st.p_max[v] = {max_chain[v].back().edge, max_chain[v].back().from_min};
            }
            if (!min_chain[v].empty()) {
                st.r_min[v] = min_chain[v].back().value;
                st.p_min[v] = {min_chain[v].back().edge, min_chain[v].back().from_min};
            }
        }
        return st;
    }
};

// Relaxation rounds over all edges in id order. Each round reads the
// previous round's labels, so after round k the labels are exactly the
// optima over s-v paths with at most k edges. A round with no update is a
// fixpoint and ends the loop early. Non-negative slopes propagate
// max->max and min->min; negative slopes cross the chains.
inline LabelHistory relax(int vertex_count, int source, const std::vector<RelaxEdge>& edges,
                          const Rational& x0, long long rounds) {
    LabelHistory hist;
    hist.max_chain.assign(vertex_count, {});
    hist.min_chain.assign(vertex_count, {});
    hist.max_chain[source].push_back({0, -1, false, x0});
    hist.min_chain[source].push_back({0, -1, true, x0});

    std::vector<std::optional<Rational>> cur_max(vertex_count), cur_min(vertex_count);
    cur_max[source] = cur_min[source] = x0;
    for (long long round = 1; round <= rounds; ++round) {
        const std::vector<std::optional<Rational>> prev_max = cur_max;
        const std::vector<std::optional<Rational>> prev_min = cur_min;
        bool changed = false;
        for (const auto& e : edges) {
            const bool nonneg = e.a >= 0;
            if (const auto& src = nonneg ? prev_max[e.from] : prev_min[e.from]) {
                Rational cand = e.a * *src + e.b;
                if (!cur_max[e.to] || *cur_max[e.to] < cand) {
                    cur_max[e.to] = cand;
                    hist.max_chain[e.to].push_back({round, e.id, !nonneg, std::move(cand)});
                    changed = true;
                }
            }
            if (const auto& src = nonneg ? prev_min[e.from] : prev_max[e.from]) {
                Rational cand = e.a * *src + e.b;
                if (!cur_min[e.to] || *cur_min[e.to] > cand) {
                    cur_min[e.to] = cand;
                    hist.min_chain[e.to].push_back({round, e.id, nonneg, std::move(cand)});
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return hist;
}

inline Path backtrack(const LabelHistory& hist, const std::vector<RelaxEdge>& edges, int source,
                      int target, bool use_min, long long round_bound) {
    Path reversed;
    int v = target;
    bool min_chain = use_min;
    long long bound = round_bound;
    while (v != source) {
        const LabelHistory::Version* ver = hist.version_at(v, min_chain, bound);
        if (!ver || ver->edge < 0)
            fail(ErrorCode::UnreachableTarget, "no parent at vertex " + std::to_string(v));
        reversed.push_back(ver->edge);
        min_chain = ver->from_min;
        bound = ver->round - 1;
        v = edges[ver->edge].from;
    }
    return Path(reversed.rbegin(), reversed.rend());
}

inline std::vector<RelaxEdge> affine_edges(const GppInstance& inst) {
    std::vector<RelaxEdge> edges;
    edges.reserve(inst.dag.edges().size());
    for (const Edge& e : inst.dag.edges()) {
        const AffineWeight& w = inst.affine(e.id);
        edges.push_back({e.id, e.from, e.to, w.a, w.b});
    }
    return edges;
}

inline SolveResult read_result(const LabelHistory& hist, const std::vector<RelaxEdge>& edges,
                               int source, int target, const Rational& liquidation,
                               long long round_bound, ErrorCode unreached) {
    const bool use_min = liquidation < 0;
    const auto value = hist.value_at(target, use_min, round_bound);
    if (!value) fail(unreached, "target vertex " + std::to_string(target));
    SolveResult out;
    out.path = backtrack(hist, edges, source, target, use_min, round_bound);
    out.cost = liquidation * *value;
    out.zero_liquidation_warning = liquidation == 0;
    return out;
}

}  // namespace detail

/// Exact optimum over all s-t paths of a scalar all-affine instance, in
/// O(n * m) relaxation work. L > 0 reads the max chain, L < 0 the min
/// chain; L = 0 returns cost 0 with a warning flag and an arbitrary path.
inline SolveResult solve_scalar_linear(const GppInstance& inst, const Rational& x0) {
    if (!inst.is_scalar()) fail(ErrorCode::NonAffineWeight, "vector-valued weights");
    validate_instance(inst);
    auto edges = detail::affine_edges(inst);
    const long long rounds = inst.dag.vertex_count() - 1;
    detail::LabelHistory hist =
        detail::relax(inst.dag.vertex_count(), inst.dag.source(), edges, x0, rounds);
    return detail::read_result(hist, edges, inst.dag.source(), inst.dag.target(),
                               inst.liquidation[0], rounds, ErrorCode::UnreachableTarget);
}

/// Time-budget variant: each edge of duration t_e becomes a chain whose
/// first edge carries the weight followed by t_e - 1 identity edges, and
/// relaxation stops after T rounds, so only paths of total duration <= T
/// can reach the target.
inline SolveResult solve_scalar_linear_budgeted(const GppInstance& inst, const Rational& x0,
                                                const std::vector<long long>& durations,
                                                long long budget) {
    if (!inst.is_scalar()) fail(ErrorCode::NonAffineWeight, "vector-valued weights");
    validate_instance(inst);
    if (budget < 1) fail(ErrorCode::InvalidArgument, "budget must be >= 1");
    if (durations.size() != static_cast<std::size_t>(inst.dag.edge_count()))
        fail(ErrorCode::DimensionMismatch,
             std::to_string(durations.size()) + " durations for " +
                 std::to_string(inst.dag.edge_count()) + " edges");
    for (std::size_t i = 0; i < durations.size(); ++i)
        if (durations[i] < 1)
            fail(ErrorCode::InvalidArgument, "duration of edge " + std::to_string(i));

    // Expanded graph: original vertices keep their ids, chain vertices are
    // appended. original_of maps expanded edges back (-1 = identity filler).
    std::vector<detail::RelaxEdge> expanded;
    int next_vertex = inst.dag.vertex_count();
    std::vector<int> original_of;
    for (const Edge& e : inst.dag.edges()) {
        const AffineWeight& w = inst.affine(e.id);
        long long t = durations[e.id];
        int tail = t == 1 ? e.to : next_vertex++;
        expanded.push_back({static_cast<int>(original_of.size()), e.from, tail, w.a, w.b});
        original_of.push_back(e.id);
        for (long long j = 1; j < t; ++j) {
            int head = tail;
            tail = (j == t - 1) ? e.to : next_vertex++;
            expanded.push_back({static_cast<int>(original_of.size()), head, tail, 1, 0});
            original_of.push_back(-1);
        }
    }
    const long long rounds = std::min<long long>(budget, next_vertex - 1);
    detail::LabelHistory hist =
        detail::relax(next_vertex, inst.dag.source(), expanded, x0, rounds);
    SolveResult out = detail::read_result(hist, expanded, inst.dag.source(), inst.dag.target(),
                                          inst.liquidation[0], rounds, ErrorCode::NoFeasiblePath);
    Path mapped;
    for (int id : out.path)
        if (original_of[id] >= 0) mapped.push_back(original_of[id]);
    out.path = std::move(mapped);
    return out;
}

}  // namespace parapath
