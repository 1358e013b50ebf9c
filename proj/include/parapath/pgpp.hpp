// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parapath/instance.hpp"
#include "parapath/oracle.hpp"
#include "parapath/piecewise.hpp"

namespace parapath {
namespace pgpp {

/// Provenance of one envelope piece: which incoming edge produced it and
/// which piece of which envelope at the predecessor it continues. The
/// source identity carries edge = -1.
struct PieceRef {
    int edge = -1;
    int piece = 0;
    bool from_upper = false;
    bool operator==(const PieceRef&) const = default;
};

/// Lower (concave) and upper (convex) envelope of the s-v path cost lines.
struct EnvelopePair {
    Annotated<PieceRef> lower;
    Annotated<PieceRef> upper;
    int vertex = -1;
};

/// The preprocessed lookup table: contiguous intervals of x0 with the
/// optimal path, its cost line, and the objective sign taken from L.
struct PgppTable {
    struct Entry {
        std::optional<Rational> x_lo;  // nullopt = -inf
        std::optional<Rational> x_hi;  // nullopt = +inf
        LinearPiece line;              // raw composed path-cost line
        Path witness;
        bool operator==(const Entry&) const = default;
    };
    int objective_sign = -1;
    std::vector<Entry> entries;
    bool operator==(const PgppTable&) const = default;
};

namespace detail {

// Candidate envelope at v through edge e: the affine image of the right
// envelope at the predecessor (nonnegative slopes keep the side, negative
// slopes swap it; a zero slope collapses to a constant whose witness just
// needs any predecessor piece).
inline Annotated<PieceRef> through_edge(const EnvelopePair& pred, const AffineWeight& w, int edge,
                                        bool building_upper) {
    const bool keep_side = w.a >= 0;
    const bool use_upper = building_upper == keep_side;
    const Annotated<PieceRef>& src = use_upper ? pred.upper : pred.lower;
    PLFunction fn = affine_image(src.fn, w.a, w.b);
    std::vector<PieceRef> tags;
    tags.reserve(fn.piece_count());
    if (w.a == 0) {
        tags.push_back({edge, 0, use_upper});
    } else {
        for (int i = 0; i < static_cast<int>(fn.piece_count()); ++i)
            tags.push_back({edge, i, use_upper});
    }
    return {std::move(fn), std::move(tags)};
}

}  // namespace detail

/// Topological-order DP for scalar all-affine instances: the source holds
/// the identity line; every other kept vertex folds the affine images of
/// its predecessors' envelopes. Vertices off every s-t path are pruned
/// (their slot stays empty). Edges fold in id order, so equal-line ties
/// resolve to the smallest edge id.
inline std::vector<std::optional<EnvelopePair>> build_envelopes(const GppInstance& inst) {
    if (!inst.is_scalar() || !inst.all_affine())
        fail(ErrorCode::NonAffineWeight, "envelope DP needs scalar affine weights");
    validate_instance(inst);
    const Dag& dag = inst.dag;
    std::vector<bool> from_s = dag.reachable_from_source();
    std::vector<bool> to_t = dag.reaches_target();
    std::vector<std::optional<EnvelopePair>> env(dag.vertex_count());

    Annotated<PieceRef> ident{PLFunction::identity(), {PieceRef{}}};
    env[dag.source()] = EnvelopePair{ident, ident, dag.source()};

    for (int v : dag.topological_order()) {
        if (v == dag.source() || !from_s[v] || !to_t[v]) continue;
        std::vector<int> incoming;
        for (int e : dag.in_edges(v))
            if (env[dag.edge(e).from]) incoming.push_back(e);
        std::sort(incoming.begin(), incoming.end());
        if (incoming.empty()) continue;
        std::optional<Annotated<PieceRef>> lower, upper;
        for (int e : incoming) {
            const EnvelopePair& pred = *env[dag.edge(e).from];
            const AffineWeight& w = inst.affine(e);
            Annotated<PieceRef> lo_cand = detail::through_edge(pred, w, e, false);
            Annotated<PieceRef> up_cand = detail::through_edge(pred, w, e, true);
            lower = lower ? pointwise_min(*lower, lo_cand) : std::move(lo_cand);
            upper = upper ? pointwise_max(*upper, up_cand) : std::move(up_cand);
        }
        env[v] = EnvelopePair{std::move(*lower), std::move(*upper), v};
    }
    if (!env[dag.target()]) fail(ErrorCode::UnreachableTarget, "target pruned");
    return env;
}

/// Expands a piece's provenance chain back to a full source-to-v path.
inline Path expand_witness(const std::vector<std::optional<EnvelopePair>>& env, const Dag& dag,
                           int vertex, bool from_upper, int piece) {
    Path reversed;
    int v = vertex;
    bool upper = from_upper;
    int idx = piece;
    for (;;) {
        const EnvelopePair& pair = *env[v];
        const PieceRef& ref = upper ? pair.upper.witnesses[idx] : pair.lower.witnesses[idx];
        if (ref.edge < 0) break;
        reversed.push_back(ref.edge);
        v = dag.edge(ref.edge).from;
        upper = ref.from_upper;
        idx = ref.piece;
    }
    return Path(reversed.rbegin(), reversed.rend());
}

namespace detail {

inline PgppTable table_from_annotated(const Annotated<Path>& env, int objective_sign) {
    PgppTable table;
    table.objective_sign = objective_sign;
    const auto& breaks = env.fn.breakpoints();
    for (std::size_t i = 0; i < env.fn.piece_count(); ++i) {
        PgppTable::Entry entry;
        if (i > 0) entry.x_lo = breaks[i - 1];
        if (i < breaks.size()) entry.x_hi = breaks[i];
        entry.line = env.fn.pieces()[i];
        entry.witness = env.witnesses[i];
        table.entries.push_back(std::move(entry));
    }
    return table;
}

}  // namespace detail

/// Preprocesses a scalar all-affine instance into the full x0 -> optimal
/// path table: the target's lower envelope for L < 0, upper for L > 0.
inline PgppTable build_table(const GppInstance& inst) {
    const Rational& L = inst.liquidation.empty() ? Rational(0) : inst.liquidation[0];
    if (L == 0) fail(ErrorCode::ZeroLiquidation, "L = 0 has no optimal path");
    auto env = build_envelopes(inst);
    const EnvelopePair& at_target = *env[inst.dag.target()];
    const bool use_upper = L > 0;
    const Annotated<PieceRef>& chosen = use_upper ? at_target.upper : at_target.lower;
    Annotated<Path> expanded{chosen.fn, {}};
    expanded.witnesses.reserve(chosen.fn.piece_count());
    for (std::size_t i = 0; i < chosen.fn.piece_count(); ++i)
        expanded.witnesses.push_back(
            expand_witness(env, inst.dag, inst.dag.target(), use_upper, static_cast<int>(i)));
    return detail::table_from_annotated(expanded, L > 0 ? 1 : -1);
}

/// Table for scalar instances with piecewise weights, built from the
/// explicit path-by-path envelope (exponential in the worst case; bounded
/// by the path cap).
inline PgppTable build_table_oracle(const GppInstance& inst,
                                    std::uint64_t cap = oracle::kDefaultPathCap) {
    const Rational& L = inst.liquidation.empty() ? Rational(0) : inst.liquidation[0];
    if (L == 0) fail(ErrorCode::ZeroLiquidation, "L = 0 has no optimal path");
    Annotated<Path> env = oracle::oracle_envelope(inst, cap);
    return detail::table_from_annotated(env, L > 0 ? 1 : -1);
}

/// Number of different optimal paths the table switches between. For
/// all-affine instances this equals the entry count (a line occupies one
/// contiguous stretch of a concave/convex envelope); for piecewise
/// instances a witness can span several segments or recur.
inline std::size_t distinct_witness_count(const PgppTable& table) {
    std::set<Path> seen;
    for (const auto& e : table.entries) seen.insert(e.witness);
    return seen.size();
}

struct QueryResult {
    Path path;
    Rational cost;  // objective_sign * line(x0)
};

/// Binary search for the entry whose interval [x_lo, x_hi) contains x0.
/// A query exactly on a breakpoint resolves to the entry opening there;
/// both sides agree on the cost by continuity.
inline QueryResult query(const PgppTable& table, const Rational& x0) {
    if (table.entries.empty()) fail(ErrorCode::InvalidArgument, "empty table");
    std::size_t lo = 0, hi = table.entries.size();
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (table.entries[mid].x_lo && !(x0 < *table.entries[mid].x_lo))
            lo = mid;
        else
            hi = mid;
    }
    const PgppTable::Entry& entry = table.entries[lo];
    return {entry.witness, Rational(table.objective_sign) * entry.line.eval(x0)};
}

}  // namespace pgpp
}  // namespace parapath
