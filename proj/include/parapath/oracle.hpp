// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parapath/instance.hpp"
#include "parapath/piecewise.hpp"

namespace parapath {
namespace oracle {

inline constexpr std::uint64_t kDefaultPathCap = std::uint64_t(1) << 16;

struct PathEnumeration {
    std::vector<Path> paths;
    std::uint64_t cap;
};

/// All s-t paths in DFS order, exploring edges by ascending id (so the
/// listing is lexicographic in edge-id sequences). Vertices that cannot
/// reach the target are skipped; exceeding the cap raises TooManyPaths.
inline PathEnumeration enumerate_paths(const Dag& dag, std::uint64_t cap = kDefaultPathCap) {
    PathEnumeration out{{}, cap};
    std::vector<bool> useful = dag.reaches_target();
    if (!useful[dag.source()]) return out;

    Path current;
    // Explicit stack of (vertex, next out-edge index) to avoid recursion depth limits.
    std::vector<std::pair<int, std::size_t>> stack{{dag.source(), 0}};
    while (!stack.empty()) {
        const int v = stack.back().first;
        if (v == dag.target()) {
            if (out.paths.size() >= cap)
                fail(ErrorCode::TooManyPaths, "more than " + std::to_string(cap) + " paths");
            out.paths.push_back(current);
            stack.pop_back();
            if (!current.empty()) current.pop_back();
            continue;
        }
        const auto& outs = dag.out_edges(v);
        bool advanced = false;
        while (stack.back().second < outs.size()) {
            int e = outs[stack.back().second++];
            if (!useful[dag.edge(e).to]) continue;
            current.push_back(e);
            stack.emplace_back(dag.edge(e).to, 0);
            advanced = true;
            break;
        }
        if (!advanced) {
            stack.pop_back();
            if (!current.empty()) current.pop_back();
        }
    }
    return out;
}

/// Exact argmax of path_cost over every s-t path; ties keep the
/// lexicographically smallest edge-id sequence (the enumeration order).
inline std::pair<Path, Rational> best_path(const GppInstance& inst,
                                           const std::vector<Rational>& x0,
                                           std::uint64_t cap = kDefaultPathCap) {
    validate_instance(inst);
    PathEnumeration en = enumerate_paths(inst.dag, cap);
    if (en.paths.empty()) fail(ErrorCode::UnreachableTarget, "no s-t path");
    Path best;
    Rational best_cost;
    bool first = true;
    for (const Path& p : en.paths) {
        Rational cost = path_cost(inst, p, x0);
        if (first || cost > best_cost) {
            best = p;
            best_cost = std::move(cost);
            first = false;
        }
    }
    return {std::move(best), std::move(best_cost)};
}

struct PathLine {
    LinearPiece line;
    Path path;
};

/// One exact cost line per path of a scalar all-affine instance:
/// slope is the product of the edge slopes, the intercept comes from
/// composing innermost-first.
inline std::vector<PathLine> all_path_lines(const GppInstance& inst,
                                            std::uint64_t cap = kDefaultPathCap) {
    if (!inst.is_scalar()) fail(ErrorCode::NonAffineWeight, "vector-valued weights");
    PathEnumeration en = enumerate_paths(inst.dag, cap);
    std::vector<PathLine> out;
    out.reserve(en.paths.size());
    for (const Path& p : en.paths) {
        Rational slope = 1, intercept = 0;
        for (int id : p) {
            const AffineWeight& w = inst.affine(id);
            slope *= w.a;
            intercept = w.a * intercept + w.b;
        }
        out.push_back({{std::move(slope), std::move(intercept)}, p});
    }
    return out;
}

/// The composed cost function of one path as an exact PL function
/// (affine and piecewise weights only).
inline PLFunction path_cost_function(const GppInstance& inst, const Path& p) {
    PLFunction h = PLFunction::identity();
    for (int id : p) {
        const ScalarWeight& w = inst.scalar_weights()[id];
        if (const auto* aff = std::get_if<AffineWeight>(&w)) {
            h = affine_image(h, aff->a, aff->b);
        } else if (const auto* pl = std::get_if<PLFunction>(&w)) {
            h = compose(*pl, h);
        } else {
            fail(ErrorCode::NonAffineWeight, "edge " + std::to_string(id) + " is quadratic");
        }
    }
    return h;
}

/// The exact optimal-cost envelope built the obvious way: enumerate every
/// path, take each path's cost function, and fold pointwise min (L < 0,
/// shortest) or max (L > 0, longest). Witnesses are full paths; ties keep
/// the lexicographically smallest path. Affine-only instances shortcut
/// through the line-envelope routine.
inline Annotated<Path> oracle_envelope(const GppInstance& inst,
                                       std::uint64_t cap = kDefaultPathCap) {
    if (!inst.is_scalar()) fail(ErrorCode::NonAffineWeight, "vector-valued weights");
    validate_instance(inst);
    const Rational& L = inst.liquidation[0];
    if (L == 0) fail(ErrorCode::ZeroLiquidation, "L = 0 has no optimal path");
    const bool lower = L < 0;

    if (inst.all_affine()) {
        std::vector<PathLine> lines = all_path_lines(inst, cap);
        if (lines.empty()) fail(ErrorCode::UnreachableTarget, "no s-t path");
        std::vector<LinearPiece> family;
        family.reserve(lines.size());
        for (const auto& pl : lines) family.push_back(pl.line);
        Annotated<std::size_t> env = lower ? lower_envelope(family) : upper_envelope(family);
        std::vector<Path> witnesses;
        witnesses.reserve(env.witnesses.size());
        for (std::size_t idx : env.witnesses) witnesses.push_back(lines[idx].path);
        return {std::move(env.fn), std::move(witnesses)};
    }

    PathEnumeration en = enumerate_paths(inst.dag, cap);
    if (en.paths.empty()) fail(ErrorCode::UnreachableTarget, "no s-t path");
    auto annotate = [&](std::size_t idx) {
        PLFunction fn = path_cost_function(inst, en.paths[idx]);
        std::vector<std::size_t> tags(fn.piece_count(), idx);
        return Annotated<std::size_t>{std::move(fn), std::move(tags)};
    };
    // Balanced pairwise fold over path indices. Ties still resolve to the
    // lexicographically smallest path: lower indices always sit in the
    // left operand, and min/max keep the left witness on ties.
    auto fold = [&](auto&& self, std::size_t lo, std::size_t hi) -> Annotated<std::size_t> {
        if (hi - lo == 1) return annotate(lo);
        std::size_t mid = lo + (hi - lo) / 2;
        Annotated<std::size_t> left = self(self, lo, mid);
        Annotated<std::size_t> right = self(self, mid, hi);
        return lower ? pointwise_min(left, right) : pointwise_max(left, right);
    };
    Annotated<std::size_t> env = fold(fold, 0, en.paths.size());
    std::vector<Path> witnesses;
    witnesses.reserve(env.witnesses.size());
    for (std::size_t idx : env.witnesses) witnesses.push_back(en.paths[idx]);
    return {std::move(env.fn), std::move(witnesses)};
}

}  // namespace oracle
}  // namespace parapath
