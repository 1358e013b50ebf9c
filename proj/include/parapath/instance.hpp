// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "parapath/dag.hpp"
#include "parapath/errors.hpp"
#include "parapath/piecewise.hpp"
#include "parapath/rational.hpp"

namespace parapath {

struct AffineWeight {
    Rational a;  // slope
    Rational b;  // offset
    Rational eval(const Rational& x) const { return a * x + b; }
    bool operator==(const AffineWeight&) const = default;
};

/// Supported only for point evaluation (oracle); envelope machinery and
/// the exact solver reject it.
struct QuadraticWeight {
    Rational a;
    Rational b;
    Rational c;
    Rational eval(const Rational& x) const { return a * x * x + b * x + c; }
    bool operator==(const QuadraticWeight&) const = default;
};

/// Scalar edge weight. A one-piece piecewise function must be stored as
/// AffineWeight (validate_instance enforces it).
using ScalarWeight = std::variant<AffineWeight, PLFunction, QuadraticWeight>;

inline Rational eval_weight(const ScalarWeight& w, const Rational& x) {
    return std::visit([&](const auto& f) { return f.eval(x); }, w);
}

/// x -> M*x + offset on k-vectors, k >= 2.
struct AffineMap {
    std::vector<std::vector<Rational>> matrix;
    std::vector<Rational> offset;

    std::size_t dim() const { return offset.size(); }

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        std::vector<Rational> y(offset);
        for (std::size_t i = 0; i < matrix.size(); ++i)
            for (std::size_t j = 0; j < matrix[i].size(); ++j) y[i] += matrix[i][j] * x[j];
        return y;
    }
    bool operator==(const AffineMap&) const = default;
};

using ScalarWeights = std::vector<ScalarWeight>;
using VectorWeights = std::vector<AffineMap>;

/// A full problem instance: DAG, one weight per edge, liquidation vector L,
/// and optionally the initial parameter. Scalar instances have k = 1.
struct GppInstance {
    Dag dag;
    std::variant<ScalarWeights, VectorWeights> weights;
    std::vector<Rational> liquidation;
    std::optional<std::vector<Rational>> x0;

    bool is_scalar() const { return std::holds_alternative<ScalarWeights>(weights); }
    std::size_t k() const { return liquidation.size(); }
    const ScalarWeights& scalar_weights() const { return std::get<ScalarWeights>(weights); }
    const VectorWeights& vector_weights() const { return std::get<VectorWeights>(weights); }

    /// The affine coefficients of edge id; fails with NonAffineWeight for
    /// any other weight shape.
    const AffineWeight& affine(int id) const {
        const ScalarWeight& w = scalar_weights()[static_cast<std::size_t>(id)];
        if (const auto* aff = std::get_if<AffineWeight>(&w)) return *aff;
        fail(ErrorCode::NonAffineWeight, "edge " + std::to_string(id));
    }

    bool all_affine() const {
        if (!is_scalar()) return false;
        for (const auto& w : scalar_weights())
            if (!std::holds_alternative<AffineWeight>(w)) return false;
        return true;
    }

    bool operator==(const GppInstance&) const = default;
};

/// Re-checks every model invariant plus reachability of the target.
/// The Dag itself is acyclic by construction, so the cycle check lives
/// there; everything weight- or dimension-shaped is checked here.
inline void validate_instance(const GppInstance& inst) {
    const std::size_t m = static_cast<std::size_t>(inst.dag.edge_count());
    const std::size_t k = inst.k();
    if (inst.is_scalar()) {
        if (k != 1)
            fail(ErrorCode::DimensionMismatch,
                 "scalar instance with L of size " + std::to_string(k));
        const auto& ws = inst.scalar_weights();
        if (ws.size() != m)
            fail(ErrorCode::DanglingEdge, std::to_string(ws.size()) + " weights for " +
                                              std::to_string(m) + " edges");
        for (std::size_t i = 0; i < ws.size(); ++i) {
            if (const auto* pl = std::get_if<PLFunction>(&ws[i])) {
                if (pl->piece_count() < 2)
                    fail(ErrorCode::InvalidWeight,
                         "edge " + std::to_string(i) + ": one-piece function must be affine");
            } else if (const auto* q = std::get_if<QuadraticWeight>(&ws[i])) {
                if (q->a == 0)
                    fail(ErrorCode::InvalidWeight,
                         "edge " + std::to_string(i) + ": quadratic with a = 0");
            }
        }
    } else {
        if (k < 2)
            fail(ErrorCode::DimensionMismatch,
                 "vector instance needs k >= 2, got " + std::to_string(k));
        const auto& ws = inst.vector_weights();
        if (ws.size() != m)
            fail(ErrorCode::DanglingEdge, std::to_string(ws.size()) + " weights for " +
                                              std::to_string(m) + " edges");
        for (std::size_t i = 0; i < ws.size(); ++i) {
            if (ws[i].offset.size() != k || ws[i].matrix.size() != k)
                fail(ErrorCode::DimensionMismatch, "edge " + std::to_string(i) + " weight map");
            for (const auto& row : ws[i].matrix)
                if (row.size() != k)
                    fail(ErrorCode::DimensionMismatch,
                         "edge " + std::to_string(i) + " matrix row");
        }
    }
    if (inst.x0 && inst.x0->size() != k)
        fail(ErrorCode::DimensionMismatch, "x0 of size " + std::to_string(inst.x0->size()) +
                                               " for k = " + std::to_string(k));
    if (!inst.dag.reachable_from_source()[inst.dag.target()])
        fail(ErrorCode::UnreachableTarget,
             "target " + std::to_string(inst.dag.target()) + " unreachable from source");
}

/// Image of x0 under the path's weight maps, innermost factor first.
inline std::vector<Rational> composed_value(const GppInstance& inst, const Path& p,
                                            const std::vector<Rational>& x0) {
    require_valid_path(inst.dag, p);
    if (x0.size() != inst.k())
        fail(ErrorCode::DimensionMismatch, "x0 of size " + std::to_string(x0.size()));
    std::vector<Rational> value = x0;
    if (inst.is_scalar()) {
        for (int id : p) value[0] = eval_weight(inst.scalar_weights()[id], value[0]);
    } else {
        for (int id : p) value = inst.vector_weights()[id].apply(value);
    }
    return value;
}

/// L . w_r(...w_1(x0)...), the GPP objective of path p at x0.
inline Rational path_cost(const GppInstance& inst, const Path& p,
                          const std::vector<Rational>& x0) {
    std::vector<Rational> value = composed_value(inst, p, x0);
    Rational cost = 0;
    for (std::size_t i = 0; i < value.size(); ++i) cost += inst.liquidation[i] * value[i];
    return cost;
}

}  // namespace parapath
