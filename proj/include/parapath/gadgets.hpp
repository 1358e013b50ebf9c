// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parapath/instance.hpp"

namespace parapath {
namespace gadgets {

/// Paths of the two-parallel-edge layered graph, written as bit strings:
/// bit i = 0 takes layer i's f0 edge (id 2i), bit 1 the f1 edge (id 2i+1).
using SigmaString = std::string;

inline Path path_for_sigma(const SigmaString& sigma) {
    Path p;
    p.reserve(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] != '0' && sigma[i] != '1')
            fail(ErrorCode::InvalidArgument, "sigma must be over {0,1}: " + sigma);
        p.push_back(static_cast<int>(2 * i) + (sigma[i] == '1' ? 1 : 0));
    }
    return p;
}

inline SigmaString sigma_for_path(const Path& p) {
    SigmaString sigma;
    sigma.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        int bit = p[i] - static_cast<int>(2 * i);
        if (bit != 0 && bit != 1)
            fail(ErrorCode::InvalidPath, "edge " + std::to_string(p[i]) + " is not in layer " +
                                             std::to_string(i));
        sigma.push_back(bit ? '1' : '0');
    }
    return sigma;
}

struct GnFragment {
    Dag dag;
    ScalarWeights weights;
};

/// The layered graph with vertices v_0..v_n and, per layer i, two parallel
/// edges v_i -> v_{i+1}: id 2i carries f0 and id 2i+1 carries f1. Paths
/// biject with {0,1}^n, composing innermost-first along the path.
inline GnFragment make_gn(int n, const ScalarWeight& f0, const ScalarWeight& f1) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(2 * static_cast<std::size_t>(n));
    ScalarWeights weights;
    for (int i = 0; i < n; ++i) {
        arcs.emplace_back(i, i + 1);
        weights.push_back(f0);
        arcs.emplace_back(i, i + 1);
        weights.push_back(f1);
    }
    return {Dag(n + 1, 0, n, arcs), std::move(weights)};
}

enum class LastEdge { Abs, Square };

struct SetPartitionGadget {
    GppInstance instance;
    Rational epsilon;  // kept for reporting only; it does not enter the construction
    Rational delta;
    Integer scale;                 // ceil(delta + 1)
    std::vector<Integer> scaled;   // scale * a_i
};

/// Hardness instance for equal-sum partition: layer i offers x + a'_i and
/// x - a'_i on the scaled elements a'_i = ceil(delta+1) * a_i, and a final
/// |x| (or x^2) edge makes every cost nonnegative. With L = [-1] and
/// x0 = [0], the best objective is 0 exactly when an equal-sum partition
/// exists, and otherwise every path's |sum| exceeds delta.
inline SetPartitionGadget set_partition_gadget(const std::vector<Integer>& elements,
                                               const Rational& epsilon, const Rational& delta,
                                               LastEdge last_edge = LastEdge::Abs) {
    if (elements.empty()) fail(ErrorCode::EmptySet, "set partition needs elements");
    if (delta < 0 || epsilon < 0)
        fail(ErrorCode::InvalidArgument, "epsilon and delta must be >= 0");
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == 0)
            fail(ErrorCode::InvalidArgument, "element " + std::to_string(i) + " is zero");
    const Integer scale = ceil_rat(delta + 1);
    const int n = static_cast<int>(elements.size());

    std::vector<std::pair<int, int>> arcs;
    ScalarWeights weights;
    std::vector<Integer> scaled;
    for (int i = 0; i < n; ++i) {
        Integer s = scale * elements[i];
        arcs.emplace_back(i, i + 1);
        weights.push_back(AffineWeight{1, Rational(s)});
        arcs.emplace_back(i, i + 1);
        weights.push_back(AffineWeight{1, Rational(-s)});
        scaled.push_back(std::move(s));
    }
    arcs.emplace_back(n, n + 1);
    if (last_edge == LastEdge::Abs) {
        weights.push_back(PLFunction::from_parts({0}, {{-1, 0}, {1, 0}}));
    } else {
        weights.push_back(QuadraticWeight{1, 0, 0});
    }

    GppInstance inst{Dag(n + 2, 0, n + 1, arcs),
                     std::move(weights),
                     {Rational(-1)},
                     std::vector<Rational>{Rational(0)}};
    return {std::move(inst), epsilon, delta, scale, std::move(scaled)};
}

/// Hardness instance for equal-product partition (k = 2): layer i offers
/// diag(a_i, 1/a_i) and diag(1/a_i, a_i). With x0 = [-1,-1] and L = [1,1]
/// a path's cost is -(a + 1/a) for a the signed product, so the optimum is
/// -2 exactly when a product partition exists and below -2 otherwise.
inline GppInstance product_partition_gadget(const std::vector<Integer>& elements) {
    if (elements.empty()) fail(ErrorCode::EmptySet, "product partition needs elements");
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] < 1)
            fail(ErrorCode::NonPositiveElement, "element " + std::to_string(i));
    const int n = static_cast<int>(elements.size());
    std::vector<std::pair<int, int>> arcs;
    VectorWeights weights;
    for (int i = 0; i < n; ++i) {
        Rational a(elements[i]);
        Rational inv = 1 / a;
        arcs.emplace_back(i, i + 1);
        weights.push_back(AffineMap{{{a, 0}, {0, inv}}, {0, 0}});
        arcs.emplace_back(i, i + 1);
        weights.push_back(AffineMap{{{inv, 0}, {0, a}}, {0, 0}});
    }
    return {Dag(n + 1, 0, n, arcs),
            std::move(weights),
            {Rational(1), Rational(1)},
            std::vector<Rational>{Rational(-1), Rational(-1)}};
}

// The fixed two-piece weights of the exponential-table family.
inline PLFunction lowerbound_f0() { return PLFunction::from_parts({Rational(1, 3)}, {{-3, 1}, {3, -1}}); }
inline PLFunction lowerbound_f1() { return PLFunction::from_parts({Rational(2, 3)}, {{-3, 2}, {3, -2}}); }

/// The layered instance whose optimal-cost envelope has exactly 2^n
/// pieces; L = [-1], x0 left open (it is a preprocessing input).
inline GppInstance lowerbound_instance(int n) {
    GnFragment gn = make_gn(n, lowerbound_f0(), lowerbound_f1());
    return {std::move(gn.dag), std::move(gn.weights), {Rational(-1)}, std::nullopt};
}

/// Exact parameter values alpha_n: for each sigma, the unique x where the
/// path P_sigma has cost zero. Placement alternates between [0,1/3]
/// (leading 0) and [2/3,1] (leading 1), inverting the contracting piece of
/// f0 or f1 one bit at a time.
struct AlphaCertificate {
    int n = 0;
    std::map<SigmaString, Rational> values;
};

inline AlphaCertificate alpha(int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
    std::map<SigmaString, Rational> values{{"0", Rational(1, 3)}, {"1", Rational(2, 3)}};
    for (int level = 2; level <= n; ++level) {
        std::map<SigmaString, Rational> next;
        for (const auto& [suffix, val] : values) {
            next.emplace("0" + suffix, (1 - val) / 3);  // invert f0 on [0, 1/3]
            next.emplace("1" + suffix, (2 + val) / 3);  // invert f1 on [2/3, 1]
        }
        values = std::move(next);
    }
    return {n, std::move(values)};
}

/// f_sigma(x): the cost of path P_sigma evaluated pointwise (first bit is
/// the innermost function).
inline Rational eval_sigma(const SigmaString& sigma, const Rational& x) {
    Rational y = x;
    for (char bit : sigma) {
        if (bit == '0') {
            y = y <= Rational(1, 3) ? 1 - 3 * y : 3 * y - 1;
        } else {
            y = y <= Rational(2, 3) ? 2 - 3 * y : 3 * y - 2;
        }
    }
    return y;
}

}  // namespace gadgets
}  // namespace parapath
