// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parapath/errors.hpp"

namespace parapath {

struct Edge {
    int id;
    int from;
    int to;
    bool operator==(const Edge&) const = default;
};

/// An s-t path as the ordered list of edge ids it traverses.
using Path = std::vector<int>;

/// Directed acyclic multigraph with dense edge ids 0..m-1 and two
/// distinguished vertices. Acyclicity is verified at construction
/// (Kahn's algorithm); parallel edges are allowed and distinguished
/// only by id. Immutable afterwards.
class Dag {
public:
    Dag(int vertex_count, int source, int target, const std::vector<std::pair<int, int>>& arcs)
        : vertex_count_(vertex_count), source_(source), target_(target) {
        if (vertex_count < 2) fail(ErrorCode::InvalidArgument, "need at least 2 vertices");
        if (source < 0 || source >= vertex_count)
            fail(ErrorCode::InvalidArgument, "source vertex " + std::to_string(source));
        if (target < 0 || target >= vertex_count)
            fail(ErrorCode::InvalidArgument, "target vertex " + std::to_string(target));
        if (source == target) fail(ErrorCode::InvalidArgument, "source equals target");
        edges_.reserve(arcs.size());
        out_.assign(vertex_count, {});
        in_.assign(vertex_count, {});
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            auto [u, v] = arcs[i];
            int id = static_cast<int>(i);
            if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
                fail(ErrorCode::DanglingEdge, "edge " + std::to_string(id) + " endpoint out of range");
            edges_.push_back({id, u, v});
            out_[u].push_back(id);
            in_[v].push_back(id);
        }
        topo_ = kahn_order();
    }

    int vertex_count() const { return vertex_count_; }
    int source() const { return source_; }
    int target() const { return target_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
    const std::vector<int>& out_edges(int v) const { return out_[v]; }
    const std::vector<int>& in_edges(int v) const { return in_[v]; }
    const std::vector<int>& topological_order() const { return topo_; }

    std::vector<bool> reachable_from_source() const {
        std::vector<bool> seen(vertex_count_, false);
        seen[source_] = true;
        for (int v : topo_)
            if (seen[v])
                for (int e : out_[v]) seen[edges_[e].to] = true;
        return seen;
    }

    bool operator==(const Dag& other) const {
        return vertex_count_ == other.vertex_count_ && source_ == other.source_ &&
               target_ == other.target_ && edges_ == other.edges_;
    }

    std::vector<bool> reaches_target() const {
        std::vector<bool> seen(vertex_count_, false);
        seen[target_] = true;
        for (auto it = topo_.rbegin(); it != topo_.rend(); ++it)
            if (seen[*it])
                for (int e : in_[*it]) seen[edges_[e].from] = true;
        return seen;
    }

private:
    std::vector<int> kahn_order() const {
        std::vector<int> indeg(vertex_count_, 0);
        for (const auto& e : edges_) ++indeg[e.to];
        std::vector<int> order, stack;
        for (int v = 0; v < vertex_count_; ++v)
            if (indeg[v] == 0) stack.push_back(v);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int e : out_[v])
                if (--indeg[edges_[e].to] == 0) stack.push_back(edges_[e].to);
        }
        if (order.size() != static_cast<std::size_t>(vertex_count_))
            fail(ErrorCode::CycleDetected, "graph contains a directed cycle");
        return order;
    }

    int vertex_count_;
    int source_;
    int target_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<int> topo_;
};

/// Checks that p chains source -> target through inst's edges.
inline void require_valid_path(const Dag& dag, const Path& p) {
    if (p.empty()) fail(ErrorCode::InvalidPath, "empty path");
    int at = dag.source();
    for (int id : p) {
        if (id < 0 || id >= dag.edge_count())
            fail(ErrorCode::InvalidPath, "unknown edge " + std::to_string(id));
        const Edge& e = dag.edge(id);
        if (e.from != at)
            fail(ErrorCode::InvalidPath,
                 "edge " + std::to_string(id) + " does not start at vertex " + std::to_string(at));
        at = e.to;
    }
    if (at != dag.target()) fail(ErrorCode::InvalidPath, "path ends away from target");
}

}  // namespace parapath
