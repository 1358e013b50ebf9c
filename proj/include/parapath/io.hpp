// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "parapath/instance.hpp"
#include "parapath/pgpp.hpp"

namespace parapath {
namespace io {

// ordered_json keeps emission in schema order (kind, k, vertices, ...).
using json = nlohmann::ordered_json;

namespace detail {

// Unknown fields are rejected everywhere: a typo in a hand-written file
// must not be silently ignored.
inline void check_keys(const json& j, const std::string& where,
                       const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(ErrorCode::ParseError, where + " must be an object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            fail(ErrorCode::ParseError, where + ": unknown field \"" + item.key() + "\"");
}

inline const json& field(const json& j, const std::string& where, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorCode::ParseError, where + ": missing field \"" + key + "\"");
    return *it;
}

inline Rational rational_field(const json& j, const std::string& where) {
    if (!j.is_string()) fail(ErrorCode::ParseError, where + " must be a rational string");
    auto r = parse_rational(j.get<std::string>());
    if (!r) fail(ErrorCode::ParseError, where + ": bad rational \"" + j.get<std::string>() + "\"");
    return *r;
}

inline std::vector<Rational> rational_array(const json& j, const std::string& where) {
    if (!j.is_array()) fail(ErrorCode::ParseError, where + " must be an array");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_field(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline json rationals_to_json(const std::vector<Rational>& xs) {
    json arr = json::array();
    for (const auto& x : xs) arr.push_back(to_string(x));
    return arr;
}

}  // namespace detail

inline json weight_to_json(const ScalarWeight& w) {
    json out;
    if (const auto* aff = std::get_if<AffineWeight>(&w)) {
        out["type"] = "affine";
        out["a"] = to_string(aff->a);
        out["b"] = to_string(aff->b);
    } else if (const auto* pl = std::get_if<PLFunction>(&w)) {
        out["type"] = "piecewise";
        json breaks = json::array();
        for (const auto& b : pl->breakpoints()) breaks.push_back(to_string(b));
        json pieces = json::array();
        for (const auto& p : pl->pieces())
            pieces.push_back(json::array({to_string(p.slope), to_string(p.intercept)}));
        out["breakpoints"] = std::move(breaks);
        out["pieces"] = std::move(pieces);
    } else {
        const auto& q = std::get<QuadraticWeight>(w);
        out["type"] = "quadratic";
        out["a"] = to_string(q.a);
        out["b"] = to_string(q.b);
        out["c"] = to_string(q.c);
    }
    return out;
}

inline ScalarWeight weight_from_json(const json& j, const std::string& where) {
    const std::string type = detail::field(j, where, "type").is_string()
                                 ? detail::field(j, where, "type").get<std::string>()
                                 : "";
    if (type == "affine") {
        detail::check_keys(j, where, {"type", "a", "b"});
        return AffineWeight{detail::rational_field(detail::field(j, where, "a"), where + ".a"),
                            detail::rational_field(detail::field(j, where, "b"), where + ".b")};
    }
    if (type == "piecewise") {
        detail::check_keys(j, where, {"type", "breakpoints", "pieces"});
        std::vector<Rational> breaks =
            detail::rational_array(detail::field(j, where, "breakpoints"), where + ".breakpoints");
        const json& pj = detail::field(j, where, "pieces");
        if (!pj.is_array()) fail(ErrorCode::ParseError, where + ".pieces must be an array");
        std::vector<LinearPiece> pieces;
        for (std::size_t i = 0; i < pj.size(); ++i) {
            const std::string pw = where + ".pieces[" + std::to_string(i) + "]";
            if (!pj[i].is_array() || pj[i].size() != 2)
                fail(ErrorCode::ParseError, pw + " must be [slope, intercept]");
            pieces.push_back({detail::rational_field(pj[i][0], pw + "[0]"),
                              detail::rational_field(pj[i][1], pw + "[1]")});
        }
        return PLFunction::from_parts(std::move(breaks), std::move(pieces));
    }
    if (type == "quadratic") {
        detail::check_keys(j, where, {"type", "a", "b", "c"});
        return QuadraticWeight{detail::rational_field(detail::field(j, where, "a"), where + ".a"),
                               detail::rational_field(detail::field(j, where, "b"), where + ".b"),
                               detail::rational_field(detail::field(j, where, "c"), where + ".c")};
    }
    fail(ErrorCode::ParseError, where + ": unknown weight type \"" + type + "\"");
}

inline AffineMap map_from_json(const json& j, const std::string& where, std::size_t k) {
    const std::string type = detail::field(j, where, "type").is_string()
                                 ? detail::field(j, where, "type").get<std::string>()
                                 : "";
    if (type != "matrix") fail(ErrorCode::ParseError, where + ": expected matrix weight");
    detail::check_keys(j, where, {"type", "A", "b"});
    const json& rows = detail::field(j, where, "A");
    if (!rows.is_array() || rows.size() != k)
        fail(ErrorCode::ParseError, where + ".A must have " + std::to_string(k) + " rows");
    AffineMap m;
    for (std::size_t i = 0; i < rows.size(); ++i)
        m.matrix.push_back(detail::rational_array(rows[i], where + ".A[" + std::to_string(i) + "]"));
    m.offset = detail::rational_array(detail::field(j, where, "b"), where + ".b");
    return m;
}

inline json map_to_json(const AffineMap& m) {
    json rows = json::array();
    for (const auto& row : m.matrix) rows.push_back(detail::rationals_to_json(row));
    return {{"type", "matrix"}, {"A", std::move(rows)}, {"b", detail::rationals_to_json(m.offset)}};
}

/// Canonical InstanceFile document; vertex names are v0..vN.
inline json instance_to_json(const GppInstance& inst) {
    json out;
    out["kind"] = inst.is_scalar() ? "scalar" : "vector";
    out["k"] = inst.k();
    json vertices = json::array();
    for (int v = 0; v < inst.dag.vertex_count(); ++v) vertices.push_back("v" + std::to_string(v));
    out["vertices"] = std::move(vertices);
    out["source"] = "v" + std::to_string(inst.dag.source());
    out["target"] = "v" + std::to_string(inst.dag.target());
    json edges = json::array();
    for (const Edge& e : inst.dag.edges()) {
        json ej;
        ej["id"] = e.id;
        ej["from"] = "v" + std::to_string(e.from);
        ej["to"] = "v" + std::to_string(e.to);
        ej["weight"] = inst.is_scalar() ? weight_to_json(inst.scalar_weights()[e.id])
                                        : map_to_json(inst.vector_weights()[e.id]);
        edges.push_back(std::move(ej));
    }
    out["edges"] = std::move(edges);
    out["L"] = detail::rationals_to_json(inst.liquidation);
    out["x0"] = inst.x0 ? detail::rationals_to_json(*inst.x0) : json(nullptr);
    return out;
}

inline GppInstance instance_from_json(const json& j) {
    detail::check_keys(j, "instance",
                       {"kind", "k", "vertices", "source", "target", "edges", "L", "x0"});
    const json& kind_j = detail::field(j, "instance", "kind");
    if (!kind_j.is_string()) fail(ErrorCode::ParseError, "kind must be a string");
    const std::string kind = kind_j.get<std::string>();
    if (kind != "scalar" && kind != "vector")
        fail(ErrorCode::ParseError, "kind must be \"scalar\" or \"vector\"");
    const json& k_j = detail::field(j, "instance", "k");
    if (!k_j.is_number_unsigned() && !k_j.is_number_integer())
        fail(ErrorCode::ParseError, "k must be an integer");
    const std::size_t k = k_j.get<std::size_t>();

    const json& verts = detail::field(j, "instance", "vertices");
    if (!verts.is_array() || verts.empty())
        fail(ErrorCode::ParseError, "vertices must be a nonempty array");
    std::map<std::string, int> name_to_id;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (!verts[i].is_string()) fail(ErrorCode::ParseError, "vertex names must be strings");
        if (!name_to_id.emplace(verts[i].get<std::string>(), static_cast<int>(i)).second)
            fail(ErrorCode::ParseError, "duplicate vertex \"" + verts[i].get<std::string>() + "\"");
    }
    auto vertex_id = [&](const json& v, const std::string& where) {
        if (!v.is_string()) fail(ErrorCode::ParseError, where + " must be a vertex name");
        auto it = name_to_id.find(v.get<std::string>());
        if (it == name_to_id.end())
            fail(ErrorCode::ParseError, where + ": unknown vertex \"" + v.get<std::string>() + "\"");
        return it->second;
    };
    int source = vertex_id(detail::field(j, "instance", "source"), "source");
    int target = vertex_id(detail::field(j, "instance", "target"), "target");

    const json& edges_j = detail::field(j, "instance", "edges");
    if (!edges_j.is_array()) fail(ErrorCode::ParseError, "edges must be an array");
    const std::size_t m = edges_j.size();
    std::vector<std::pair<int, int>> arcs(m, {-1, -1});
    std::vector<const json*> weight_json(m, nullptr);
    for (const json& ej : edges_j) {
        detail::check_keys(ej, "edge", {"id", "from", "to", "weight"});
        const json& id_j = detail::field(ej, "edge", "id");
        if (!id_j.is_number_integer() && !id_j.is_number_unsigned())
            fail(ErrorCode::ParseError, "edge id must be an integer");
        long long id = id_j.get<long long>();
        if (id < 0 || id >= static_cast<long long>(m))
            fail(ErrorCode::DanglingEdge, "edge id " + std::to_string(id) + " not in 0.." +
                                              std::to_string(m ? m - 1 : 0));
        const std::string where = "edge " + std::to_string(id);
        if (weight_json[id]) fail(ErrorCode::DanglingEdge, where + " appears twice");
        arcs[id] = {vertex_id(detail::field(ej, where, "from"), where + ".from"),
                    vertex_id(detail::field(ej, where, "to"), where + ".to")};
        weight_json[id] = &detail::field(ej, where, "weight");
    }

    GppInstance inst{Dag(static_cast<int>(verts.size()), source, target, arcs),
                     ScalarWeights{},
                     {},
                     std::nullopt};
    if (kind == "scalar") {
        if (k != 1) fail(ErrorCode::DimensionMismatch, "scalar instance with k != 1");
        ScalarWeights ws;
        for (std::size_t i = 0; i < m; ++i)
            ws.push_back(weight_from_json(*weight_json[i], "edge " + std::to_string(i) + ".weight"));
        inst.weights = std::move(ws);
    } else {
        if (k < 2) fail(ErrorCode::DimensionMismatch, "vector instance needs k >= 2");
        VectorWeights ws;
        for (std::size_t i = 0; i < m; ++i)
            ws.push_back(map_from_json(*weight_json[i], "edge " + std::to_string(i) + ".weight", k));
        inst.weights = std::move(ws);
    }
    inst.liquidation = detail::rational_array(detail::field(j, "instance", "L"), "L");
    if (inst.liquidation.size() != k) fail(ErrorCode::DimensionMismatch, "L must have k entries");
    const json& x0_j = detail::field(j, "instance", "x0");
    if (!x0_j.is_null()) inst.x0 = detail::rational_array(x0_j, "x0");
    validate_instance(inst);
    return inst;
}

inline std::string bound_to_string(const std::optional<Rational>& b, bool is_lower) {
    if (!b) return is_lower ? "-inf" : "+inf";
    return to_string(*b);
}

inline json table_to_json(const pgpp::PgppTable& table) {
    json out;
    out["objective_sign"] = table.objective_sign;
    json entries = json::array();
    for (const auto& e : table.entries) {
        json ej;
        ej["x_lo"] = bound_to_string(e.x_lo, true);
        ej["x_hi"] = bound_to_string(e.x_hi, false);
        ej["slope"] = to_string(e.line.slope);
        ej["intercept"] = to_string(e.line.intercept);
        ej["path"] = e.witness;
        entries.push_back(std::move(ej));
    }
    out["entries"] = std::move(entries);
    return out;
}

inline pgpp::PgppTable table_from_json(const json& j) {
    detail::check_keys(j, "table", {"objective_sign", "entries"});
    const json& sign_j = detail::field(j, "table", "objective_sign");
    if (!sign_j.is_number_integer())
        fail(ErrorCode::ParseError, "objective_sign must be an integer");
    int sign = sign_j.get<int>();
    if (sign != 1 && sign != -1) fail(ErrorCode::ParseError, "objective_sign must be +-1");
    pgpp::PgppTable table;
    table.objective_sign = sign;
    const json& entries = detail::field(j, "table", "entries");
    if (!entries.is_array() || entries.empty())
        fail(ErrorCode::ParseError, "entries must be a nonempty array");
    auto bound = [](const json& b, const std::string& where,
                    bool is_lower) -> std::optional<Rational> {
        if (!b.is_string()) fail(ErrorCode::ParseError, where + " must be a string");
        const std::string s = b.get<std::string>();
        if (s == (is_lower ? "-inf" : "+inf")) return std::nullopt;
        auto r = parse_rational(s);
        if (!r) fail(ErrorCode::ParseError, where + ": bad bound \"" + s + "\"");
        return r;
    };
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "entry " + std::to_string(i);
        detail::check_keys(entries[i], where, {"x_lo", "x_hi", "slope", "intercept", "path"});
        pgpp::PgppTable::Entry e;
        e.x_lo = bound(detail::field(entries[i], where, "x_lo"), where + ".x_lo", true);
        e.x_hi = bound(detail::field(entries[i], where, "x_hi"), where + ".x_hi", false);
        e.line.slope =
            detail::rational_field(detail::field(entries[i], where, "slope"), where + ".slope");
        e.line.intercept = detail::rational_field(detail::field(entries[i], where, "intercept"),
                                                  where + ".intercept");
        const json& path = detail::field(entries[i], where, "path");
        if (!path.is_array()) fail(ErrorCode::ParseError, where + ".path must be an array");
        for (const json& id : path) {
            if (!id.is_number_integer() && !id.is_number_unsigned())
                fail(ErrorCode::ParseError, where + ".path entries must be integers");
            e.witness.push_back(id.get<int>());
        }
        table.entries.push_back(std::move(e));
    }
    // Intervals must partition the line in sorted order.
    if (table.entries.front().x_lo)
        fail(ErrorCode::ParseError, "first entry must open at -inf");
    if (table.entries.back().x_hi) fail(ErrorCode::ParseError, "last entry must close at +inf");
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const auto& e = table.entries[i];
        if (e.x_lo && e.x_hi && !(*e.x_lo < *e.x_hi))
            fail(ErrorCode::ParseError, "entry " + std::to_string(i) + " interval is empty");
        if (i + 1 < table.entries.size()) {
            const auto& next = table.entries[i + 1];
            if (!e.x_hi || !next.x_lo || *e.x_hi != *next.x_lo)
                fail(ErrorCode::ParseError,
                     "entries " + std::to_string(i) + "/" + std::to_string(i + 1) + " do not abut");
        }
    }
    return table;
}

}  // namespace io
}  // namespace parapath
