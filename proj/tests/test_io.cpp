// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "parapath/gadgets.hpp"
#include "parapath/io.hpp"
#include "parapath/pgpp.hpp"
#include "test_support.hpp"

using namespace parapath;

namespace {

GppInstance minimal() {
    return {Dag(2, 0, 1, {{0, 1}}),
            ScalarWeights{AffineWeight{2, 1}},
            {Rational(-1)},
            std::vector<Rational>{Rational(3)}};
}

}  // namespace

TEST_CASE("instance round-trip for each weight flavor") {
    GppInstance scalar = minimal();
    CHECK(io::instance_from_json(io::instance_to_json(scalar)) == scalar);

    auto sp = gadgets::set_partition_gadget({Integer(1), Integer(2), Integer(3)}, 0, Rational(7, 2));
    CHECK(io::instance_from_json(io::instance_to_json(sp.instance)) == sp.instance);

    auto sq = gadgets::set_partition_gadget({Integer(4)}, 0, 0, gadgets::LastEdge::Square);
    CHECK(io::instance_from_json(io::instance_to_json(sq.instance)) == sq.instance);

    GppInstance pp = gadgets::product_partition_gadget({Integer(6), Integer(2)});
    CHECK(io::instance_from_json(io::instance_to_json(pp)) == pp);

    GppInstance lb = gadgets::lowerbound_instance(3);
    CHECK(io::instance_from_json(io::instance_to_json(lb)) == lb);
}

TEST_CASE("instance round-trip on random instances") {
    std::mt19937_64 rng(7777);
    for (int round = 0; round < 1000; ++round) {
        GppInstance inst = random_affine_instance(rng, {.max_vertices = 9, .max_edges = 14});
        io::json doc = io::instance_to_json(inst);
        GppInstance back = io::instance_from_json(doc);
        CHECK(back == inst);
        CHECK(io::instance_to_json(back) == doc);
    }
}

TEST_CASE("emitted rationals are canonical strings") {
    io::json doc = io::instance_to_json(minimal());
    CHECK(doc["edges"][0]["weight"]["a"] == "2");
    CHECK(doc["L"][0] == "-1");
    GppInstance frac{Dag(2, 0, 1, {{0, 1}}),
                     ScalarWeights{AffineWeight{Rational(4, 6), Rational(-10, 4)}},
                     {Rational(1)},
                     std::nullopt};
    io::json j = io::instance_to_json(frac);
    CHECK(j["edges"][0]["weight"]["a"] == "2/3");
    CHECK(j["edges"][0]["weight"]["b"] == "-5/2");
}

TEST_CASE("unknown fields are rejected everywhere") {
    io::json doc = io::instance_to_json(minimal());
    doc["comment"] = "nope";
    CHECK_THROWS_AS(io::instance_from_json(doc), Error);

    io::json doc2 = io::instance_to_json(minimal());
    doc2["edges"][0]["color"] = "red";
    CHECK_THROWS_AS(io::instance_from_json(doc2), Error);

    io::json doc3 = io::instance_to_json(minimal());
    doc3["edges"][0]["weight"]["d"] = "1";
    CHECK_THROWS_AS(io::instance_from_json(doc3), Error);
}

TEST_CASE("structural validation failures carry the right codes") {
    auto code_of = [](io::json doc) {
        try {
            io::instance_from_json(doc);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ParseError;
    };

    io::json cyclic = io::instance_to_json(minimal());
    cyclic["edges"].push_back(
        {{"id", 1}, {"from", "v1"}, {"to", "v0"}, {"weight", {{"type", "affine"}, {"a", "1"}, {"b", "0"}}}});
    CHECK(code_of(cyclic) == ErrorCode::CycleDetected);

    io::json bad_id = io::instance_to_json(minimal());
    bad_id["edges"][0]["id"] = 5;
    CHECK(code_of(bad_id) == ErrorCode::DanglingEdge);

    io::json bad_rational = io::instance_to_json(minimal());
    bad_rational["L"][0] = "1.5";
    CHECK(code_of(bad_rational) == ErrorCode::ParseError);

    io::json bad_dim = io::instance_to_json(gadgets::product_partition_gadget({Integer(2)}));
    bad_dim["L"] = io::json::array({"1", "1", "1"});
    CHECK(code_of(bad_dim) == ErrorCode::DimensionMismatch);

    io::json bad_vertex = io::instance_to_json(minimal());
    bad_vertex["source"] = "nowhere";
    CHECK(code_of(bad_vertex) == ErrorCode::ParseError);
}

TEST_CASE("table round-trip and ordering validation") {
    std::mt19937_64 rng(9090);
    for (int round = 0; round < 60; ++round) {
        GppInstance inst = random_affine_instance(
            rng, {.max_vertices = 8, .max_edges = 14, .max_paths = 1 << 9,
                  .unit_liquidation = true});
        pgpp::PgppTable table = pgpp::build_table(inst);
        io::json doc = io::table_to_json(table);
        pgpp::PgppTable back = io::table_from_json(doc);
        CHECK(back == table);
        CHECK(io::table_to_json(back) == doc);
    }

    pgpp::PgppTable t = pgpp::build_table(minimal());
    io::json doc = io::table_to_json(t);
    CHECK(doc["entries"][0]["x_lo"] == "-inf");
    CHECK(doc["entries"].back()["x_hi"] == "+inf");

    io::json gap = doc;
    gap["entries"][0]["x_hi"] = "5";  // breaks the partition (last must be +inf)
    CHECK_THROWS_AS(io::table_from_json(gap), Error);
    io::json unknown = doc;
    unknown["entries"][0]["note"] = "x";
    CHECK_THROWS_AS(io::table_from_json(unknown), Error);
    io::json bad_sign = doc;
    bad_sign["objective_sign"] = 2;
    CHECK_THROWS_AS(io::table_from_json(bad_sign), Error);
}

TEST_CASE("tables with piecewise provenance round-trip too") {
    pgpp::PgppTable table = pgpp::build_table_oracle(gadgets::lowerbound_instance(3));
    pgpp::PgppTable back = io::table_from_json(io::table_to_json(table));
    CHECK(back == table);
    CHECK(pgpp::distinct_witness_count(back) == 8);
}
