// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <set>

#include "parapath/gadgets.hpp"
#include "parapath/piecewise.hpp"
#include "test_support.hpp"

using namespace parapath;
using parapath::testing::random_concave;
using parapath::testing::random_convex;
using parapath::testing::random_lines;
using parapath::testing::random_monotone_pl;
using parapath::testing::random_pl;
using parapath::testing::sample_grid;

namespace {

PLFunction abs_fn() { return PLFunction::from_parts({0}, {{-1, 0}, {1, 0}}); }

Rational family_min(const std::vector<LinearPiece>& lines, const Rational& x) {
    Rational best = lines[0].eval(x);
    for (const auto& l : lines) best = std::min(best, l.eval(x));
    return best;
}

Rational family_max(const std::vector<LinearPiece>& lines, const Rational& x) {
    Rational best = lines[0].eval(x);
    for (const auto& l : lines) best = std::max(best, l.eval(x));
    return best;
}

void check_canonical(const PLFunction& f) {
    const auto& breaks = f.breakpoints();
    const auto& pieces = f.pieces();
    REQUIRE(pieces.size() == breaks.size() + 1);
    for (std::size_t i = 1; i < breaks.size(); ++i) REQUIRE(breaks[i - 1] < breaks[i]);
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        REQUIRE(pieces[i].eval(breaks[i]) == pieces[i + 1].eval(breaks[i]));  // continuity
        REQUIRE(pieces[i] != pieces[i + 1]);                                  // maximally merged
    }
}

}  // namespace

TEST_CASE("eval picks the right piece") {
    PLFunction f = abs_fn();
    CHECK(f.eval(-5) == 5);
    CHECK(f.eval(0) == 0);
    CHECK(f.eval(Rational(7, 3)) == Rational(7, 3));
    CHECK(gadgets::lowerbound_f0().eval(Rational(1, 3)) == 0);
    CHECK(gadgets::lowerbound_f1().eval(0) == 2);
    CHECK(gadgets::lowerbound_f1().eval(1) == 1);
}

TEST_CASE("from_parts rejects malformed input") {
    CHECK_THROWS_AS(PLFunction::from_parts({1, 1}, {{1, 0}, {2, -1}, {3, -2}}), Error);
    CHECK_THROWS_AS(PLFunction::from_parts({0}, {{1, 0}, {1, 5}}), Error);   // discontinuous
    CHECK_THROWS_AS(PLFunction::from_parts({0}, {{1, 0}, {1, 0}}), Error);   // not merged
    CHECK_THROWS_AS(PLFunction::from_parts({0}, {{1, 0}}), Error);           // size mismatch
}

TEST_CASE("pointwise min basics") {
    PLFunction f = PLFunction::line(1, 0);
    PLFunction g = PLFunction::line(-1, 2);
    PLFunction h = pointwise_min(f, g);
    REQUIRE(h.piece_count() == 2);
    CHECK(h.breakpoints()[0] == 1);
    CHECK(h.eval(0) == 0);
    CHECK(h.eval(2) == 0);

    // Folding in a dominated constant changes nothing.
    PLFunction with_const = pointwise_min(h, PLFunction::constant(1));
    CHECK(with_const == h);
    for (const auto& p : with_const.pieces()) CHECK(p != LinearPiece{0, 1});

    CHECK(pointwise_min(h, h) == h);  // idempotent
}

TEST_CASE("pointwise max mirrors min") {
    PLFunction f = PLFunction::line(1, 0);
    PLFunction g = PLFunction::line(-1, 2);
    PLFunction h = pointwise_max(f, g);
    REQUIRE(h.piece_count() == 2);
    CHECK(h.eval(1) == 1);
    CHECK(h.eval(0) == 2);
    CHECK(h.eval(3) == 3);
    CHECK(h.is_convex());
}

TEST_CASE("compose basics") {
    PLFunction shifted = compose(abs_fn(), PLFunction::line(1, -1));
    REQUIRE(shifted.piece_count() == 2);
    CHECK(shifted.breakpoints()[0] == 1);
    CHECK(shifted.eval(0) == 1);
    CHECK(shifted.eval(1) == 0);
    CHECK(shifted.eval(3) == 2);

    // f1(f0(1/9)) = f1(2/3) = 0
    PLFunction chained = compose(gadgets::lowerbound_f1(), gadgets::lowerbound_f0());
    CHECK(chained.eval(Rational(1, 9)) == 0);

    std::mt19937_64 rng(7);
    PLFunction f = random_pl(rng, 6);
    CHECK(compose(f, PLFunction::identity()) == f);
    CHECK(compose(PLFunction::identity(), f) == f);
}

TEST_CASE("compose handles decreasing and constant inner pieces") {
    // g = -|x| has a decreasing right half; f = |x| folds it back.
    PLFunction neg_abs = affine_image(abs_fn(), -1, 0);
    PLFunction h = compose(abs_fn(), neg_abs);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational x = rand_rational(rng, -20, 20, 7);
        CHECK(h.eval(x) == abs_fn().eval(neg_abs.eval(x)));
    }
    PLFunction via_const = compose(abs_fn(), PLFunction::constant(-3));
    CHECK(via_const == PLFunction::constant(3));
}

TEST_CASE("lower envelope of two crossing lines") {
    auto env = lower_envelope({{1, 0}, {-1, 2}});
    REQUIRE(env.fn.piece_count() == 2);
    CHECK(env.fn.breakpoints()[0] == 1);
    CHECK(env.fn.pieces()[0] == LinearPiece{1, 0});
    CHECK(env.fn.pieces()[1] == LinearPiece{-1, 2});
    CHECK(env.witnesses == std::vector<std::size_t>{0, 1});
}

TEST_CASE("parallel lines: only the lowest survives") {
    auto env = lower_envelope({{2, 1}, {2, 0}});
    REQUIRE(env.fn.piece_count() == 1);
    CHECK(env.fn.pieces()[0] == LinearPiece{2, 0});
    CHECK(env.witnesses[0] == 1);

    // Full coincidence keeps the smallest index.
    auto dup = lower_envelope({{2, 0}, {2, 0}});
    CHECK(dup.witnesses[0] == 0);
}

TEST_CASE("single line family") {
    auto env = lower_envelope({{5, -3}});
    CHECK(env.fn == PLFunction::line(5, -3));
    CHECK(env.fn.breakpoints().empty());
}

TEST_CASE("envelopes against dense sampling") {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 200; ++round) {
        auto lines = random_lines(rng, static_cast<int>(rand_int(rng, 1, 8)));
        auto lo = lower_envelope(lines);
        auto up = upper_envelope(lines);
        check_canonical(lo.fn);
        check_canonical(up.fn);
        CHECK(lo.fn.is_concave());
        CHECK(up.fn.is_convex());
        std::set<Rational> slopes;
        for (const auto& l : lines) slopes.insert(l.slope);
        CHECK(lo.fn.piece_count() <= slopes.size());
        CHECK(up.fn.piece_count() <= slopes.size());
        for (const auto& x : sample_grid({&lo.fn, &up.fn}, 50)) {
            CHECK(lo.fn.eval(x) == family_min(lines, x));
            CHECK(up.fn.eval(x) == family_max(lines, x));
        }
        // Witness lines attain the envelope on their piece.
        for (std::size_t i = 0; i < lo.fn.piece_count(); ++i)
            CHECK(lines[lo.witnesses[i]] == lo.fn.pieces()[i]);
        for (std::size_t i = 0; i < up.fn.piece_count(); ++i)
            CHECK(lines[up.witnesses[i]] == up.fn.pieces()[i]);
    }
}

TEST_CASE("min/max against dense sampling, concave piece bound") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 150; ++round) {
        PLFunction f = random_pl(rng, 6);
        PLFunction g = random_pl(rng, 6);
        PLFunction mn = pointwise_min(f, g);
        PLFunction mx = pointwise_max(f, g);
        check_canonical(mn);
        check_canonical(mx);
        for (const auto& x : sample_grid({&f, &g, &mn, &mx}, 60)) {
            CHECK(mn.eval(x) == std::min(f.eval(x), g.eval(x)));
            CHECK(mx.eval(x) == std::max(f.eval(x), g.eval(x)));
        }
        PLFunction cf = random_concave(rng, 5);
        PLFunction cg = random_concave(rng, 5);
        PLFunction cm = pointwise_min(cf, cg);
        CHECK(cm.is_concave());
        CHECK(cm.piece_count() <= cf.piece_count() + cg.piece_count());
    }
}

TEST_CASE("compose against dense sampling, monotone piece bound") {
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 150; ++round) {
        PLFunction f = random_pl(rng, 6);
        PLFunction g = random_pl(rng, 6);
        PLFunction h = compose(f, g);
        check_canonical(h);
        for (const auto& x : sample_grid({&g, &h}, 60)) CHECK(h.eval(x) == f.eval(g.eval(x)));

        PLFunction gm = random_monotone_pl(rng, 6);
        PLFunction hm = compose(f, gm);
        check_canonical(hm);
        CHECK(hm.piece_count() <= f.piece_count() + gm.piece_count());
        for (const auto& x : sample_grid({&gm, &hm}, 40)) CHECK(hm.eval(x) == f.eval(gm.eval(x)));
    }
}

TEST_CASE("dense 500-point oracle for every operation") {
    std::mt19937_64 rng(2026);
    for (int round = 0; round < 5; ++round) {
        auto lines = random_lines(rng, 7);
        PLFunction f = random_pl(rng, 6);
        PLFunction g = random_pl(rng, 6);
        auto lo = lower_envelope(lines);
        auto up = upper_envelope(lines);
        PLFunction mn = pointwise_min(f, g);
        PLFunction mx = pointwise_max(f, g);
        PLFunction cp = compose(f, g);
        auto xs = sample_grid({&f, &g, &mn, &mx, &cp, &lo.fn, &up.fn}, 500);
        REQUIRE(xs.size() >= 500);
        for (const auto& x : xs) {
            CHECK(mn.eval(x) == std::min(f.eval(x), g.eval(x)));
            CHECK(mx.eval(x) == std::max(f.eval(x), g.eval(x)));
            CHECK(cp.eval(x) == f.eval(g.eval(x)));
            CHECK(lo.fn.eval(x) == family_min(lines, x));
            CHECK(up.fn.eval(x) == family_max(lines, x));
        }
    }
}

TEST_CASE("affine image") {
    PLFunction f = abs_fn();
    PLFunction g = affine_image(f, -2, 3);  // 3 - 2|x|
    CHECK(g.eval(0) == 3);
    CHECK(g.eval(2) == -1);
    CHECK(g.is_concave());
    CHECK(affine_image(f, 0, 7) == PLFunction::constant(7));
    CHECK(affine_image(f, 1, 0) == f);
}

TEST_CASE("compose_envelope_sets identity and explicit families") {
    auto [hd, hu] = compose_envelope_sets(PLFunction::identity(), PLFunction::identity(),
                                          PLFunction::identity(), PLFunction::identity());
    CHECK(hd == PLFunction::identity());
    CHECK(hu == PLFunction::identity());

    std::mt19937_64 rng(31337);
    for (int round = 0; round < 300; ++round) {
        auto fam_f = random_lines(rng, static_cast<int>(rand_int(rng, 1, 5)));
        auto fam_g = random_lines(rng, static_cast<int>(rand_int(rng, 1, 5)));
        PLFunction fd = lower_envelope(fam_f).fn, fu = upper_envelope(fam_f).fn;
        PLFunction gd = lower_envelope(fam_g).fn, gu = upper_envelope(fam_g).fn;
        auto [down, up] = compose_envelope_sets(fd, fu, gd, gu);

        // Brute-force composed family f(g(x)): slope_f*slope_g, f(b_g).
        std::vector<LinearPiece> composed;
        for (const auto& fl : fam_f)
            for (const auto& gl : fam_g)
                composed.push_back({fl.slope * gl.slope, fl.slope * gl.intercept + fl.intercept});
        CHECK(down == lower_envelope(composed).fn);
        CHECK(up == upper_envelope(composed).fn);

        // Piece bounds from the composition identities.
        CHECK(down.piece_count() <=
              4 * fd.piece_count() + 2 * gd.piece_count() + 2 * gu.piece_count());
        CHECK(up.piece_count() <=
              4 * fu.piece_count() + 2 * gd.piece_count() + 2 * gu.piece_count());
    }
}

TEST_CASE("compose_envelope_sets rejects bad shapes") {
    PLFunction vee = abs_fn();  // convex
    CHECK_THROWS_AS(compose_envelope_sets(vee, vee, PLFunction::identity(), PLFunction::identity()),
                    Error);
    try {
        compose_envelope_sets(vee, vee, PLFunction::identity(), PLFunction::identity());
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ShapeViolation);
    }
}

TEST_CASE("structural equality matches pointwise equality on samples") {
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 100; ++round) {
        PLFunction f = random_pl(rng, 5);
        PLFunction g = round % 3 == 0 ? f : random_pl(rng, 5);
        bool same = true;
        auto xs = sample_grid({&f, &g}, static_cast<int>(3 * (f.piece_count() + g.piece_count())));
        for (const auto& x : xs) same = same && f.eval(x) == g.eval(x);
        CHECK(same == (f == g));
    }
}
