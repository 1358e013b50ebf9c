// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "parapath/errors.hpp"
#include "parapath/rational.hpp"

namespace parapath {

/// One affine segment y = slope*x + intercept. Also used as a whole line
/// when building envelopes.
struct LinearPiece {
    Rational slope;
    Rational intercept;

    Rational eval(const Rational& x) const { return slope * x + intercept; }
    bool operator==(const LinearPiece&) const = default;
};

// x where two non-parallel lines meet.
inline Rational intersect_x(const LinearPiece& a, const LinearPiece& b) {
    return (b.intercept - a.intercept) / (a.slope - b.slope);
}

/// Continuous piecewise-linear function on all of R, kept canonical:
/// breakpoints strictly increasing, pieces maximally merged, and the two
/// pieces meeting at each breakpoint agree there exactly. Piece i lives on
/// [break[i-1], break[i]) with the outer pieces extending to -inf/+inf;
/// continuity makes the half-open convention unobservable.
class PLFunction {
public:
    static PLFunction line(Rational slope, Rational intercept) {
        return PLFunction({}, {LinearPiece{std::move(slope), std::move(intercept)}});
    }
    static PLFunction identity() { return line(1, 0); }
    static PLFunction constant(Rational c) { return line(0, std::move(c)); }

    /// Validating constructor for externally supplied data (file formats,
    /// hand-written fixtures). Throws InvalidWeight on any invariant breach.
    static PLFunction from_parts(std::vector<Rational> breakpoints,
                                 std::vector<LinearPiece> pieces) {
        if (pieces.size() != breakpoints.size() + 1)
            fail(ErrorCode::InvalidWeight, "piecewise function needs breakpoints+1 pieces, got " +
                                               std::to_string(pieces.size()) + " pieces for " +
                                               std::to_string(breakpoints.size()) + " breakpoints");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i - 1] < breakpoints[i]))
                fail(ErrorCode::InvalidWeight,
                     "breakpoints not strictly increasing at index " + std::to_string(i));
        for (std::size_t i = 0; i < breakpoints.size(); ++i) {
            if (pieces[i].eval(breakpoints[i]) != pieces[i + 1].eval(breakpoints[i]))
                fail(ErrorCode::InvalidWeight,
                     "discontinuity at breakpoint " + to_string(breakpoints[i]));
            if (pieces[i] == pieces[i + 1])
                fail(ErrorCode::InvalidWeight,
                     "adjacent identical pieces around breakpoint " + to_string(breakpoints[i]));
        }
        return PLFunction(std::move(breakpoints), std::move(pieces));
    }

    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<LinearPiece>& pieces() const { return pieces_; }
    std::size_t piece_count() const { return pieces_.size(); }

    std::size_t piece_index_at(const Rational& x) const {
        return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), x) -
                                        breaks_.begin());
    }

    Rational eval(const Rational& x) const { return pieces_[piece_index_at(x)].eval(x); }

    // Adjacent pieces of a continuous canonical function always differ in
    // slope, so shape checks reduce to strict slope monotonicity.
    bool is_concave() const {
        for (std::size_t i = 1; i < pieces_.size(); ++i)
            if (!(pieces_[i].slope < pieces_[i - 1].slope)) return false;
        return true;
    }
    bool is_convex() const {
        for (std::size_t i = 1; i < pieces_.size(); ++i)
            if (!(pieces_[i].slope > pieces_[i - 1].slope)) return false;
        return true;
    }
    bool is_monotone_nondecreasing() const {
        for (const auto& p : pieces_)
            if (p.slope < 0) return false;
        return true;
    }
    bool is_monotone() const {
        bool up = true, down = true;
        for (const auto& p : pieces_) {
            if (p.slope < 0) up = false;
            if (p.slope > 0) down = false;
        }
        return up || down;
    }

    bool operator==(const PLFunction&) const = default;

private:
    PLFunction(std::vector<Rational> breaks, std::vector<LinearPiece> pieces)
        : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {}

    template <class W>
    friend class PLAssembler;

    std::vector<Rational> breaks_;
    std::vector<LinearPiece> pieces_;
};

/// A PLFunction plus one provenance tag per piece (line index, edge step,
/// or a full path, depending on who produced it).
template <class W>
struct Annotated {
    PLFunction fn;
    std::vector<W> witnesses;
};

/// Left-to-right assembler of canonical PLFunctions. push() takes the
/// piece's right boundary (nullopt = extends to +inf and must be last);
/// zero-width pieces are dropped and equal adjacent lines merged (the left
/// witness survives a merge). Continuity across appends is verified; a
/// violation means a bug in the calling algorithm, not bad user input.
template <class W>
class PLAssembler {
public:
    void push(const LinearPiece& piece, W witness, const std::optional<Rational>& end) {
        if (done_) throw std::logic_error("PLAssembler: push after unbounded piece");
        if (end) {
            if (cursor_ && !(*cursor_ < *end)) {
                if (*end == *cursor_) return;  // zero width
                throw std::logic_error("PLAssembler: piece ends out of order");
            }
        } else {
            done_ = true;
        }
        if (!pieces_.empty() && pieces_.back() == piece) {
            cursor_ = end;  // merge with previous piece
            return;
        }
        if (!pieces_.empty()) {
            if (!cursor_) throw std::logic_error("PLAssembler: interior piece without boundary");
            if (pieces_.back().eval(*cursor_) != piece.eval(*cursor_))
                throw std::logic_error("PLAssembler: discontinuity at " + to_string(*cursor_));
            breaks_.push_back(*cursor_);
        }
        pieces_.push_back(piece);
        witnesses_.push_back(std::move(witness));
        cursor_ = end;
    }

    Annotated<W> take() {
        if (!done_ || pieces_.empty())
            throw std::logic_error("PLAssembler: incomplete function");
        return Annotated<W>{PLFunction(std::move(breaks_), std::move(pieces_)),
                            std::move(witnesses_)};
    }

private:
    std::vector<Rational> breaks_;
    std::vector<LinearPiece> pieces_;
    std::vector<W> witnesses_;
    std::optional<Rational> cursor_;
    bool done_ = false;
};

namespace detail {

struct NoWitness {
    bool operator==(const NoWitness&) const = default;
};

// Right-boundary minimum where nullopt means +inf.
inline std::optional<Rational> bound_min(const std::optional<Rational>& a,
                                         const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

// Emits min or max of two lines over the cell [lo, hi).
template <class W>
void emit_extremum_on_cell(PLAssembler<W>& out, const LinearPiece& la, const W& wa,
                           const LinearPiece& lb, const W& wb, const std::optional<Rational>& lo,
                           const std::optional<Rational>& hi, bool want_max) {
    if (la == lb) {
        out.push(la, wa, hi);
        return;
    }
    if (la.slope == lb.slope) {
        bool a_wins = want_max ? la.intercept > lb.intercept : la.intercept < lb.intercept;
        out.push(a_wins ? la : lb, a_wins ? wa : wb, hi);
        return;
    }
    Rational cross = intersect_x(la, lb);
    // Left of the crossing the steeper line is below (flips for max).
    bool left_is_a = want_max ? la.slope < lb.slope : la.slope > lb.slope;
    bool cross_after_lo = !lo || cross > *lo;
    bool cross_before_hi = !hi || cross < *hi;
    if (cross_after_lo && cross_before_hi) {
        out.push(left_is_a ? la : lb, left_is_a ? wa : wb, cross);
        out.push(left_is_a ? lb : la, left_is_a ? wb : wa, hi);
    } else if (!cross_after_lo) {
        out.push(left_is_a ? lb : la, left_is_a ? wb : wa, hi);
    } else {
        out.push(left_is_a ? la : lb, left_is_a ? wa : wb, hi);
    }
}

template <class W>
Annotated<W> extremum(const Annotated<W>& a, const Annotated<W>& b, bool want_max) {
    PLAssembler<W> out;
    const auto& ab = a.fn.breakpoints();
    const auto& bb = b.fn.breakpoints();
    std::size_t ia = 0, ib = 0;
    std::optional<Rational> lo;
    for (;;) {
        std::optional<Rational> hi;
        bool step_a = false, step_b = false;
        if (ia < ab.size() && ib < bb.size()) {
            if (ab[ia] < bb[ib]) {
                hi = ab[ia];
                step_a = true;
            } else if (bb[ib] < ab[ia]) {
                hi = bb[ib];
                step_b = true;
            } else {
                hi = ab[ia];
                step_a = step_b = true;
            }
        } else if (ia < ab.size()) {
            hi = ab[ia];
            step_a = true;
        } else if (ib < bb.size()) {
            hi = bb[ib];
            step_b = true;
        }
        emit_extremum_on_cell(out, a.fn.pieces()[ia], a.witnesses[ia], b.fn.pieces()[ib],
                              b.witnesses[ib], lo, hi, want_max);
        if (!hi) break;
        if (step_a) ++ia;
        if (step_b) ++ib;
        lo = hi;
    }
    return out.take();
}

inline Annotated<NoWitness> plain(const PLFunction& f) {
    return Annotated<NoWitness>{f, std::vector<NoWitness>(f.piece_count())};
}

}  // namespace detail

/// Exact pointwise minimum. Ties over a whole piece keep the first
/// argument's pieces (and witnesses, in the annotated overload).
template <class W>
Annotated<W> pointwise_min(const Annotated<W>& a, const Annotated<W>& b) {
    return detail::extremum(a, b, /*want_max=*/false);
}
template <class W>
Annotated<W> pointwise_max(const Annotated<W>& a, const Annotated<W>& b) {
    return detail::extremum(a, b, /*want_max=*/true);
}

inline PLFunction pointwise_min(const PLFunction& f, const PLFunction& g) {
    return detail::extremum(detail::plain(f), detail::plain(g), false).fn;
}
inline PLFunction pointwise_max(const PLFunction& f, const PLFunction& g) {
    return detail::extremum(detail::plain(f), detail::plain(g), true).fn;
}

/// Exact composition f(g(x)). g may be non-monotone: every affine cell of
/// g is monotone, so the cells are composed one at a time and re-merged.
/// When g is monotone the piece count obeys p(f.g) <= p(f)+p(g).
inline PLFunction compose(const PLFunction& f, const PLFunction& g) {
    PLAssembler<detail::NoWitness> out;
    const auto& gb = g.breakpoints();
    for (std::size_t j = 0; j < g.piece_count(); ++j) {
        std::optional<Rational> lo =
            j == 0 ? std::nullopt : std::optional<Rational>(gb[j - 1]);
        std::optional<Rational> hi =
            j < gb.size() ? std::optional<Rational>(gb[j]) : std::nullopt;
        const Rational& s = g.pieces()[j].slope;
        const Rational& c = g.pieces()[j].intercept;
        if (s == 0) {
            out.push(LinearPiece{0, f.eval(c)}, {}, hi);
            continue;
        }
        const auto& fb = f.breakpoints();
        if (s > 0) {
            // y = s*x + c increases over the cell; walk f's pieces upward.
            std::size_t k = lo ? f.piece_index_at(s * *lo + c) : 0;
            for (;;) {
                std::optional<Rational> piece_end =
                    k < fb.size() ? std::optional<Rational>((fb[k] - c) / s) : std::nullopt;
                std::optional<Rational> end = detail::bound_min(piece_end, hi);
                out.push(LinearPiece{f.pieces()[k].slope * s,
                                     f.pieces()[k].slope * c + f.pieces()[k].intercept},
                         {}, end);
                if (!piece_end || (hi && !(*piece_end < *hi))) break;
                ++k;
            }
        } else {
            // y decreases over the cell; walk f's pieces downward.
            std::size_t k =
                lo ? f.piece_index_at(s * *lo + c) : f.piece_count() - 1;
            for (;;) {
                std::optional<Rational> piece_end =
                    k > 0 ? std::optional<Rational>((fb[k - 1] - c) / s) : std::nullopt;
                std::optional<Rational> end = detail::bound_min(piece_end, hi);
                out.push(LinearPiece{f.pieces()[k].slope * s,
                                     f.pieces()[k].slope * c + f.pieces()[k].intercept},
                         {}, end);
                if (!piece_end || (hi && !(*piece_end < *hi))) break;
                --k;
            }
        }
    }
    return out.take().fn;
}

/// a*f + b applied to the values of f. Breakpoints are untouched; a = 0
/// collapses everything to the constant b.
inline PLFunction affine_image(const PLFunction& f, const Rational& a, const Rational& b) {
    if (a == 0) return PLFunction::constant(b);
    std::vector<LinearPiece> pieces;
    pieces.reserve(f.piece_count());
    for (const auto& p : f.pieces()) pieces.push_back({a * p.slope, a * p.intercept + b});
    return PLFunction::from_parts(f.breakpoints(), std::move(pieces));
}

/// Lower envelope of a nonempty line family. Witnesses are input indices;
/// where lines coincide the smallest index wins, and for equal slopes only
/// the lowest line can appear. Output is concave with strictly decreasing
/// slopes left to right.
inline Annotated<std::size_t> lower_envelope(const std::vector<LinearPiece>& lines) {
    if (lines.empty()) fail(ErrorCode::InvalidArgument, "lower_envelope of empty family");
    std::vector<std::size_t> order(lines.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (lines[x].slope != lines[y].slope) return lines[x].slope < lines[y].slope;
        if (lines[x].intercept != lines[y].intercept)
            return lines[x].intercept < lines[y].intercept;
        return x < y;
    });
    // One candidate per slope: the lowest line, smallest index on full ties.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (i == 0 || lines[order[i]].slope != lines[order[i - 1]].slope)
            candidates.push_back(order[i]);

    struct Active {
        std::size_t idx;
        std::optional<Rational> start;  // nullopt = -inf
    };
    std::vector<Active> hull;
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {  // slope descending
        std::size_t idx = *it;
        while (!hull.empty()) {
            Rational cross = intersect_x(lines[hull.back().idx], lines[idx]);
            if (!hull.back().start || cross > *hull.back().start) {
                hull.push_back({idx, cross});
                break;
            }
            hull.pop_back();
        }
        if (hull.empty()) hull.push_back({idx, std::nullopt});
    }
    PLAssembler<std::size_t> out;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        std::optional<Rational> end = i + 1 < hull.size() ? hull[i + 1].start : std::nullopt;
        out.push(lines[hull[i].idx], hull[i].idx, end);
    }
    return out.take();
}

/// Upper envelope by reflection; convex, slopes strictly increasing.
inline Annotated<std::size_t> upper_envelope(const std::vector<LinearPiece>& lines) {
    std::vector<LinearPiece> negated;
    negated.reserve(lines.size());
    for (const auto& l : lines) negated.push_back({-l.slope, -l.intercept});
    Annotated<std::size_t> env = lower_envelope(negated);
    std::vector<LinearPiece> pieces;
    pieces.reserve(env.fn.piece_count());
    for (const auto& p : env.fn.pieces()) pieces.push_back({-p.slope, -p.intercept});
    return {PLFunction::from_parts(env.fn.breakpoints(), std::move(pieces)),
            std::move(env.witnesses)};
}

/// Envelopes of the composed family {f o g : f in F, g in G} from the
/// envelopes of F and G alone: the inner value ranges over
/// [G_down(x), G_up(x)], and a concave (convex) outer envelope is
/// extremal at an endpoint of that interval.
inline std::pair<PLFunction, PLFunction> compose_envelope_sets(const PLFunction& f_down,
                                                               const PLFunction& f_up,
                                                               const PLFunction& g_down,
                                                               const PLFunction& g_up) {
    if (!f_down.is_concave()) fail(ErrorCode::ShapeViolation, "F lower envelope not concave");
    if (!f_up.is_convex()) fail(ErrorCode::ShapeViolation, "F upper envelope not convex");
    if (!g_down.is_concave()) fail(ErrorCode::ShapeViolation, "G lower envelope not concave");
    if (!g_up.is_convex()) fail(ErrorCode::ShapeViolation, "G upper envelope not convex");
    PLFunction h_down = pointwise_min(compose(f_down, g_down), compose(f_down, g_up));
    PLFunction h_up = pointwise_max(compose(f_up, g_down), compose(f_up, g_up));
    return {std::move(h_down), std::move(h_up)};
}

}  // namespace parapath
