// Piecewise-linear n-valued circle maps in exact rational arithmetic: branch
// lifts on [0,1], the induced homomorphism from endpoint compatibility, the
// geometric fixed-point oracle with slope-sign indices, the closed form for
// linear maps, automatic equivariant chain data, finite covers with the
// averaging identity, splittings and changes of lift.

#ifndef NVRT_CIRCLE_HPP
#define NVRT_CIRCLE_HPP

#include "nvrt/chain.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nvrt {

struct LinearCircleMap {
    int n = 1;
    Int d = 0;
};

struct BreakPoint {
    Rational t;
    Rational y;

    bool operator==(const BreakPoint& o) const { return t == o.t && y == o.y; }
};

inline Int rational_ceil_i(const Rational& r) { return -rational_floor(-r); }

class PLCircleMap {
public:
    PLCircleMap() = default;

    PLCircleMap(int n, std::vector<std::vector<BreakPoint>> branches)
        : n_(n), branches_(std::move(branches)) {
        validate();
    }

    int n() const { return n_; }
    const std::vector<std::vector<BreakPoint>>& branches() const { return branches_; }

    // Lift value of branch k at t in [0,1].
    Rational eval(int k, const Rational& t) const {
        const auto& br = branches_.at(k - 1);
        if (t < 0 || t > 1) throw std::invalid_argument("eval argument outside [0,1]");
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            if (t <= br[i + 1].t) {
                const Rational dt = br[i + 1].t - br[i].t;
                return br[i].y + (br[i + 1].y - br[i].y) * (t - br[i].t) / dt;
            }
        }
        return br.back().y;
    }

    Rational slope(int k, std::size_t piece) const {
        const auto& br = branches_.at(k - 1);
        return (br[piece + 1].y - br[piece].y) / (br[piece + 1].t - br[piece].t);
    }

    std::size_t piece_count(int k) const { return branches_.at(k - 1).size() - 1; }

    const SemidirectElement& deck_image() const { return theta_; }

private:
    void validate() {
        if (n_ < 1) throw validation_error("branch count must be >= 1");
        if (static_cast<int>(branches_.size()) != n_)
            throw validation_error("expected " + std::to_string(n_) + " branches");
        for (int k = 1; k <= n_; ++k) {
            const auto& br = branches_[k - 1];
            if (br.size() < 2)
                throw validation_error("branch " + std::to_string(k) +
                                       " needs at least two breakpoints");
            if (br.front().t != 0 || br.back().t != 1)
                throw validation_error("branch " + std::to_string(k) +
                                       " must cover t in [0,1]");
            for (std::size_t i = 0; i + 1 < br.size(); ++i)
                if (!(br[i].t < br[i + 1].t))
                    throw validation_error("branch " + std::to_string(k) +
                                           " breakpoints not strictly increasing");
        }
        check_disjoint();
        compute_theta();
    }

    // Values must stay pairwise distinct modulo 1 at every t.
    void check_disjoint() const {
        for (int j = 1; j <= n_; ++j)
            for (int k = j + 1; k <= n_; ++k) {
                std::vector<Rational> cuts;
                for (const auto& bp : branches_[j - 1]) cuts.push_back(bp.t);
                for (const auto& bp : branches_[k - 1]) cuts.push_back(bp.t);
                std::sort(cuts.begin(), cuts.end());
                cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
                for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                    const Rational a = cuts[i], b = cuts[i + 1];
                    const Rational da = eval(j, a) - eval(k, a);
                    const Rational db = eval(j, b) - eval(k, b);
                    if (da == db) {
                        if (is_integer(da))
                            throw validation_error(
                                "branches " + std::to_string(j) + " and " +
                                std::to_string(k) + " collide near t = " + format_rational(a));
                        continue;
                    }
                    const Rational lo = std::min(da, db), hi = std::max(da, db);
                    if (rational_floor(hi) >= rational_ceil_i(lo))
                        throw validation_error(
                            "branches " + std::to_string(j) + " and " + std::to_string(k) +
                            " collide in t-interval [" + format_rational(a) + ", " +
                            format_rational(b) + "]");
                }
            }
    }

    // Endpoint compatibility: (f_1(1),...,f_n(1)) must be a deck translate of
    // (f_1(0),...,f_n(0)); the unique witness is the generator image.
    void compute_theta() {
        std::vector<GroupElement> trans(n_);
        std::vector<int> inv_images(n_, 0);
        for (int k = 1; k <= n_; ++k) {
            const Rational end = branches_[k - 1].back().y;
            bool found = false;
            for (int j = 1; j <= n_; ++j) {
                const Rational diff = end - branches_[j - 1].front().y;
                if (is_integer(diff)) {
                    trans[k - 1] = GroupElement::power_of_a(numerator(diff));
                    inv_images[k - 1] = j;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw validation_error(
                    "endpoint tuple is not a deck translate of the start tuple "
                    "(branch " + std::to_string(k) + " ends at " + format_rational(end) + ")");
        }
        theta_ = SemidirectElement(std::move(trans), Permutation(inv_images).inverse());
    }

    int n_ = 1;
    std::vector<std::vector<BreakPoint>> branches_;
    SemidirectElement theta_;
};

inline InducedHom induced_hom_of(const PLCircleMap& map) {
    return InducedHom(map.n(), 1, {{1, map.deck_image()}});
}

inline PLCircleMap to_pl(const LinearCircleMap& m) {
    std::vector<std::vector<BreakPoint>> branches(m.n);
    for (int k = 1; k <= m.n; ++k) {
        const Rational y0(Int(k - 1), Int(m.n));
        const Rational y1(Int(k - 1) + m.d, Int(m.n));
        branches[k - 1] = {{Rational(0), y0}, {Rational(1), y1}};
    }
    return PLCircleMap(m.n, std::move(branches));
}

inline InducedHom induced_hom_of(const LinearCircleMap& m) {
    return InducedHom(m.n, 1, {{1, linear_circle_generator_image(m.n, m.d)}});
}

// A PL representative of the degree-d class with the standard lift and
// integer slopes (a slope-d ramp on [0,1/n], then flat), so that a finite
// vertex set closes under all branch images and chain data exists.
inline PLCircleMap simplicial_model(int n, const Int& d) {
    std::vector<std::vector<BreakPoint>> branches(n);
    for (int k = 1; k <= n; ++k) {
        const Rational y0(Int(k - 1), Int(n));
        const Rational y1(Int(k - 1) + d, Int(n));
        if (n == 1)
            branches[k - 1] = {{Rational(0), y0}, {Rational(1), y1}};
        else
            branches[k - 1] = {{Rational(0), y0}, {Rational(1, n), y1}, {Rational(1), y1}};
    }
    return PLCircleMap(n, std::move(branches));
}

// Translate every branch value by epsilon (a homotopy; the induced hom is
// unchanged). Used to push degenerate crossings off breakpoints explicitly.
inline PLCircleMap nudge(const PLCircleMap& map, const Rational& eps) {
    std::vector<std::vector<BreakPoint>> branches = map.branches();
    for (auto& br : branches)
        for (auto& bp : br) bp.y += eps;
    PLCircleMap out(map.n(), std::move(branches));
    if (!(out.deck_image() == map.deck_image()))
        throw std::logic_error("nudge changed the deck image");
    return out;
}

// Finite unions of open arcs with rational endpoints; an arc (lo, hi) with
// hi - lo < 1 is read modulo 1 and may wrap.
class ArcRegion {
public:
    ArcRegion() = default; // whole circle

    explicit ArcRegion(std::vector<std::pair<Rational, Rational>> arcs)
        : whole_(false), arcs_(std::move(arcs)) {
        for (auto& [lo, hi] : arcs_) {
            if (!(lo < hi) || hi - lo >= 1)
                throw validation_error("arc endpoints must satisfy lo < hi < lo + 1");
        }
        for (std::size_t i = 0; i < arcs_.size(); ++i)
            for (std::size_t j = i + 1; j < arcs_.size(); ++j)
                if (overlap(arcs_[i], arcs_[j]))
                    throw validation_error("arcs overlap after normalization");
    }

    static ArcRegion whole() { return ArcRegion(); }
    bool is_whole() const { return whole_; }
    const std::vector<std::pair<Rational, Rational>>& arcs() const { return arcs_; }

    enum class Position { Inside, Boundary, Outside };

    Position locate(const Rational& t) const {
        if (whole_) return Position::Inside;
        for (const auto& arc : arcs_) {
            Position p = locate_in_arc(arc, t);
            if (p != Position::Outside) return p;
        }
        return Position::Outside;
    }

private:
    static Position locate_in_arc(const std::pair<Rational, Rational>& arc,
                                  const Rational& t) {
        // shift t by an integer into [lo, lo+1)
        const Rational shifted = arc.first + frac(t - arc.first);
        if (shifted == arc.first) return Position::Boundary;
        if (shifted < arc.second) return Position::Inside;
        if (shifted == arc.second) return Position::Boundary;
        return Position::Outside;
    }

    static bool overlap(const std::pair<Rational, Rational>& a,
                        const std::pair<Rational, Rational>& b) {
        // open-interval intersection modulo 1; arcs may share endpoints
        const Rational lo = a.first + frac(b.first - a.first);
        const Rational hi = lo + (b.second - b.first);
        // b normalized to start within [a.lo, a.lo+1)
        if (lo < a.second) return true;
        return hi > a.first + 1;
    }

    bool whole_ = true;
    std::vector<std::pair<Rational, Rational>> arcs_;
};

struct FixedPointRecord {
    Rational t; // in [0,1)
    int k = 1;
    Int deck = 0; // f_k(t) = t + deck
    int index = 0;

    bool operator<(const FixedPointRecord& o) const {
        if (t != o.t) return t < o.t;
        return k < o.k;
    }
};

struct CoverSpec {
    int m = 1;
};

namespace detail {

struct RawHit {
    Rational t;
    int k;
    Int deck;
};

// Slope of branch k immediately left/right of t (wrapping across the seam
// via the deck relation: left of 0 on branch k is the last piece of branch
// sigma(k), and right of 1 is the first piece of sigma^-1(k)).
inline Rational slope_right(const PLCircleMap& map, int k, const Rational& t) {
    if (t == 1) {
        int j = map.deck_image().perm().inverse()(k);
        return map.slope(j, 0);
    }
    const auto& br = map.branches()[k - 1];
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
        if (t >= br[i].t && t < br[i + 1].t) return map.slope(k, i);
    throw std::logic_error("slope_right: no piece");
}

inline Rational slope_left(const PLCircleMap& map, int k, const Rational& t) {
    if (t == 0) {
        int j = map.deck_image().perm()(k);
        return map.slope(j, map.piece_count(j) - 1);
    }
    const auto& br = map.branches()[k - 1];
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
        if (t > br[i].t && t <= br[i + 1].t) return map.slope(k, i);
    throw std::logic_error("slope_left: no piece");
}

// Raw solutions of f_k(t) = t + c on one affine piece, c ranging over the
// given residue class (modulus 1 for the base circle, m for a cover).
template <typename Emit>
void piece_hits(const Rational& ta, const Rational& ya, const Rational& tb,
                const Rational& yb, int k, const Int& modulus, const Int& residue,
                Emit&& emit, const std::string& where) {
    const Rational s = (yb - ya) / (tb - ta);
    const Rational ga = ya - ta, gb = yb - tb;
    if (s == 1) {
        if (is_integer(ga) && mod_floor(numerator(ga), modulus) == residue)
            throw degenerate_error("slope-one segment lies on a deck translate of the "
                                   "diagonal on branch " + std::to_string(k) + " over [" +
                                   format_rational(ta) + ", " + format_rational(tb) + "]" +
                                   where);
        return;
    }
    const Rational lo = std::min(ga, gb), hi = std::max(ga, gb);
    for (Int c = rational_ceil_i(lo); c <= rational_floor(hi); ++c) {
        if (mod_floor(c, modulus) != residue) continue;
        const Rational t = ta + (Rational(c) - ga) / (s - 1);
        if (t >= ta && t <= tb) emit(t, c, s);
    }
}

} // namespace detail

// Every solution of f_k(t) = t mod 1 in the region, once, with its deck
// element and slope-sign index. Exact; degenerate crossings are rejected
// with a diagnostic rather than perturbed.
inline std::vector<FixedPointRecord> fixed_points(const PLCircleMap& map,
                                                  const ArcRegion& region = ArcRegion::whole()) {
    std::vector<detail::RawHit> hits;
    for (int k = 1; k <= map.n(); ++k) {
        const auto& br = map.branches()[k - 1];
        for (std::size_t i = 0; i + 1 < br.size(); ++i)
            detail::piece_hits(br[i].t, br[i].y, br[i + 1].t, br[i + 1].y, k, 1, 0,
                               [&](const Rational& t, const Int& c, const Rational&) {
                                   hits.push_back({t, k, c});
                               },
                               "");
    }
    // bring t = 1 hits to the seam: a fixed point of branch k at 1 with deck c
    // is the fixed point of branch sigma^-1(k) at 0 with deck c + 1 - e_k
    const SemidirectElement& theta = map.deck_image();
    for (auto& h : hits) {
        if (h.t == 1) {
            const Int ek = theta.translation(h.k).exponent_of_a();
            h.k = theta.perm().inverse()(h.k);
            h.deck = h.deck + 1 - ek;
            h.t = 0;
        }
    }
    std::map<std::pair<Rational, int>, Int> dedup;
    for (const auto& h : hits) {
        auto [it, inserted] = dedup.emplace(std::make_pair(h.t, h.k), h.deck);
        if (!inserted && it->second != h.deck)
            throw std::logic_error("conflicting deck elements at one fixed point");
    }
    std::vector<FixedPointRecord> out;
    for (const auto& [key, deck] : dedup) {
        const auto& [t, k] = key;
        const Rational sl = detail::slope_left(map, k, t);
        const Rational sr = detail::slope_right(map, k, t);
        if (sl != sr)
            throw degenerate_error("fixed point at breakpoint t = " + format_rational(t) +
                                   " on branch " + std::to_string(k) +
                                   " (left slope " + format_rational(sl) +
                                   ", right slope " + format_rational(sr) + ")");
        switch (region.locate(t)) {
            case ArcRegion::Position::Outside:
                continue;
            case ArcRegion::Position::Boundary:
                throw degenerate_error("fixed point on region boundary at t = " +
                                       format_rational(t));
            case ArcRegion::Position::Inside:
                break;
        }
        FixedPointRecord rec;
        rec.t = t;
        rec.k = k;
        rec.deck = deck;
        rec.index = sr < 1 ? +1 : -1;
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Tries the map itself, then a ladder of rational nudges, until the oracle
// accepts; the Reidemeister trace is invariant under these homotopies.
inline PLCircleMap transversal_representative(const PLCircleMap& map) {
    static const int primes[] = {97, 89, 83, 79, 73, 71, 67, 61, 59, 53};
    for (int attempt = 0; attempt <= 20; ++attempt) {
        PLCircleMap cand = map;
        if (attempt > 0) {
            int p = primes[(attempt - 1) % 10];
            int scale = 1 + (attempt - 1) / 10;
            cand = nudge(map, Rational(attempt % 2 == 1 ? 1 : -1, p * scale));
        }
        try {
            fixed_points(cand);
            return cand;
        } catch (const degenerate_error&) {
            continue;
        }
    }
    throw degenerate_error("no transversal nudge found");
}

// Local Reidemeister trace over the region (the whole circle by default):
// sum of index * [(a^deck, k)] over fixed points, classes canonicalized with
// respect to the map's induced hom (or a supplied value-equal hom, e.g. a
// conjugated lift bookkeeping).
inline ClassSum geometric_rt(const PLCircleMap& map,
                             const ArcRegion& region = ArcRegion::whole(),
                             const InducedHom* hom_override = nullptr,
                             int bound = kDefaultSearchBound) {
    InducedHom own = induced_hom_of(map);
    const InducedHom& h = hom_override ? *hom_override : own;
    if (hom_override && *hom_override != own)
        throw validation_error("supplied hom does not match the map's deck image");
    ClassSum out;
    for (const auto& rec : fixed_points(map, region))
        out.add(canonicalize(h, MarkedPair(GroupElement::power_of_a(rec.deck), rec.k), bound),
                rec.index);
    return out;
}

// Closed form for the degree-d linear n-valued map: zero when d = n,
// otherwise -1 (d > n) or +1 (d < n) on each class marking a fixed point
// location, i.e. with n*i - k + 1 in [0, d-n) resp. (d-n, 0].
inline ClassSum closed_form_rt(int n, const Int& d) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    ClassSum out;
    if (d == n) return out;
    const InducedHom h = induced_hom_of(LinearCircleMap{n, d});
    const bool expanding = d > n;
    const Int count = abs(d - Int(n));
    for (Int u = 0; u < count; ++u) {
        const Int uu = expanding ? u : -u;
        Int km = mod_floor(1 - uu, n);
        const int k = km == 0 ? n : static_cast<int>(km);
        const Int i = (uu - 1 + k) / n;
        out.add(canonicalize(h, MarkedPair(GroupElement::power_of_a(i), k)),
                expanding ? -1 : 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Automatic equivariant chain data for a PL circle map.
//
// The codomain triangulation K is the vertex set W (closed under all branch
// images mod 1, seeded with 0 and every breakpoint value); the domain K' adds
// breakpoints and all branch preimages of W, so each branch carries each
// K'-edge affinely onto a K-simplex. Basis lifts are the representatives in
// [0,1); entries are read off in that basis.
// ---------------------------------------------------------------------------
inline ChainData chain_data_of(const PLCircleMap& map,
                               const std::vector<Rational>& extra_codomain_seed = {},
                               std::size_t vertex_cap = 256,
                               const Int& denominator_cap = Int(1000000)) {
    for (int k = 1; k <= map.n(); ++k)
        for (const auto& bp : map.branches()[k - 1])
            if (denominator(bp.t) > denominator_cap || denominator(bp.y) > denominator_cap)
                throw validation_error("breakpoint denominators exceed the cap");

    std::set<Rational> W;
    W.insert(Rational(0));
    for (const Rational& w : extra_codomain_seed) W.insert(frac(w));
    for (int k = 1; k <= map.n(); ++k)
        for (const auto& bp : map.branches()[k - 1]) W.insert(frac(bp.y));
    // close under branch images
    while (true) {
        std::set<Rational> grown = W;
        for (const Rational& w : W)
            for (int k = 1; k <= map.n(); ++k) grown.insert(frac(map.eval(k, w)));
        if (grown.size() > vertex_cap)
            throw validation_error(
                "not simplicializable under the vertex cap: codomain vertex closure "
                "exceeds " + std::to_string(vertex_cap) + " vertices");
        if (grown.size() == W.size()) break;
        W.swap(grown);
    }
    if (W.size() < 2) {
        std::set<Rational> padded = W;
        padded.insert(frac(*W.begin() + Rational(1, 2)));
        // re-close after padding
        PLCircleMap copy = map;
        std::vector<Rational> seed(padded.begin(), padded.end());
        return chain_data_of(copy, seed, vertex_cap, denominator_cap);
    }

    std::vector<Rational> w(W.begin(), W.end());
    const std::size_t M = w.size();
    auto find_vertex = [&](const Rational& value, Int& deck) -> std::size_t {
        const Rational fr = frac(value);
        auto it = W.find(fr);
        if (it == W.end()) throw std::logic_error("vertex closure missed a value");
        deck = numerator(Rational(value - fr));
        return static_cast<std::size_t>(std::distance(W.begin(), it));
    };

    // domain vertices: W, breakpoints, and branch preimages of W + Z
    std::set<Rational> V = W;
    for (int k = 1; k <= map.n(); ++k) {
        const auto& br = map.branches()[k - 1];
        for (const auto& bp : br) V.insert(frac(bp.t));
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            const Rational ta = br[i].t, ya = br[i].y;
            const Rational tb = br[i + 1].t, yb = br[i + 1].y;
            if (ya == yb) continue; // flat piece degenerates to a vertex
            const Rational s = (yb - ya) / (tb - ta);
            const Rational lo = std::min(ya, yb), hi = std::max(ya, yb);
            for (const Rational& wv : W)
                for (Int c = rational_ceil_i(lo - wv); c <= rational_floor(hi - wv); ++c) {
                    const Rational t = ta + (wv + Rational(c) - ya) / s;
                    if (t >= ta && t <= tb) V.insert(frac(t));
                }
        }
    }
    if (V.size() > vertex_cap)
        throw validation_error("not simplicializable under the vertex cap: domain needs " +
                               std::to_string(V.size()) + " vertices");
    std::vector<Rational> v(V.begin(), V.end());
    const std::size_t L = v.size();

    ChainData data;
    data.dim = 1;
    data.n = map.n();
    data.hom = induced_hom_of(map);
    data.matrices.assign(2, std::vector<RingMatrix>(map.n()));
    for (int k = 1; k <= map.n(); ++k) {
        data.matrices[0][k - 1] = RingMatrix(M, M);
        data.matrices[1][k - 1] = RingMatrix(M, M);
    }

    // dimension 0: image of each codomain vertex (as a domain vertex)
    for (std::size_t j = 0; j < M; ++j)
        for (int k = 1; k <= map.n(); ++k) {
            Int deck;
            const std::size_t row = find_vertex(map.eval(k, w[j]), deck);
            auto& entry = data.matrices[0][k - 1].at(row, j);
            entry = entry + GroupRingElement::term(GroupElement::power_of_a(deck), 1);
        }

    // dimension 1: K-edge j is [w_j, w_{j+1}] (the last wraps to w_0 + 1);
    // since 0 is a vertex of both complexes, each K-edge is tiled by
    // untranslated K'-edges.
    auto edge_end = [](const std::vector<Rational>& vs, std::size_t idx) {
        return idx + 1 < vs.size() ? vs[idx + 1] : vs[0] + 1;
    };
    for (std::size_t j = 0; j < M; ++j) {
        const Rational lo = w[j], hi = edge_end(w, j);
        for (std::size_t i = 0; i < L; ++i) {
            const Rational a = v[i], b = edge_end(v, i);
            if (a < lo || b > hi) continue;
            for (int k = 1; k <= map.n(); ++k) {
                const Rational ya = map.eval(k, a);
                const Rational yb = map.eval(k, b);
                if (ya == yb) continue; // flat: edge collapses to a vertex
                const int sign = ya < yb ? +1 : -1;
                const Rational lo_y = std::min(ya, yb);
                Int deck;
                const std::size_t row = find_vertex(lo_y, deck);
                const Rational expected_end = edge_end(w, row) + Rational(deck);
                if (std::max(ya, yb) != expected_end)
                    throw std::logic_error("edge image is not a single codomain edge");
                auto& entry = data.matrices[1][k - 1].at(row, j);
                entry = entry + GroupRingElement::term(GroupElement::power_of_a(deck), sign);
            }
        }
    }

    // boundary of K-edge j: (lifted endpoint) - (start vertex)
    RingMatrix bd(M, M);
    for (std::size_t j = 0; j < M; ++j) {
        const Rational hi = edge_end(w, j);
        Int deck;
        const std::size_t row = find_vertex(hi, deck);
        bd.at(row, j) = bd.at(row, j) + GroupRingElement::term(GroupElement::power_of_a(deck), 1);
        bd.at(j, j) = bd.at(j, j) - GroupRingElement(Int(1));
    }
    data.boundaries.emplace(1, std::move(bd));

    for (const Rational& x : w) data.codomain_vertices.push_back(format_rational(x));
    for (const Rational& x : v) data.domain_vertices.push_back(format_rational(x));
    return data;
}

// ---------------------------------------------------------------------------
// Finite covers. The m-fold cover is the circle with deck group m*Z; the
// lifted branch data lives on [0, m] (ordinary maps of the cover need
// phi_k(a^m) in m*Z, which can fail, but the branch lifts, their fixed points
// and the averaging identity are defined regardless).
// ---------------------------------------------------------------------------
struct CoverMap {
    int n = 1;
    int m = 1;
    int shift = 0; // coset translate r: branch lifts f_k + r on [0, m]
    std::vector<std::vector<BreakPoint>> branches;
    Permutation seam_perm; // branch continuation across t = 0: sigma of theta^m
};

inline CoverMap lift_branches(const PLCircleMap& map, int m, int shift) {
    if (m < 1) throw std::invalid_argument("cover degree must be >= 1");
    CoverMap cm;
    cm.n = map.n();
    cm.m = m;
    cm.shift = shift;
    cm.branches.assign(map.n(), {});
    const SemidirectElement theta = map.deck_image();
    for (int j = 0; j < m; ++j) {
        const SemidirectElement tj = sd_pow(theta, j);
        const Permutation inv = tj.perm().inverse();
        for (int k = 1; k <= map.n(); ++k) {
            const int src = inv(k);
            const Int ek = tj.translation(k).exponent_of_a();
            const auto& br = map.branches()[src - 1];
            for (std::size_t i = (j == 0 ? 0 : 1); i < br.size(); ++i)
                cm.branches[k - 1].push_back(
                    {br[i].t + j, br[i].y + Rational(ek) + shift});
        }
    }
    cm.seam_perm = sd_pow(theta, m).perm();
    return cm;
}

struct CoverLift {
    int m = 1;
    std::vector<CoverMap> cosets; // shift r = 0..m-1
};

inline CoverLift lift_to_cover(const PLCircleMap& map, const CoverSpec& spec) {
    CoverLift out;
    out.m = spec.m;
    for (int r = 0; r < spec.m; ++r) out.cosets.push_back(lift_branches(map, spec.m, r));
    return out;
}

struct CoverFixedPoint {
    Rational t; // in [0, m)
    int k = 1;
    Int deck = 0; // subgroup exponent i: f_k(t) + r = t + m*i
    int index = 0;
};

inline std::vector<CoverFixedPoint> cover_fixed_points(
    const CoverMap& cm, const ArcRegion& region = ArcRegion::whole()) {
    std::vector<detail::RawHit> hits;
    for (int k = 1; k <= cm.n; ++k) {
        const auto& br = cm.branches[k - 1];
        for (std::size_t i = 0; i + 1 < br.size(); ++i)
            detail::piece_hits(br[i].t, br[i].y, br[i + 1].t, br[i + 1].y, k, cm.m, 0,
                               [&](const Rational& t, const Int& c, const Rational&) {
                                   hits.push_back({t, k, c});
                               },
                               " (cover)");
    }
    // A circle point at the seam is fixed exactly when some coset's branch
    // reads it at t = 0+, so hits at t = m are duplicates of a seam reading
    // and are dropped (for maps that do not descend to the cover they would
    // otherwise be double-counted in a second coset).
    std::map<std::pair<Rational, int>, Int> dedup;
    for (const auto& h : hits) {
        if (h.t == cm.m) continue;
        auto [it, inserted] = dedup.emplace(std::make_pair(h.t, h.k), h.deck);
        if (!inserted && it->second != h.deck)
            throw std::logic_error("conflicting deck elements at one cover fixed point");
    }
    std::vector<CoverFixedPoint> out;
    for (const auto& [key, deck] : dedup) {
        const auto& [t, k] = key;
        Rational sl, sr;
        const auto& br = cm.branches[k - 1];
        if (t == 0) {
            const int j = cm.seam_perm(k);
            const auto& jb = cm.branches[j - 1];
            sl = (jb.back().y - jb[jb.size() - 2].y) / (jb.back().t - jb[jb.size() - 2].t);
            sr = (br[1].y - br[0].y) / (br[1].t - br[0].t);
        } else {
            for (std::size_t i = 0; i + 1 < br.size(); ++i) {
                if (t > br[i].t && t <= br[i + 1].t)
                    sl = (br[i + 1].y - br[i].y) / (br[i + 1].t - br[i].t);
                if (t >= br[i].t && t < br[i + 1].t)
                    sr = (br[i + 1].y - br[i].y) / (br[i + 1].t - br[i].t);
            }
        }
        if (sl != sr)
            throw degenerate_error("cover fixed point at breakpoint t = " +
                                   format_rational(t));
        switch (region.locate(frac(t))) {
            case ArcRegion::Position::Outside:
                continue;
            case ArcRegion::Position::Boundary:
                throw degenerate_error("cover fixed point on region preimage boundary");
            case ArcRegion::Position::Inside:
                break;
        }
        if (deck % cm.m != 0) throw std::logic_error("cover deck not in subgroup");
        CoverFixedPoint rec;
        rec.t = t;
        rec.k = k;
        rec.deck = deck / cm.m;
        rec.index = sr < 1 ? +1 : -1;
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(),
              [](const CoverFixedPoint& a, const CoverFixedPoint& b) {
                  return a.t != b.t ? a.t < b.t : a.k < b.k;
              });
    return out;
}

struct AveragingReport {
    ClassSum lhs;            // m * RT(f, lift, U)
    ClassSum rhs;            // sum over cosets of the pushed-forward cover traces
    ClassSum quotient;       // rhs / m when the division is exact
    std::vector<Int> coset_lefschetz;
    bool division_exact = false;
    bool ok = false;
};

// Checks m * RT(f, lift, U) = sum over cosets of mu . iota (RT upstairs) with
// integer arithmetic; the quotient is reported only when exact.
inline AveragingReport average_rt(const PLCircleMap& map, const CoverSpec& spec,
                                  const ArcRegion& region = ArcRegion::whole(),
                                  int bound = kDefaultSearchBound) {
    const InducedHom h = induced_hom_of(map);
    AveragingReport rep;
    rep.lhs = geometric_rt(map, region, nullptr, bound).scaled(spec.m);
    for (int r = 0; r < spec.m; ++r) {
        const CoverMap cm = lift_branches(map, spec.m, r);
        ClassSum coset;
        Int lefschetz = 0;
        for (const auto& rec : cover_fixed_points(cm, region)) {
            // iota then mu_{beta^n}: (b^i, k) -> (a^{m i}, k) -> (a^{m i - r}, k)
            const MarkedPair down(GroupElement::power_of_a(spec.m * rec.deck - r), rec.k);
            coset.add(canonicalize(h, down, bound), rec.index);
            lefschetz += rec.index;
        }
        rep.coset_lefschetz.push_back(lefschetz);
        rep.rhs = rep.rhs + coset;
    }
    rep.division_exact = true;
    for (const auto& [repr, t] : rep.rhs.terms()) {
        if (t.coeff % spec.m != 0) {
            rep.division_exact = false;
            break;
        }
        rep.quotient.add(ReidemeisterClass{repr, t.exact}, t.coeff / spec.m);
    }
    if (!rep.division_exact) rep.quotient = ClassSum();
    rep.ok = rep.division_exact && rep.lhs == rep.rhs;
    return rep;
}

struct SplitReport {
    ClassSum combined;
    ClassSum embedded_sum;
    bool ok = false;
};

// For a split map given by n pointwise-disjoint single-valued lifts, checks
// RT(combined) = sum_k iota_k(RT(f_k)) where iota_k([alpha]) = [(alpha, k)].
inline SplitReport split_rt_check(const std::vector<PLCircleMap>& singles,
                                  int bound = kDefaultSearchBound) {
    if (singles.empty()) throw std::invalid_argument("empty split family");
    std::vector<std::vector<BreakPoint>> branches;
    for (const auto& s : singles) {
        if (s.n() != 1) throw validation_error("split family members must be single-valued");
        branches.push_back(s.branches()[0]);
    }
    const int n = static_cast<int>(singles.size());
    // combined-map validation reports any value collision
    PLCircleMap combined(n, std::move(branches));
    const InducedHom h = induced_hom_of(combined);
    SplitReport rep;
    rep.combined = geometric_rt(combined, ArcRegion::whole(), nullptr, bound);
    for (int k = 1; k <= n; ++k) {
        const ClassSum single = geometric_rt(singles[k - 1], ArcRegion::whole(), nullptr, bound);
        for (const auto& [r, t] : single.terms())
            rep.embedded_sum.add(canonicalize(h, MarkedPair(r.alpha, k), bound), t.coeff);
    }
    rep.ok = rep.combined == rep.embedded_sum;
    return rep;
}

struct LiftChangeReport {
    ClassSum transported; // mu_Phi(RT(f, Phi lift))
    ClassSum direct;      // RT(f, lift)
    bool ok = false;
};

// Changing the lift by Phi relabels branches and shifts deck markings:
// (Phi lift)_k = delta_k . f_{eps^-1(k)}. The transported trace must equal
// the original.
inline LiftChangeReport change_of_lift_check(const PLCircleMap& map,
                                             const SemidirectElement& Phi,
                                             int bound = kDefaultSearchBound) {
    if (Phi.n() != map.n()) throw std::invalid_argument("Phi has wrong n");
    const InducedHom h = induced_hom_of(map);
    std::vector<std::vector<BreakPoint>> branches(map.n());
    const Permutation inv = Phi.perm().inverse();
    for (int k = 1; k <= map.n(); ++k) {
        const Int shift = Phi.translation(k).exponent_of_a();
        branches[k - 1] = map.branches()[inv(k) - 1];
        for (auto& bp : branches[k - 1]) bp.y += Rational(shift);
    }
    PLCircleMap shifted(map.n(), std::move(branches));
    const InducedHom hc = conjugate(h, Phi);
    if (hc != induced_hom_of(shifted))
        throw std::logic_error("conjugated hom does not match the shifted map");
    LiftChangeReport rep;
    const ClassSum rt_shifted = geometric_rt(shifted, ArcRegion::whole(), &hc, bound);
    rep.transported = mu_sum(h, Phi, rt_shifted, bound);
    rep.direct = geometric_rt(map, ArcRegion::whole(), nullptr, bound);
    rep.ok = rep.transported == rep.direct;
    return rep;
}

} // namespace nvrt

#endif
