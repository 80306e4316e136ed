// Reidemeister classes of marked pairs (alpha, k) in pi x {1..n} under the
// twisted relation
//   (alpha,k) ~ (beta,j)  iff  exists g in pi with sigma_g(k)=j and
//                              alpha = phi_j(g)^-1 beta g.
// Decisions are exact over recognized linear-circle homs (membership reduces
// to a residue of n*x - k), and a bounded shortlex witness search otherwise,
// returning unknown honestly. Also: the projection rho, the change-of-lift
// map mu, and the finite-cover inclusion iota (witnesses restricted to the
// subgroup m*Z of a rank-1 deck group).

#ifndef NVRT_REIDEMEISTER_HPP
#define NVRT_REIDEMEISTER_HPP

#include "nvrt/induced_hom.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nvrt {

struct MarkedPair {
    GroupElement alpha;
    int k = 1;

    MarkedPair() = default;
    MarkedPair(GroupElement a, int branch) : alpha(std::move(a)), k(branch) {}

    bool operator==(const MarkedPair& o) const { return k == o.k && alpha == o.alpha; }
    bool operator!=(const MarkedPair& o) const { return !(*this == o); }
    bool operator<(const MarkedPair& o) const {
        if (k != o.k) return k < o.k;
        return alpha < o.alpha;
    }

    std::string str(int rank = 1) const {
        return "(" + alpha.str(rank) + "," + std::to_string(k) + ")";
    }
};

inline void check_pair(const InducedHom& h, const MarkedPair& p) {
    if (p.k < 1 || p.k > h.n())
        throw validation_error("marked pair branch out of range: " + p.str(h.rank()));
}

// The pair equivalent to p by witness g: ((phi_j(g))^-1 * beta * g, sigma_g^-1(j)).
inline MarkedPair tceq_partner(const InducedHom& h, const MarkedPair& p,
                               const GroupElement& g) {
    check_pair(h, p);
    const SemidirectElement val = h.evaluate(g);
    int k = val.perm().inverse()(p.k);
    GroupElement alpha = val.translation(p.k).inverse() * p.alpha * g;
    return MarkedPair(std::move(alpha), k);
}

inline bool verify_witness(const InducedHom& h, const MarkedPair& p, const MarkedPair& q,
                           const GroupElement& g) {
    check_pair(h, p);
    check_pair(h, q);
    const SemidirectElement val = h.evaluate(g);
    if (val.perm()(p.k) != q.k) return false;
    return p.alpha == val.translation(q.k).inverse() * q.alpha * g;
}

struct EquivalenceVerdict {
    enum class Outcome { Equivalent, NotEquivalent, Unknown };
    Outcome outcome = Outcome::Unknown;
    std::optional<GroupElement> witness; // set iff Equivalent

    bool equivalent() const { return outcome == Outcome::Equivalent; }
    bool not_equivalent() const { return outcome == Outcome::NotEquivalent; }
    bool unknown() const { return outcome == Outcome::Unknown; }
};

struct ReidemeisterClass {
    MarkedPair rep;
    bool exact = false;

    bool operator==(const ReidemeisterClass& o) const {
        return rep == o.rep && exact == o.exact;
    }
    bool operator<(const ReidemeisterClass& o) const { return rep < o.rep; }
};

inline constexpr int kDefaultSearchBound = 12;

namespace detail {

// mu_Phi on pairs; the class-level map is built on top of this.
inline MarkedPair mu_pair(const SemidirectElement& Phi, const MarkedPair& p) {
    if (p.k < 1 || p.k > Phi.n())
        throw validation_error("marked pair branch out of range under mu");
    return MarkedPair(Phi.translation(p.k).inverse() * p.alpha,
                      Phi.perm().inverse()(p.k));
}

// Exact relation over the linear hom of (n, d), witnesses in the subgroup
// m*Z (m = 1 for the full group): derived from the endpoint relation of the
// linear lifts, (a^x, k) ~ (a^y, j) iff n*x - k = n*y - j + g*(n - d) for
// some g in m*Z. For d = n the classes are singletons.
inline EquivalenceVerdict linear_equivalent(int n, const Int& d, int m,
                                            const MarkedPair& p, const MarkedPair& q) {
    const Int x = p.alpha.exponent_of_a();
    const Int y = q.alpha.exponent_of_a();
    EquivalenceVerdict v;
    if (d == n) {
        if (x == y && p.k == q.k) {
            v.outcome = EquivalenceVerdict::Outcome::Equivalent;
            v.witness = GroupElement::identity();
        } else {
            v.outcome = EquivalenceVerdict::Outcome::NotEquivalent;
        }
        return v;
    }
    const Int delta = (n * x - p.k) - (n * y - q.k);
    const Int D = Int(n) - d;
    if (delta % (D * m) == 0) {
        v.outcome = EquivalenceVerdict::Outcome::Equivalent;
        v.witness = GroupElement::power_of_a(delta / D);
    } else {
        v.outcome = EquivalenceVerdict::Outcome::NotEquivalent;
    }
    return v;
}

// Canonical representative over the linear hom: the unique pair marking a
// fixed point location of the linear map in [0,1), i.e. with
// n*i - k + 1 in [0, d-n) for d > n and in (d-n, 0] for d < n.
inline MarkedPair linear_canonical(int n, const Int& d, const MarkedPair& p) {
    const Int x = p.alpha.exponent_of_a();
    if (d == n) return MarkedPair(GroupElement::power_of_a(x), p.k);
    const Int M = abs(d - Int(n));
    const Int v = mod_floor(n * x - p.k, M);
    Int u = mod_floor(v + 1, M);
    if (d < n && u != 0) u -= M;
    Int km = mod_floor(1 - u, n);
    const int kc = km == 0 ? n : static_cast<int>(km);
    const Int i = (u - 1 + kc) / n;
    return MarkedPair(GroupElement::power_of_a(i), kc);
}

inline Int egcd(const Int& a, const Int& b, Int& s, Int& t) {
    if (b == 0) { s = a < 0 ? -1 : 1; t = 0; return abs(a); }
    Int s1, t1;
    Int g = egcd(b, mod_floor(a, b), s1, t1);
    s = t1;
    t = s1 - t1 * floor_div(a, b);
    return g;
}

// Least nonnegative solution X of n*X = c (mod B) with X = 0 (mod m);
// nullopt when unsolvable.
inline std::optional<Int> least_subgroup_solution(const Int& n, const Int& m,
                                                  const Int& B, const Int& c) {
    // X = m*x': solve (n*m) x' = c (mod B)
    Int A = mod_floor(n * m, B), s, t;
    Int g = egcd(A, B, s, t);
    if (g == 0) return c == 0 ? std::optional<Int>(0) : std::nullopt;
    if (mod_floor(c, g) != 0) return std::nullopt;
    Int step = B / g;
    Int x0 = mod_floor(s * (c / g), step);
    return m * x0;
}

// Canonical representative over the index-m subgroup relation: smallest
// branch k meeting the class, then least nonnegative exponent. Pairs need
// not have subgroup exponents (partners of subgroup-marked pairs leave the
// subgroup when the map does not descend to the cover).
inline MarkedPair cover_canonical(int n, const Int& d, int m, const MarkedPair& p) {
    const Int x = p.alpha.exponent_of_a();
    if (d == n) return MarkedPair(GroupElement::power_of_a(x), p.k);
    const Int B = abs(d - Int(n)) * m;
    const Int v = mod_floor(n * x - p.k, B);
    for (int kc = 1; kc <= n; ++kc) {
        auto X = least_subgroup_solution(n, 1, B, mod_floor(v + kc, B));
        if (X) return MarkedPair(GroupElement::power_of_a(*X), kc);
    }
    throw std::logic_error("cover class has no representative");
}

template <typename WitnessVisitor>
void for_each_subgroup_witness(int rank, int m, int bound, WitnessVisitor&& visit) {
    if (m == 1) {
        for_each_reduced_word(rank, bound, visit);
        return;
    }
    if (rank != 1)
        throw validation_error("finite-index subgroup search supported for rank 1 only");
    if (!visit(GroupElement::identity())) return;
    for (int g = 1; g * m <= bound; ++g) {
        if (!visit(GroupElement::power_of_a(g * m))) return;
        if (!visit(GroupElement::power_of_a(-Int(g) * m))) return;
    }
}

inline EquivalenceVerdict decide(const InducedHom& h, int m, const MarkedPair& p,
                                 const MarkedPair& q, int bound) {
    check_pair(h, p);
    check_pair(h, q);
    if (bound < 0) throw std::invalid_argument("negative search bound");
    if (h.structure()) {
        const auto& s = *h.structure();
        const bool conjugated = !s.conjugator.is_identity();
        const MarkedPair pb = conjugated ? mu_pair(s.conjugator, p) : p;
        const MarkedPair qb = conjugated ? mu_pair(s.conjugator, q) : q;
        EquivalenceVerdict v = linear_equivalent(s.n, s.d, m, pb, qb);
        if (v.equivalent() && !verify_witness(h, p, q, *v.witness))
            throw std::logic_error("exact witness failed verification");
        return v;
    }
    EquivalenceVerdict v;
    for_each_subgroup_witness(h.rank(), m, bound, [&](const GroupElement& g) {
        if (tceq_partner(h, q, g) == p) {
            v.outcome = EquivalenceVerdict::Outcome::Equivalent;
            v.witness = g;
            return false;
        }
        return true;
    });
    return v;
}

inline ReidemeisterClass canonical(const InducedHom& h, int m, const MarkedPair& p,
                                   int bound) {
    check_pair(h, p);
    if (bound < 0) throw std::invalid_argument("negative search bound");
    if (h.structure()) {
        const auto& s = *h.structure();
        const bool conjugated = !s.conjugator.is_identity();
        const MarkedPair pb = conjugated ? mu_pair(s.conjugator, p) : p;
        MarkedPair cb = m == 1 ? linear_canonical(s.n, s.d, pb)
                               : cover_canonical(s.n, s.d, m, pb);
        MarkedPair rep = conjugated ? mu_pair(sd_inv(s.conjugator), cb) : cb;
        return ReidemeisterClass{std::move(rep), true};
    }
    MarkedPair best = p;
    for_each_subgroup_witness(h.rank(), m, bound, [&](const GroupElement& g) {
        MarkedPair cand = tceq_partner(h, p, g);
        if (cand < best) best = cand;
        return true;
    });
    return ReidemeisterClass{std::move(best), false};
}

} // namespace detail

// Decision wrapper around the Reidemeister relation. Exact over recognized
// circle structures; otherwise searches witnesses of word length <= bound.
inline EquivalenceVerdict equivalent(const InducedHom& h, const MarkedPair& p,
                                     const MarkedPair& q,
                                     int bound = kDefaultSearchBound) {
    return detail::decide(h, 1, p, q, bound);
}

// Relation with witnesses restricted to the index-m subgroup (circle covers).
inline EquivalenceVerdict equivalent_in_cover(const InducedHom& h, int m,
                                              const MarkedPair& p, const MarkedPair& q,
                                              int bound = kDefaultSearchBound) {
    if (m < 1) throw std::invalid_argument("cover degree must be >= 1");
    return detail::decide(h, m, p, q, bound);
}

inline ReidemeisterClass canonicalize(const InducedHom& h, const MarkedPair& p,
                                      int bound = kDefaultSearchBound) {
    return detail::canonical(h, 1, p, bound);
}

inline ReidemeisterClass canonicalize_in_cover(const InducedHom& h, int m,
                                               const MarkedPair& p,
                                               int bound = kDefaultSearchBound) {
    if (m < 1) throw std::invalid_argument("cover degree must be >= 1");
    return detail::canonical(h, m, p, bound);
}

// Formal integer sum of marked pairs (pre-projection).
struct FormalPairSum {
    std::map<MarkedPair, Int> terms;

    void add(const MarkedPair& p, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = terms.emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
};

// Formal integer sum of Reidemeister classes, keyed by canonical
// representative; per-class exactness is carried along.
class ClassSum {
public:
    struct Term {
        Int coeff;
        bool exact;
    };

    void add(const ReidemeisterClass& cls, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(cls.rep, Term{c, cls.exact});
        if (!inserted) {
            it->second.coeff += c;
            it->second.exact = it->second.exact && cls.exact;
            if (it->second.coeff == 0) terms_.erase(it);
        }
    }

    const std::map<MarkedPair, Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coefficient_sum() const {
        Int s = 0;
        for (const auto& [rep, t] : terms_) s += t.coeff;
        return s;
    }

    int nonzero_exact_count() const {
        int c = 0;
        for (const auto& [rep, t] : terms_)
            if (t.exact) ++c;
        return c;
    }

    bool all_exact() const {
        for (const auto& [rep, t] : terms_)
            if (!t.exact) return false;
        return true;
    }

    ClassSum scaled(const Int& c) const {
        ClassSum out;
        if (c == 0) return out;
        for (const auto& [rep, t] : terms_)
            out.terms_.emplace(rep, Term{t.coeff * c, t.exact});
        return out;
    }

    friend ClassSum operator+(const ClassSum& x, const ClassSum& y) {
        ClassSum out = x;
        for (const auto& [rep, t] : y.terms_)
            out.add(ReidemeisterClass{rep, t.exact}, t.coeff);
        return out;
    }

    bool operator==(const ClassSum& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin();
        auto jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt)
            if (it->first != jt->first || it->second.coeff != jt->second.coeff ||
                it->second.exact != jt->second.exact)
                return false;
        return true;
    }
    bool operator!=(const ClassSum& o) const { return !(*this == o); }

    // "0" or "c*[(alpha,k)]" terms joined by " + ", sorted by representative.
    std::string str(int rank = 1) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [rep, t] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += t.coeff.str() + "*[" + rep.str(rank) + "]";
        }
        return out;
    }

private:
    std::map<MarkedPair, Term> terms_;
};

// Natural quotient Z(pi x {1..n}) -> Z R(f#): canonicalize and merge.
inline ClassSum rho_project(const InducedHom& h, const FormalPairSum& s,
                            int bound = kDefaultSearchBound) {
    ClassSum out;
    for (const auto& [p, c] : s.terms) out.add(canonicalize(h, p, bound), c);
    return out;
}

// mu_Phi(alpha, k) = (delta_k^-1 alpha, eps^-1(k)) on pairs.
inline MarkedPair mu_map(const SemidirectElement& Phi, const MarkedPair& p) {
    return detail::mu_pair(Phi, p);
}

// Class-level mu: takes a class w.r.t. conjugate(h, Phi) to a class w.r.t. h.
inline ReidemeisterClass mu_class(const InducedHom& h, const SemidirectElement& Phi,
                                  const ReidemeisterClass& cls,
                                  int bound = kDefaultSearchBound) {
    return canonicalize(h, mu_map(Phi, cls.rep), bound);
}

inline ClassSum mu_sum(const InducedHom& h, const SemidirectElement& Phi,
                       const ClassSum& s, int bound = kDefaultSearchBound) {
    ClassSum out;
    for (const auto& [rep, t] : s.terms())
        out.add(mu_class(h, Phi, ReidemeisterClass{rep, t.exact}, bound), t.coeff);
    return out;
}

// Inclusion of Reidemeister sets induced by the subgroup m*Z of a rank-1 deck
// group: the same marked pair, re-canonicalized under the full relation.
inline ReidemeisterClass iota_include(const InducedHom& h, int m, const MarkedPair& p,
                                      int bound = kDefaultSearchBound) {
    if (m < 1) throw validation_error("subgroup not registered: cover degree must be >= 1");
    if (h.rank() != 1 && m != 1)
        throw validation_error("subgroup not registered for rank >= 2");
    return canonicalize(h, p, bound);
}

} // namespace nvrt

#endif
