// Elements of the semidirect product pi^n x| Sigma_n: an n-tuple of deck
// translations together with a permutation. Multiplication and inverse follow
//   (a_1..a_n; s)(b_1..b_n; r) = (a_1 b_{s^-1(1)}, ..., a_n b_{s^-1(n)}; s*r)
//   (a_1..a_n; s)^-1 = (a_{s(1)}^-1, ..., a_{s(n)}^-1; s^-1).

#ifndef NVRT_SEMIDIRECT_HPP
#define NVRT_SEMIDIRECT_HPP

#include "nvrt/group.hpp"
#include "nvrt/permutation.hpp"

#include <string>
#include <vector>

namespace nvrt {

class SemidirectElement {
public:
    SemidirectElement() = default;

    SemidirectElement(std::vector<GroupElement> translations, Permutation perm)
        : trans_(std::move(translations)), perm_(std::move(perm)) {
        if (static_cast<int>(trans_.size()) != perm_.n())
            throw validation_error("translation tuple and permutation size mismatch");
    }

    static SemidirectElement identity(int n) {
        return SemidirectElement(std::vector<GroupElement>(n), Permutation::identity(n));
    }

    int n() const { return perm_.n(); }
    const std::vector<GroupElement>& translations() const { return trans_; }
    const GroupElement& translation(int k) const { return trans_.at(k - 1); }
    const Permutation& perm() const { return perm_; }

    bool is_identity() const {
        if (!perm_.is_identity()) return false;
        for (const auto& t : trans_)
            if (!t.is_identity()) return false;
        return true;
    }

    bool operator==(const SemidirectElement& o) const {
        return trans_ == o.trans_ && perm_ == o.perm_;
    }
    bool operator!=(const SemidirectElement& o) const { return !(*this == o); }

    std::string str(int rank = 1) const {
        std::string out = "(";
        for (std::size_t i = 0; i < trans_.size(); ++i) {
            if (i) out += ", ";
            out += trans_[i].str(rank);
        }
        out += "; " + perm_.str() + ")";
        return out;
    }

    // "(a^2, a^3; (1 2))"  /  "(1, 1; id)"
    static SemidirectElement parse(const std::string& text, int n) {
        std::string s = text;
        auto first = s.find('(');
        auto semi = s.rfind(';');
        auto last = s.rfind(')');
        if (first == std::string::npos || semi == std::string::npos ||
            last == std::string::npos || !(first < semi && semi < last))
            throw parse_error("bad semidirect element: " + text);
        std::string tuple = s.substr(first + 1, semi - first - 1);
        std::string perm = s.substr(semi + 1, last - semi - 1);
        std::vector<GroupElement> trans;
        std::size_t pos = 0;
        while (pos <= tuple.size()) {
            auto comma = tuple.find(',', pos);
            std::string piece =
                tuple.substr(pos, comma == std::string::npos ? comma : comma - pos);
            while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
            while (!piece.empty() && piece.back() == ' ') piece.pop_back();
            if (piece.empty()) throw parse_error("empty translation in: " + text);
            trans.push_back(GroupElement::parse(piece));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (static_cast<int>(trans.size()) != n)
            throw parse_error("expected " + std::to_string(n) + " translations in: " + text);
        return SemidirectElement(std::move(trans), Permutation::parse(perm, n));
    }

private:
    std::vector<GroupElement> trans_;
    Permutation perm_;
};

inline SemidirectElement sd_mul(const SemidirectElement& A, const SemidirectElement& B) {
    if (A.n() != B.n()) throw std::invalid_argument("semidirect n mismatch");
    const Permutation sinv = A.perm().inverse();
    std::vector<GroupElement> trans(A.n());
    for (int i = 1; i <= A.n(); ++i)
        trans[i - 1] = A.translation(i) * B.translation(sinv(i));
    return SemidirectElement(std::move(trans), A.perm() * B.perm());
}

inline SemidirectElement sd_inv(const SemidirectElement& A) {
    std::vector<GroupElement> trans(A.n());
    for (int i = 1; i <= A.n(); ++i)
        trans[i - 1] = A.translation(A.perm()(i)).inverse();
    return SemidirectElement(std::move(trans), A.perm().inverse());
}

inline SemidirectElement sd_pow(const SemidirectElement& A, const Int& e) {
    if (e == 0) return SemidirectElement::identity(A.n());
    SemidirectElement base = e > 0 ? A : sd_inv(A);
    Int m = abs(e);
    SemidirectElement acc = SemidirectElement::identity(A.n());
    SemidirectElement sq = base;
    while (m > 0) {
        if ((m & 1) != 0) acc = sd_mul(acc, sq);
        sq = sd_mul(sq, sq);
        m >>= 1;
    }
    return acc;
}

// Left action on an n-tuple: (a; s).(x_1..x_n) = (a_1 x_{s^-1(1)}, ...).
// `translate(deck, point)` applies a deck translation to a point.
template <typename Point, typename Translate>
std::vector<Point> sd_act(const SemidirectElement& A, const std::vector<Point>& tuple,
                          Translate&& translate) {
    if (static_cast<int>(tuple.size()) != A.n())
        throw std::invalid_argument("tuple length mismatch in action");
    const Permutation sinv = A.perm().inverse();
    std::vector<Point> out;
    out.reserve(tuple.size());
    for (int i = 1; i <= A.n(); ++i)
        out.push_back(translate(A.translation(i), tuple[sinv(i) - 1]));
    return out;
}

inline std::vector<GroupElement> sd_act(const SemidirectElement& A,
                                        const std::vector<GroupElement>& tuple) {
    return sd_act(A, tuple,
                  [](const GroupElement& g, const GroupElement& x) { return g * x; });
}

// Rank-1 deck action on points of the real line: a^e . x = x + e.
inline std::vector<Rational> sd_act(const SemidirectElement& A,
                                    const std::vector<Rational>& tuple) {
    return sd_act(A, tuple, [](const GroupElement& g, const Rational& x) {
        return x + Rational(g.exponent_of_a());
    });
}

} // namespace nvrt

#endif
