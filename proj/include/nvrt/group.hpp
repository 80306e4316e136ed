// Reduced words in a free group of finite rank (rank 1 = infinite cyclic).
// A word is a sequence of (generator index, nonzero exponent) syllables in
// which adjacent syllables never share a generator. Equality is equality of
// reduced words.

#ifndef NVRT_GROUP_HPP
#define NVRT_GROUP_HPP

#include "nvrt/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace nvrt {

class GroupElement {
public:
    using Syllable = std::pair<int, Int>; // generator index (>= 1), exponent (!= 0)

    GroupElement() = default;

    static GroupElement identity() { return GroupElement(); }

    static GroupElement generator(int index, Int exp = 1) {
        GroupElement g;
        if (index < 1) throw std::invalid_argument("generator index must be >= 1");
        if (exp != 0) g.syl_.emplace_back(index, std::move(exp));
        return g;
    }

    // Rank-1 convenience: a^e.
    static GroupElement power_of_a(Int exp) { return generator(1, std::move(exp)); }

    static GroupElement from_syllables(std::vector<Syllable> raw) {
        GroupElement g;
        for (auto& s : raw) g.append(s.first, s.second);
        return g;
    }

    const std::vector<Syllable>& syllables() const { return syl_; }
    bool is_identity() const { return syl_.empty(); }

    // Sum of |exponents|; word length in letters.
    Int length() const {
        Int n = 0;
        for (const auto& s : syl_) n += abs(s.second);
        return n;
    }

    int max_generator() const {
        int m = 0;
        for (const auto& s : syl_) m = std::max(m, s.first);
        return m;
    }

    // Exponent of the single generator for rank-1 words.
    Int exponent_of_a() const {
        if (syl_.empty()) return 0;
        if (syl_.size() != 1 || syl_[0].first != 1)
            throw std::invalid_argument("not a rank-1 word: " + str(max_generator()));
        return syl_[0].second;
    }

    GroupElement inverse() const {
        GroupElement g;
        g.syl_.reserve(syl_.size());
        for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
            g.syl_.emplace_back(it->first, -it->second);
        return g;
    }

    friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
        GroupElement r = x;
        for (const auto& s : y.syl_) r.append(s.first, s.second);
        return r;
    }

    GroupElement pow(const Int& e) const {
        if (e == 0) return identity();
        // syllable words have cheap repeated multiplication; square-and-multiply
        GroupElement base = e > 0 ? *this : inverse();
        Int n = abs(e);
        GroupElement acc;
        GroupElement sq = base;
        while (n > 0) {
            if ((n & 1) != 0) acc = acc * sq;
            sq = sq * sq;
            n >>= 1;
        }
        return acc;
    }

    bool operator==(const GroupElement& o) const { return syl_ == o.syl_; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

    // Shortlex: by total letter length, then letterwise with
    // a1 < a1^-1 < a2 < a2^-1 < ...  Compares syllable runs without expansion.
    static int shortlex_cmp(const GroupElement& x, const GroupElement& y) {
        Int lx = x.length(), ly = y.length();
        if (lx != ly) return lx < ly ? -1 : 1;
        std::size_t i = 0, j = 0;
        Int ci = 0, cj = 0; // letters consumed within current syllable
        while (i < x.syl_.size() && j < y.syl_.size()) {
            const auto& sx = x.syl_[i];
            const auto& sy = y.syl_[j];
            int letter_x = letter_key(sx);
            int letter_y = letter_key(sy);
            if (letter_x != letter_y) return letter_x < letter_y ? -1 : 1;
            Int rx = abs(sx.second) - ci;
            Int ry = abs(sy.second) - cj;
            Int step = std::min(rx, ry);
            ci += step;
            cj += step;
            if (ci == abs(sx.second)) { ++i; ci = 0; }
            if (cj == abs(sy.second)) { ++j; cj = 0; }
        }
        if (i < x.syl_.size()) return 1;
        if (j < y.syl_.size()) return -1;
        return 0;
    }

    bool operator<(const GroupElement& o) const { return shortlex_cmp(*this, o) < 0; }

    // Grammar: "1" identity; rank 1 prints the generator as "a"; rank >= 2 as
    // "a1", "a2", ...  Exponent 1 is implicit: "a", "a1 a2^-1", "a^3".
    std::string str(int rank = 1) const {
        if (syl_.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < syl_.size(); ++i) {
            if (i) out += ' ';
            out += rank <= 1 ? "a" : "a" + std::to_string(syl_[i].first);
            if (syl_[i].second != 1) out += "^" + syl_[i].second.str();
        }
        return out;
    }

    static GroupElement parse(const std::string& text) {
        GroupElement g;
        std::size_t pos = 0;
        auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
        skip_ws();
        if (pos < text.size() && text[pos] == '1') {
            ++pos;
            skip_ws();
            if (pos != text.size()) throw parse_error("trailing input after identity: " + text);
            return g;
        }
        bool any = false;
        while (pos < text.size()) {
            if (text[pos] != 'a') throw parse_error("bad group element: " + text);
            ++pos;
            int gen = 1;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                gen = std::stoi(text.substr(start, pos - start));
                if (gen < 1) throw parse_error("bad generator index in: " + text);
            }
            Int exp = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::size_t start = pos;
                if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (pos == start) throw parse_error("missing exponent in: " + text);
                exp = Int(text.substr(start, pos - start));
                if (exp == 0) throw parse_error("zero exponent in: " + text);
            }
            g.append(gen, exp);
            any = true;
            skip_ws();
        }
        if (!any) throw parse_error("empty group element");
        return g;
    }

private:
    static int letter_key(const Syllable& s) {
        return 2 * s.first + (s.second < 0 ? 1 : 0);
    }

    void append(int gen, const Int& exp) {
        if (exp == 0) return;
        if (!syl_.empty() && syl_.back().first == gen) {
            syl_.back().second += exp;
            if (syl_.back().second == 0) syl_.pop_back();
        } else {
            syl_.emplace_back(gen, exp);
        }
    }

    std::vector<Syllable> syl_;
};

// g_mul by name, mirroring the operation table.
inline GroupElement g_mul(const GroupElement& x, const GroupElement& y) { return x * y; }

// All reduced words of length <= bound in shortlex order (rank >= 1).
// Visitor receives each word; return false from it to stop early.
template <typename F>
void for_each_reduced_word(int rank, int bound, F&& visit) {
    if (bound < 0) throw std::invalid_argument("negative word-length bound");
    std::vector<GroupElement> layer{GroupElement::identity()};
    if (!visit(layer[0])) return;
    for (int len = 1; len <= bound; ++len) {
        std::vector<GroupElement> next;
        next.reserve(layer.size() * 2 * rank);
        for (const auto& w : layer) {
            for (int gen = 1; gen <= rank; ++gen) {
                for (int sign : {+1, -1}) {
                    const auto& syl = w.syllables();
                    if (!syl.empty() && syl.back().first == gen &&
                        (syl.back().second > 0) != (sign > 0))
                        continue; // would cancel
                    next.push_back(w * GroupElement::generator(gen, sign));
                }
            }
        }
        std::sort(next.begin(), next.end());
        for (const auto& w : next)
            if (!visit(w)) return;
        layer = std::move(next);
    }
}

} // namespace nvrt

#endif
