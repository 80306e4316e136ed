// The integral group ring Z[pi]: finite formal integer combinations of group
// elements, plus matrices over it and the diagonal-sum trace.

#ifndef NVRT_GROUP_RING_HPP
#define NVRT_GROUP_RING_HPP

#include "nvrt/group.hpp"

#include <map>
#include <string>
#include <vector>

namespace nvrt {

class GroupRingElement {
public:
    GroupRingElement() = default;

    GroupRingElement(const Int& c) { add_term(GroupElement::identity(), c); }

    GroupRingElement(const GroupElement& g) { add_term(g, 1); }

    static GroupRingElement zero() { return GroupRingElement(); }

    static GroupRingElement term(const GroupElement& g, const Int& c) {
        GroupRingElement r;
        r.add_term(g, c);
        return r;
    }

    const std::map<GroupElement, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coefficient(const GroupElement& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? Int(0) : it->second;
    }

    Int coefficient_sum() const {
        Int s = 0;
        for (const auto& [g, c] : terms_) s += c;
        return s;
    }

    void add_term(const GroupElement& g, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(g, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) {
        GroupRingElement r = x;
        for (const auto& [g, c] : y.terms_) r.add_term(g, c);
        return r;
    }

    friend GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y) {
        GroupRingElement r = x;
        for (const auto& [g, c] : y.terms_) r.add_term(g, -c);
        return r;
    }

    GroupRingElement operator-() const {
        GroupRingElement r;
        for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
        return r;
    }

    friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
        GroupRingElement r;
        for (const auto& [g, c] : x.terms_)
            for (const auto& [h, d] : y.terms_) r.add_term(g * h, c * d);
        return r;
    }

    bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

    // Grammar: "0"; terms joined by " + ", coefficient 1 implicit on nonidentity
    // words, identity word prints as a bare integer: "1 + a + 2*a^2", "-3*a".
    std::string str(int rank = 1) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [g, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            if (g.is_identity()) {
                out += c.str();
            } else if (c == 1) {
                out += g.str(rank);
            } else {
                out += c.str() + "*" + g.str(rank);
            }
        }
        return out;
    }

    static GroupRingElement parse(const std::string& text) {
        GroupRingElement r;
        std::size_t pos = 0;
        bool any = false;
        while (pos < text.size()) {
            std::size_t next = text.find(" + ", pos);
            std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
            pos = next == std::string::npos ? text.size() : next + 3;
            // trim
            while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
            while (!piece.empty() && piece.back() == ' ') piece.pop_back();
            if (piece.empty()) throw parse_error("empty term in ring element: " + text);
            any = true;
            auto star = piece.find('*');
            if (star != std::string::npos) {
                Int coeff;
                try {
                    coeff = Int(piece.substr(0, star));
                } catch (const std::runtime_error&) {
                    throw parse_error("bad coefficient in: " + piece);
                }
                r.add_term(GroupElement::parse(piece.substr(star + 1)), coeff);
            } else if (piece.find('a') != std::string::npos) {
                r.add_term(GroupElement::parse(piece), 1);
            } else {
                try {
                    Int c(piece);
                    if (c != 0) r.add_term(GroupElement::identity(), c);
                } catch (const std::runtime_error&) {
                    throw parse_error("bad ring term: " + piece);
                }
            }
        }
        if (!any) throw parse_error("empty ring element");
        return r;
    }

private:
    std::map<GroupElement, Int> terms_;
};

class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GroupRingElement& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const GroupRingElement& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const RingMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    friend RingMatrix operator*(const RingMatrix& A, const RingMatrix& B) {
        if (A.cols_ != B.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        RingMatrix C(A.rows_, B.cols_);
        for (std::size_t i = 0; i < A.rows_; ++i)
            for (std::size_t l = 0; l < A.cols_; ++l) {
                if (A.at(i, l).is_zero()) continue;
                for (std::size_t j = 0; j < B.cols_; ++j)
                    C.at(i, j) = C.at(i, j) + A.at(i, l) * B.at(l, j);
            }
        return C;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<GroupRingElement> data_;
};

inline GroupRingElement zpi_trace(const RingMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("trace of non-square matrix");
    GroupRingElement t;
    for (std::size_t i = 0; i < m.rows(); ++i) t = t + m.at(i, i);
    return t;
}

} // namespace nvrt

#endif
