// Permutations of {1,...,n}, stored one-indexed as the image array.

#ifndef NVRT_PERMUTATION_HPP
#define NVRT_PERMUTATION_HPP

#include "nvrt/rational.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace nvrt {

class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
                throw validation_error("not a bijection of {1..n}");
            seen[v - 1] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 1);
        return Permutation(std::move(img));
    }

    int n() const { return static_cast<int>(img_.size()); }

    int apply(int i) const {
        if (i < 1 || i > n()) throw std::out_of_range("permutation argument out of range");
        return img_[i - 1];
    }
    int operator()(int i) const { return apply(i); }

    bool is_identity() const {
        for (int i = 1; i <= n(); ++i)
            if (img_[i - 1] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(img_.size());
        for (int i = 1; i <= n(); ++i) inv[img_[i - 1] - 1] = i;
        return Permutation(std::move(inv));
    }

    // Composition sigma * rho applies rho first: (sigma*rho)(i) = sigma(rho(i)).
    friend Permutation operator*(const Permutation& sigma, const Permutation& rho) {
        if (sigma.n() != rho.n())
            throw std::invalid_argument("permutation size mismatch");
        std::vector<int> img(sigma.img_.size());
        for (int i = 1; i <= sigma.n(); ++i) img[i - 1] = sigma(rho(i));
        return Permutation(std::move(img));
    }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return !(*this == o); }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

    const std::vector<int>& images() const { return img_; }

    // Disjoint cycle notation, cycles sorted by least element, "id" for the
    // identity: "(1 2)", "(1 3)(2 4)".
    std::string str() const {
        if (is_identity()) return "id";
        std::string out;
        std::vector<bool> seen(img_.size(), false);
        for (int start = 1; start <= n(); ++start) {
            if (seen[start - 1] || img_[start - 1] == start) continue;
            out += '(';
            int i = start;
            bool first = true;
            while (!seen[i - 1]) {
                seen[i - 1] = true;
                if (!first) out += ' ';
                first = false;
                out += std::to_string(i);
                i = img_[i - 1];
            }
            out += ')';
        }
        return out;
    }

    static Permutation parse(const std::string& text, int n) {
        std::size_t pos = 0;
        auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
        skip_ws();
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 1);
        if (text.compare(pos, 2, "id") == 0) {
            pos += 2;
            skip_ws();
            if (pos != text.size()) throw parse_error("trailing input after id: " + text);
            return Permutation(std::move(img));
        }
        bool any = false;
        while (pos < text.size()) {
            if (text[pos] != '(') throw parse_error("bad permutation: " + text);
            ++pos;
            std::vector<int> cycle;
            while (true) {
                skip_ws();
                if (pos < text.size() && text[pos] == ')') { ++pos; break; }
                std::size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (pos == start) throw parse_error("bad cycle in permutation: " + text);
                int v = std::stoi(text.substr(start, pos - start));
                if (v < 1 || v > n) throw parse_error("cycle entry out of range: " + text);
                cycle.push_back(v);
            }
            if (cycle.size() < 2) throw parse_error("cycle too short in: " + text);
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
                if (img[from - 1] != from) throw parse_error("overlapping cycles in: " + text);
                img[from - 1] = to;
            }
            any = true;
            skip_ws();
        }
        if (!any) throw parse_error("empty permutation");
        return Permutation(std::move(img));
    }

private:
    std::vector<int> img_;
};

} // namespace nvrt

#endif
