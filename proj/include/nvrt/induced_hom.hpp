// The induced homomorphism of an n-valued map with a chosen lifting,
// presented by its values on free-group generators. Evaluation on arbitrary
// words, the coordinate functions phi_k and sigma, and conjugation by a deck
// element (change of lift).

#ifndef NVRT_INDUCED_HOM_HPP
#define NVRT_INDUCED_HOM_HPP

#include "nvrt/semidirect.hpp"

#include <map>
#include <optional>

namespace nvrt {

// Attached when the hom is recognized as the induced hom of the degree-d
// linear n-valued circle map (possibly conjugated by a net change of lift).
// Twisted-conjugacy decisions over such homs are exact.
struct LinearCircleStructure {
    int n = 0;
    Int d = 0;
    SemidirectElement conjugator; // identity when the hom is the linear one itself
};

// Generator image of the degree-d linear circle map: coordinate k translates
// by a^floor((k-1+d)/n) and moves to branch ((k-1+d) mod n) + 1.
inline SemidirectElement linear_circle_generator_image(int n, const Int& d) {
    std::vector<GroupElement> trans(n);
    std::vector<int> inv_images(n);
    for (int k = 1; k <= n; ++k) {
        Int t = k - 1 + d;
        trans[k - 1] = GroupElement::power_of_a(floor_div(t, n));
        inv_images[k - 1] = static_cast<int>(mod_floor(t, n)) + 1;
    }
    return SemidirectElement(std::move(trans), Permutation(std::move(inv_images)).inverse());
}

class InducedHom {
public:
    InducedHom() = default;

    InducedHom(int n, int rank, std::map<int, SemidirectElement> generator_images)
        : n_(n), rank_(rank), images_(std::move(generator_images)) {
        if (n_ < 1) throw validation_error("branch count must be >= 1");
        if (rank_ < 1) throw validation_error("free-group rank must be >= 1");
        for (const auto& [gen, img] : images_) {
            if (gen < 1 || gen > rank_)
                throw validation_error("generator index out of range in hom");
            if (img.n() != n_) throw validation_error("generator image has wrong n");
        }
        detect_linear_structure();
    }

    int n() const { return n_; }
    int rank() const { return rank_; }
    const std::map<int, SemidirectElement>& generator_images() const { return images_; }

    const std::optional<LinearCircleStructure>& structure() const { return structure_; }
    void set_structure(std::optional<LinearCircleStructure> s) { structure_ = std::move(s); }

    SemidirectElement evaluate(const GroupElement& w) const {
        SemidirectElement acc = SemidirectElement::identity(n_);
        for (const auto& [gen, exp] : w.syllables()) {
            auto it = images_.find(gen);
            if (it == images_.end())
                throw validation_error("unknown generator a" + std::to_string(gen) +
                                       " in hom evaluation");
            acc = sd_mul(acc, sd_pow(it->second, exp));
        }
        return acc;
    }

    GroupElement phi(int k, const GroupElement& w) const {
        if (k < 1 || k > n_) throw std::out_of_range("branch index out of range in phi");
        return evaluate(w).translation(k);
    }

    Permutation sigma(const GroupElement& w) const { return evaluate(w).perm(); }

    // Value-level equality (structure tags ignored).
    bool operator==(const InducedHom& o) const {
        return n_ == o.n_ && rank_ == o.rank_ && images_ == o.images_;
    }
    bool operator!=(const InducedHom& o) const { return !(*this == o); }

private:
    void detect_linear_structure() {
        if (rank_ != 1 || images_.size() != 1 || !images_.count(1)) return;
        const SemidirectElement& theta = images_.at(1);
        Int d = 0;
        for (const auto& t : theta.translations()) {
            if (t.syllables().size() > 1 || (!t.is_identity() && t.syllables()[0].first != 1))
                return;
            d += t.is_identity() ? Int(0) : t.syllables()[0].second;
        }
        if (theta == linear_circle_generator_image(n_, d))
            structure_ = LinearCircleStructure{n_, d, SemidirectElement::identity(n_)};
    }

    int n_ = 1;
    int rank_ = 1;
    std::map<int, SemidirectElement> images_;
    std::optional<LinearCircleStructure> structure_;
};

// (Phi f)_#(g) = Phi . f_#(g) . Phi^-1. Exact-structure tags transport through
// the conjugator so class decisions stay exact.
inline InducedHom conjugate(const InducedHom& h, const SemidirectElement& Phi) {
    if (Phi.n() != h.n()) throw std::invalid_argument("conjugator n mismatch");
    std::map<int, SemidirectElement> images;
    const SemidirectElement inv = sd_inv(Phi);
    for (const auto& [gen, img] : h.generator_images())
        images.emplace(gen, sd_mul(Phi, sd_mul(img, inv)));
    InducedHom out(h.n(), h.rank(), std::move(images));
    // Keep canonicalization a function of the hom's value: transport the tag
    // only when the conjugated images were not recognized directly.
    if (!out.structure() && h.structure()) {
        LinearCircleStructure s = *h.structure();
        s.conjugator = sd_mul(Phi, s.conjugator);
        out.set_structure(std::move(s));
    }
    return out;
}

} // namespace nvrt

#endif
