// Shared builders and seeded generators for the test suites.

#ifndef NVRT_TEST_SUPPORT_HPP
#define NVRT_TEST_SUPPORT_HPP

#include "nvrt/nvrt.hpp"

#include <random>
#include <vector>

namespace nvrt::testing {

using Rng = std::mt19937_64;

inline GroupElement random_word(Rng& rng, int rank, int max_len) {
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<int> gen_dist(1, rank);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    GroupElement w;
    const int len = len_dist(rng);
    for (int i = 0; i < len; ++i)
        w = w * GroupElement::generator(gen_dist(rng), sign_dist(rng) ? 1 : -1);
    return w;
}

inline Permutation random_perm(Rng& rng, int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    for (int i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<int> d(0, i);
        std::swap(img[i], img[d(rng)]);
    }
    return Permutation(img);
}

inline SemidirectElement random_sd(Rng& rng, int n, int rank, int max_len) {
    std::vector<GroupElement> trans(n);
    for (auto& t : trans) t = random_word(rng, rank, max_len);
    return SemidirectElement(std::move(trans), random_perm(rng, n));
}

inline GroupRingElement random_ring(Rng& rng, int rank, int max_terms, int max_len) {
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::uniform_int_distribution<int> coeff(-4, 4);
    GroupRingElement r;
    const int t = terms(rng);
    for (int i = 0; i < t; ++i)
        r.add_term(random_word(rng, rank, max_len), coeff(rng));
    return r;
}

// The worked 2-valued degree-5 example: lifts start at 0 and 1/2.
inline InducedHom hom_2_5() { return induced_hom_of(LinearCircleMap{2, 5}); }

// A 2-valued degree-5 map homotopic to the linear one, built so that the
// two-vertex codomain triangulation {0, 1/2} closes under both branch
// images; lifts start at f_1(0) = 0 and f_2(0) = 1/2, and branch 2 has a
// flat segment at height 3/2 touching the diagonal translate at t = 1/2.
inline PLCircleMap perturbed_degree5_map() {
    auto r = [](long long p, long long q) { return Rational(p, q); };
    std::vector<std::vector<BreakPoint>> branches(2);
    branches[0] = {{r(0, 1), r(0, 1)},  {r(2, 5), r(1, 1)},  {r(1, 2), r(1, 1)},
                   {r(3, 5), r(3, 2)},  {r(4, 5), r(2, 1)},  {r(1, 1), r(5, 2)}};
    branches[1] = {{r(0, 1), r(1, 2)},  {r(1, 5), r(1, 1)},  {r(2, 5), r(3, 2)},
                   {r(1, 2), r(3, 2)},  {r(3, 5), r(2, 1)},  {r(1, 1), r(3, 1)}};
    return PLCircleMap(2, std::move(branches));
}

inline MarkedPair pair_a(long long exp, int k) {
    return MarkedPair(GroupElement::power_of_a(exp), k);
}

inline ClassSum sum_of(const InducedHom& h,
                       std::vector<std::pair<MarkedPair, long long>> entries) {
    ClassSum s;
    for (const auto& [p, c] : entries) s.add(canonicalize(h, p), c);
    return s;
}

} // namespace nvrt::testing

#endif
