#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nvrt;
using nvrt::testing::Rng;

namespace {

InducedHom random_hom(Rng& rng, int n, int rank, int max_len) {
    std::map<int, SemidirectElement> images;
    for (int g = 1; g <= rank; ++g) images.emplace(g, testing::random_sd(rng, n, 1, max_len));
    return InducedHom(n, rank, std::move(images));
}

} // namespace

TEST_CASE("evaluation of the induced homomorphism", "[hom]") {
    const InducedHom h = testing::hom_2_5();
    const GroupElement a = GroupElement::power_of_a(1);

    SECTION("identity evaluates to the identity") {
        REQUIRE(h.evaluate(GroupElement::identity()) == SemidirectElement::identity(2));
    }
    SECTION("generator image of the 2-valued degree-5 map") {
        // endpoints of the linear lifts: f_k(t+1) picks up a^2 on branch 1
        // and a^3 on branch 2, with the branch swap
        const SemidirectElement expected({a.pow(2), a.pow(3)}, Permutation({2, 1}));
        REQUIRE(h.evaluate(a) == expected);
    }
    SECTION("evaluate(a^2) is the square of evaluate(a)") {
        const SemidirectElement sq = sd_mul(h.evaluate(a), h.evaluate(a));
        REQUIRE(h.evaluate(a.pow(2)) == sq);
        REQUIRE(h.evaluate(a.pow(2)) ==
                SemidirectElement({a.pow(5), a.pow(5)}, Permutation::identity(2)));
    }
    SECTION("unknown generator rejected") {
        REQUIRE_THROWS_AS(h.evaluate(GroupElement::generator(2)), validation_error);
    }
}

TEST_CASE("coordinate functions phi and sigma", "[hom]") {
    const InducedHom h = testing::hom_2_5();
    const GroupElement a = GroupElement::power_of_a(1);

    REQUIRE(h.phi(1, GroupElement::identity()).is_identity());
    REQUIRE(h.phi(2, a) == a.pow(3));
    REQUIRE(h.sigma(a) == Permutation({2, 1}));
    // phi_1(a^-1) = phi_{sigma_a(1)}(a)^-1 = a^-3
    REQUIRE(h.phi(1, a.inverse()) == h.phi(h.sigma(a)(1), a).inverse());
    REQUIRE(h.phi(1, a.inverse()) == a.pow(-3));
    REQUIRE_THROWS_AS(h.phi(3, a), std::out_of_range);
}

TEST_CASE("homomorphism law and coordinate identities", "[hom][property]") {
    Rng rng(4242);
    std::vector<InducedHom> homs;
    homs.push_back(testing::hom_2_5());
    homs.push_back(induced_hom_of(LinearCircleMap{3, -4}));
    homs.push_back(random_hom(rng, 3, 2, 4));

    for (const auto& h : homs) {
        for (int i = 0; i < 1000; ++i) {
            const GroupElement x = testing::random_word(rng, h.rank(), 8);
            const GroupElement y = testing::random_word(rng, h.rank(), 8);
            REQUIRE(h.evaluate(x * y) == sd_mul(h.evaluate(x), h.evaluate(y)));

            const int k = 1 + static_cast<int>(rng() % h.n());
            // phi_k(xy) = phi_k(x) phi_{sigma_x^-1(k)}(y)
            REQUIRE(h.phi(k, x * y) == h.phi(k, x) * h.phi(h.sigma(x).inverse()(k), y));
            // phi_k(x^-1) = phi_{sigma_x(k)}(x)^-1
            REQUIRE(h.phi(k, x.inverse()) == h.phi(h.sigma(x)(k), x).inverse());
        }
    }
}

TEST_CASE("conjugation by a change of lift", "[hom]") {
    Rng rng(2718);
    const InducedHom h = testing::hom_2_5();
    const GroupElement a = GroupElement::power_of_a(1);

    SECTION("identity conjugator") {
        REQUIRE(conjugate(h, SemidirectElement::identity(2)) == h);
    }
    SECTION("conjugation undoes through the inverse") {
        for (int i = 0; i < 100; ++i) {
            const SemidirectElement Phi = testing::random_sd(rng, 2, 1, 3);
            REQUIRE(conjugate(conjugate(h, Phi), sd_inv(Phi)) == h);
        }
    }
    SECTION("composition of conjugations") {
        for (int i = 0; i < 100; ++i) {
            const SemidirectElement Phi = testing::random_sd(rng, 2, 1, 3);
            const SemidirectElement Psi = testing::random_sd(rng, 2, 1, 3);
            REQUIRE(conjugate(conjugate(h, Psi), Phi) == conjugate(h, sd_mul(Phi, Psi)));
        }
    }
    SECTION("coordinates of the conjugated hom expand as displayed") {
        // translations delta_i phi_{eps^-1(i)}(g) delta^-1_{eps^-1(sigma_g^-1(eps(i)))}
        // and permutation eps sigma_g eps^-1, checked coordinatewise
        for (int rep = 0; rep < 50; ++rep) {
            const SemidirectElement Phi = testing::random_sd(rng, 2, 1, 3);
            const GroupElement g = testing::random_word(rng, 1, 5);
            const SemidirectElement lhs = conjugate(h, Phi).evaluate(g);
            const Permutation eps = Phi.perm();
            const Permutation sg = h.sigma(g);
            std::vector<GroupElement> trans(2);
            for (int i = 1; i <= 2; ++i) {
                const int src = eps.inverse()(i);
                const int tail = eps.inverse()(sg.inverse()(eps(i)));
                trans[i - 1] = Phi.translation(i) * h.phi(src, g) *
                               Phi.translation(tail).inverse();
            }
            const SemidirectElement rhs(trans, eps * sg * eps.inverse());
            REQUIRE(lhs == rhs);
        }
    }
    SECTION("branch swap example keeps the degree data") {
        const SemidirectElement Phi({GroupElement::identity(), GroupElement::identity()},
                                    Permutation({2, 1}));
        const InducedHom hc = conjugate(h, Phi);
        REQUIRE(hc.evaluate(a) ==
                SemidirectElement({a.pow(3), a.pow(2)}, Permutation({2, 1})));
    }
}

TEST_CASE("hom JSON fragment round-trips", "[hom][io]") {
    const InducedHom h = testing::hom_2_5();
    const json j = hom_to_json(h);
    REQUIRE(j.at("n") == 2);
    REQUIRE(j.at("generators").at("a").at("translations") ==
            json::array({"a^2", "a^3"}));
    REQUIRE(j.at("generators").at("a").at("perm") == json::array({2, 1}));
    REQUIRE(hom_from_json(j) == h);

    // the documented fragment parses to the same hom
    const json doc = json::parse(
        R"({"n": 2, "generators": {"a": {"translations": ["a^2","a^3"], "perm": [2,1]}}})");
    REQUIRE(hom_from_json(doc) == h);

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        std::map<int, SemidirectElement> images;
        images.emplace(1, testing::random_sd(rng, 3, 2, 3));
        images.emplace(2, testing::random_sd(rng, 3, 2, 3));
        const InducedHom rh(3, 2, std::move(images));
        REQUIRE(hom_from_json(hom_to_json(rh)) == rh);
    }
}
