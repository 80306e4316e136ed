#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nvrt;
using nvrt::testing::pair_a;

namespace {

// The four matrices of the worked 2-valued degree-5 computation, with the
// circle boundary, as a chain-data file.
const char* kWorkedExampleJson = R"({
  "dim": 1,
  "n": 2,
  "hom": {"n": 2, "generators": {"a": {"translations": ["a^2", "a^3"], "perm": [2, 1]}}},
  "matrices": {
    "q0": {
      "k1": [["1", "a"], ["0", "0"]],
      "k2": [["0", "0"], ["1", "a"]]
    },
    "q1": {
      "k1": [["1", "a + a^2"], ["1", "a"]],
      "k2": [["a", "a^2"], ["1", "a + a^2"]]
    }
  },
  "boundaries": {
    "q1": [["-1", "a"], ["1", "-1"]]
  }
})";

ChainData worked_example() { return chain_from_json(json::parse(kWorkedExampleJson)); }

// Identity map of the circle on the 3-vertex triangulation {0, 1/3, 2/3}.
ChainData identity_three_vertices() {
    ChainData c;
    c.dim = 1;
    c.n = 1;
    c.hom = InducedHom(
        1, 1, {{1, SemidirectElement({GroupElement::power_of_a(1)}, Permutation::identity(1))}});
    RingMatrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.at(i, i) = GroupRingElement(Int(1));
    c.matrices = {{id3}, {id3}};
    RingMatrix bd(3, 3);
    bd.at(0, 0) = GroupRingElement(Int(-1));
    bd.at(1, 0) = GroupRingElement(Int(1));
    bd.at(1, 1) = GroupRingElement(Int(-1));
    bd.at(2, 1) = GroupRingElement(Int(1));
    bd.at(2, 2) = GroupRingElement(Int(-1));
    bd.at(0, 2) = GroupRingElement(GroupElement::power_of_a(1));
    c.boundaries.emplace(1, bd);
    return c;
}

// Constant map to the vertex 0 with the lift fixing the preimage 0.
ChainData constant_map_three_vertices() {
    ChainData c = identity_three_vertices();
    c.hom = InducedHom(
        1, 1, {{1, SemidirectElement({GroupElement::identity()}, Permutation::identity(1))}});
    RingMatrix m0(3, 3);
    for (int j = 0; j < 3; ++j) m0.at(0, j) = GroupRingElement(Int(1));
    c.matrices = {{m0}, {RingMatrix(3, 3)}};
    return c;
}

} // namespace

TEST_CASE("the worked example's trace data is frozen exactly", "[chain]") {
    const ChainData c = worked_example();
    REQUIRE(zpi_trace(c.matrices[0][0]) == GroupRingElement::parse("1"));
    REQUIRE(zpi_trace(c.matrices[0][1]) == GroupRingElement::parse("a"));
    REQUIRE(zpi_trace(c.matrices[1][0]) == GroupRingElement::parse("1 + a"));
    REQUIRE(zpi_trace(c.matrices[1][1]) == GroupRingElement::parse("2*a + a^2"));

    const RTResult r = rt_via_traces(c);
    REQUIRE(r.rt.str() == "-1*[(1,1)] + -1*[(a,1)] + -1*[(a,2)]");
    REQUIRE(r.lefschetz == -3);
    REQUIRE(r.nielsen_lower == 3);
    REQUIRE(r.exact);
    REQUIRE(r.rt.terms().size() == 3);
    for (const auto& [rep, t] : r.rt.terms()) REQUIRE(t.coeff == -1);
}

TEST_CASE("identity and constant maps at chain level", "[chain]") {
    SECTION("identity on three vertices has vanishing trace") {
        const ChainData c = identity_three_vertices();
        REQUIRE(zpi_trace(c.matrices[0][0]) == GroupRingElement(Int(3)));
        REQUIRE(zpi_trace(c.matrices[1][0]) == GroupRingElement(Int(3)));
        const RTResult r = rt_via_traces(c);
        REQUIRE(r.rt.is_zero());
        REQUIRE(r.lefschetz == 0);
        REQUIRE(r.nielsen_lower == 0);
    }
    SECTION("constant map has a single class of weight one") {
        const RTResult r = rt_via_traces(constant_map_three_vertices());
        REQUIRE(r.lefschetz == 1);
        REQUIRE(r.nielsen_lower == 1);
        REQUIRE(r.rt.str() == "1*[(1,1)]");
    }
}

TEST_CASE("chain validation", "[chain]") {
    SECTION("the worked example passes with boundaries") {
        REQUIRE(validate_chain(worked_example()).ok);
        REQUIRE(validate_chain(identity_three_vertices()).ok);
        REQUIRE(validate_chain(constant_map_three_vertices()).ok);
    }
    SECTION("a corrupted boundary is located") {
        ChainData c = worked_example();
        c.boundaries.at(1).at(0, 0) = GroupRingElement(GroupElement::power_of_a(4));
        const ValidationReport rep = validate_chain(c);
        REQUIRE_FALSE(rep.ok);
        bool located = false;
        for (const auto& issue : rep.issues)
            if (issue.what.find("entry") != std::string::npos) located = true;
        REQUIRE(located);
    }
    SECTION("missing branch matrices are reported") {
        ChainData c = worked_example();
        c.matrices[1].pop_back();
        const ValidationReport rep = validate_chain(c);
        REQUIRE_FALSE(rep.ok);
        REQUIRE(rep.issues.front().where == "q1");
        REQUIRE_THROWS_AS(rt_via_traces(c), validation_error);
    }
    SECTION("non-square matrices are reported") {
        ChainData c = worked_example();
        c.matrices[0][0] = RingMatrix(2, 3);
        REQUIRE_FALSE(validate_chain(c).ok);
    }
    SECTION("bad entry grammar is a parse error") {
        json j = json::parse(kWorkedExampleJson);
        j["matrices"]["q0"]["k1"][0][0] = "b^2";
        REQUIRE_THROWS_AS(chain_from_json(j), parse_error);
    }
}

TEST_CASE("chain traces agree across simplicial representatives", "[chain][homotopy]") {
    // homotopic maps with compatible lifts: equal projected trace sums
    const RTResult perturbed = rt_via_traces(chain_data_of(testing::perturbed_degree5_map()));
    const RTResult model = rt_via_traces(chain_data_of(simplicial_model(2, 5)));
    REQUIRE(perturbed.rt == model.rt);

    // the same model on a refined codomain triangulation
    const RTResult refined =
        rt_via_traces(chain_data_of(simplicial_model(2, 5), {Rational(1, 4)}));
    REQUIRE(refined.rt == model.rt);
}

TEST_CASE("chain data round-trips through JSON", "[chain][io]") {
    const ChainData c = chain_data_of(testing::perturbed_degree5_map());
    const json j = chain_to_json(c);
    const ChainData back = chain_from_json(j);
    REQUIRE(back.dim == c.dim);
    REQUIRE(back.n == c.n);
    REQUIRE(back.hom == c.hom);
    for (int q = 0; q <= c.dim; ++q)
        for (int k = 1; k <= c.n; ++k)
            REQUIRE(back.matrices[q][k - 1] == c.matrices[q][k - 1]);
    REQUIRE(back.boundaries.at(1) == c.boundaries.at(1));
    REQUIRE(rt_via_traces(back).rt == rt_via_traces(c).rt);
}
