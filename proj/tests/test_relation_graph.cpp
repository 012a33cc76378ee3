#include <doctest.h>

#include <algorithm>
#include <random>

#include "semlook/relation_graph.hpp"

using namespace semlook;

namespace {

// Graph with given arc weights over a clique layout; relations are filled
// with synthetic predicate ids so enumeration has something to chew on.
OntologyGraph make_graph(std::size_t n_terms,
                         const std::map<std::pair<std::size_t, std::size_t>, uint32_t>& weights) {
    OntologyGraph g;
    g.terms.resize(n_terms);
    for (std::size_t i = 0; i < n_terms; ++i) g.terms[i] = {SymbolId{(uint32_t)i}, SymbolId{(uint32_t)i}};
    g.weights.assign(n_terms, std::vector<std::optional<uint32_t>>(n_terms, std::nullopt));
    for (std::size_t i = 0; i < n_terms; ++i) g.weights[i][i] = 0;
    uint32_t pred = 1000;
    for (std::size_t i = 0; i < n_terms; ++i) {
        for (std::size_t j = i + 1; j < n_terms; ++j) {
            auto it = weights.find({i, j});
            if (it == weights.end() || it->second == 0) continue;
            g.weights[i][j] = g.weights[j][i] = it->second;
            std::vector<SymbolId> rels;
            for (uint32_t k = 0; k < it->second; ++k) rels.push_back(SymbolId{pred++});
            g.relations[{i, j}] = std::move(rels);
            g.arcs.emplace_back(i, j);
        }
    }
    return g;
}

}  // namespace

TEST_CASE("build_ontology_graph fills weights from the store") {
    Ontobase store;
    SymbolId hotel = store.intern("Hotel");
    SymbolId city = store.intern("City");
    SymbolId garden = store.intern("Garden");
    for (const char* p : {"locatedIn", "near", "administeredBy"})
        store.put_ontology_triplet(
            {hotel, store.intern(p), city, PropertyKind::ObjectProperty, "o.xml"});

    std::vector<QueryTerm> terms{{store.intern("ashoka"), hotel},
                                 {store.intern("bangalore"), city},
                                 {store.intern("lalbagh"), garden}};
    auto g = build_ontology_graph(terms, store);
    CHECK(*g.weights[0][1] == 3);
    CHECK(*g.weights[1][0] == 3);
    CHECK_FALSE(g.weights[0][2].has_value());  // no Hotel-Garden relation
    CHECK(*g.weights[0][0] == 0);
    CHECK(g.arc_count() == 1);

    CHECK_THROWS_AS(build_ontology_graph({terms[0]}, store), TooFewTerms);
    std::vector<QueryTerm> unrelated{{store.intern("a"), garden}, {store.intern("b"), garden}};
    CHECK_THROWS_AS(build_ontology_graph(unrelated, store), NoRelationalContext);
}

TEST_CASE("prune_analysis finds the least-ranked arcs") {
    SUBCASE("weights {2,2,5}") {
        auto g = make_graph(3, {{{0, 1}, 2}, {{0, 2}, 2}, {{1, 2}, 5}});
        auto a = prune_analysis(g);
        CHECK(a.lra == 2);
        CHECK(a.nl == 2);
        CHECK(a.nc == 1);
        CHECK(a.least_arcs == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("nl=4 gives nc=2") {
        auto g = make_graph(4, {{{0, 1}, 1}, {{0, 2}, 1}, {{0, 3}, 1}, {{1, 2}, 1}, {{1, 3}, 9}});
        auto a = prune_analysis(g);
        CHECK(a.nl == 4);
        CHECK(a.nc == 2);
    }
    SUBCASE("single arc") {
        auto g = make_graph(2, {{{0, 1}, 7}});
        auto a = prune_analysis(g);
        CHECK(a.lra == 7);
        CHECK(a.nl == 1);
        CHECK(a.nc == 1);
    }
}

TEST_CASE("enumerate_subgraphs emits lexicographic cut combinations") {
    SUBCASE("nl=4, nc=2 over 7 arcs: 6 plans") {
        std::map<std::pair<std::size_t, std::size_t>, uint32_t> w;
        // 4 least arcs (weight 1) and 3 heavy (weight 3) on a 5-clique subset
        w[{0, 1}] = 1; w[{0, 2}] = 1; w[{0, 3}] = 1; w[{0, 4}] = 1;
        w[{1, 2}] = 3; w[{1, 3}] = 3; w[{1, 4}] = 3;
        auto g = make_graph(5, w);
        auto plans = enumerate_subgraphs(g, EnumerationMode::SemanticLook);
        REQUIRE(plans.size() == 6);
        CHECK(plans[0].cut == std::vector<std::size_t>{0, 1});
        CHECK(plans[1].cut == std::vector<std::size_t>{0, 2});
        CHECK(plans[5].cut == std::vector<std::size_t>{2, 3});
        // heavy arcs (indices 4,5,6) appear in no cut
        for (const auto& p : plans)
            for (std::size_t arc : p.cut) CHECK(arc < 4);
    }
    SUBCASE("nl=2: 2 plans") {
        auto g = make_graph(3, {{{0, 1}, 2}, {{0, 2}, 2}, {{1, 2}, 5}});
        CHECK(enumerate_subgraphs(g, EnumerationMode::SemanticLook).size() == 2);
    }
    SUBCASE("degenerate guard: single arc yields one empty-cut plan") {
        auto g = make_graph(2, {{{0, 1}, 4}});
        auto plans = enumerate_subgraphs(g, EnumerationMode::SemanticLook);
        REQUIRE(plans.size() == 1);
        CHECK(plans[0].cut.empty());
        auto baseline = enumerate_subgraphs(g, EnumerationMode::OntoLookBaseline);
        REQUIRE(baseline.size() == 1);
        CHECK(baseline[0].cut.empty());
    }
}

TEST_CASE("count_subgraphs matches the closed form") {
    CHECK(count_subgraphs(EnumerationMode::OntoLookBaseline, 25, 10) == 5200300);
    CHECK(count_subgraphs(EnumerationMode::SemanticLook, 25, 10) == 252);
    CHECK(count_subgraphs(EnumerationMode::OntoLookBaseline, 18, 6) == 48620);
    CHECK(count_subgraphs(EnumerationMode::SemanticLook, 18, 6) == 20);
    CHECK(count_subgraphs(EnumerationMode::OntoLookBaseline, 9, 3) == 126);
    CHECK(count_subgraphs(EnumerationMode::SemanticLook, 9, 6) == 20);
    CHECK(binomial(64, 32) == 1832624140942590534ULL);
    CHECK_THROWS_AS(count_subgraphs(EnumerationMode::SemanticLook, 3, 5), InvalidArgs);
}

TEST_CASE("random graphs: enumeration agrees with the count") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n_terms = 2 + rng() % 4;
        std::map<std::pair<std::size_t, std::size_t>, uint32_t> w;
        for (std::size_t i = 0; i < n_terms; ++i)
            for (std::size_t j = i + 1; j < n_terms; ++j) w[{i, j}] = rng() % 4;
        OntologyGraph g = make_graph(n_terms, w);
        if (g.arcs.empty()) continue;
        auto a = prune_analysis(g);
        for (auto mode : {EnumerationMode::SemanticLook, EnumerationMode::OntoLookBaseline}) {
            auto plans = enumerate_subgraphs(g, mode);
            CHECK(plans.size() == count_subgraphs(mode, g.arc_count(), a.nl));
            std::size_t expected_cut = mode == EnumerationMode::SemanticLook
                                           ? a.nc
                                           : (g.arc_count() + 1) / 2;
            for (const auto& p : plans) {
                if (p.cut.empty() && expected_cut == g.arc_count()) continue;  // guard
                CHECK(p.cut.size() == expected_cut);
                if (mode == EnumerationMode::SemanticLook)
                    for (std::size_t arc : p.cut)
                        CHECK(std::find(a.least_arcs.begin(), a.least_arcs.end(), arc) !=
                              a.least_arcs.end());
            }
        }
    }
}
