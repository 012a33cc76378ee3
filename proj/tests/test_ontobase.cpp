#include <doctest.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <random>

#include "semlook/ontobase.hpp"

using namespace semlook;
namespace fs = std::filesystem;

namespace {

// Hotel/City fixture used throughout.
struct Fixture {
    Ontobase store;
    SymbolId hotel, city, located_in, ashoka, bangalore;

    Fixture() {
        hotel = store.intern("Hotel");
        city = store.intern("City");
        located_in = store.intern("locatedIn");
        ashoka = store.intern("ashoka");
        bangalore = store.intern("bangalore");
        store.put_ontology_triplet({hotel, located_in, city, PropertyKind::ObjectProperty, "o.xml"});
    }

    RdfTriplet triplet(const std::string& page = "p1.html") const {
        return {ashoka, located_in, bangalore, page, hotel, city};
    }
};

fs::path temp_file(const std::string& name) {
    auto p = fs::temp_directory_path() / ("semlook_test_" + name);
    fs::remove(p);
    return p;
}

}  // namespace

TEST_CASE("intern is case-insensitive and dense") {
    Ontobase store;
    CHECK(store.intern("Hotel").value == 0);
    CHECK(store.intern("hotel").value == 0);
    CHECK(store.intern("  HOTEL  ").value == 0);
    CHECK(store.intern("City").value == 1);
    CHECK_THROWS_AS(store.intern(""), InvalidName);
    CHECK_THROWS_AS(store.intern("   "), InvalidName);
}

TEST_CASE("put_rdf_triplet maps to the ontology and is idempotent") {
    Fixture f;
    CHECK(f.store.put_rdf_triplet(f.triplet()));
    CHECK_FALSE(f.store.put_rdf_triplet(f.triplet()));
    CHECK(f.store.rdf_triplets().size() == 1);

    SymbolId unknown = f.store.intern("unrelatedPredicate");
    RdfTriplet bad = f.triplet();
    bad.predicate = unknown;
    CHECK_THROWS_AS(f.store.put_rdf_triplet(bad), DanglingOntologyRef);
}

TEST_CASE("relations_between is symmetric, sorted, and empty for unknown pairs") {
    Fixture f;
    SymbolId owns = f.store.intern("aaOwns");
    f.store.put_ontology_triplet({f.city, owns, f.hotel, PropertyKind::ObjectProperty, "o.xml"});

    auto forward = f.store.relations_between(f.hotel, f.city);
    auto backward = f.store.relations_between(f.city, f.hotel);
    REQUIRE(forward.size() == 2);
    CHECK(forward == backward);
    CHECK(f.store.text(forward[0]) == "aaowns");  // sorted by predicate text
    CHECK(f.store.text(forward[1]) == "locatedin");
    CHECK(f.store.relations_between(f.hotel, f.hotel).empty());
}

TEST_CASE("pages_matching is bidirectional with set semantics") {
    Fixture f;
    f.store.put_rdf_triplet(f.triplet("p1.html"));
    f.store.put_rdf_triplet(f.triplet("p2.html"));

    auto urls = f.store.pages_matching(f.ashoka, f.located_in, f.bangalore);
    CHECK(urls == std::set<std::string>{"p1.html", "p2.html"});
    CHECK(f.store.pages_matching(f.bangalore, f.located_in, f.ashoka) == urls);
    CHECK(f.store.pages_matching(f.store.intern("nobody"), f.located_in, f.bangalore).empty());
}

TEST_CASE("concept_of_instance handles declared, absent, and conflicting cases") {
    Fixture f;
    f.store.declare_instance(f.ashoka, f.hotel);
    CHECK(f.store.concept_of_instance(f.ashoka) == f.hotel);
    CHECK_FALSE(f.store.concept_of_instance(f.bangalore).has_value());

    f.store.declare_instance(f.ashoka, f.store.intern("Monument"));
    CHECK_THROWS_AS(f.store.concept_of_instance(f.ashoka), AmbiguousInstance);
}

TEST_CASE("predicate_frequency normalizes per page") {
    Fixture f;
    SymbolId near = f.store.intern("near");
    f.store.put_ontology_triplet({f.hotel, near, f.city, PropertyKind::ObjectProperty, "o.xml"});
    SymbolId leela = f.store.intern("leela");
    SymbolId mysore = f.store.intern("mysore");
    f.store.put_rdf_triplet({f.ashoka, f.located_in, f.bangalore, "p1.html", f.hotel, f.city});
    f.store.put_rdf_triplet({leela, f.located_in, mysore, "p1.html", f.hotel, f.city});
    f.store.put_rdf_triplet({f.ashoka, near, mysore, "p1.html", f.hotel, f.city});
    f.store.put_rdf_triplet({leela, near, f.bangalore, "p1.html", f.hotel, f.city});
    f.store.put_page({"p1.html", {}, {}, 0});

    CHECK(f.store.predicate_frequency(f.located_in, "p1.html") == doctest::Approx(0.5));
    CHECK(f.store.predicate_frequency(f.store.intern("absent"), "p1.html") == 0.0);
    CHECK_THROWS_AS(f.store.predicate_frequency(near, "nope.html"), UnknownPage);

    double sum = 0;
    for (const auto& s : f.store.predicate_stats("p1.html", 1)) sum += s.frequency;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    // single-triplet page
    f.store.put_rdf_triplet({f.ashoka, f.located_in, f.bangalore, "p2.html", f.hotel, f.city});
    f.store.put_page({"p2.html", {}, {}, 0});
    CHECK(f.store.predicate_frequency(f.located_in, "p2.html") == 1.0);
}

TEST_CASE("persist/load round-trip answers queries identically") {
    auto path = temp_file("roundtrip.db");

    SUBCASE("empty store has header only") {
        Ontobase store;
        CHECK(store.persist(path) == 0);
        std::ifstream in(path);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "{\"semlook_store\":1}");
        CHECK_FALSE(std::getline(in, line));
        Ontobase loaded = Ontobase::load(path);
        CHECK(loaded.rdf_triplets().empty());
    }

    SUBCASE("populated store") {
        Fixture f;
        f.store.put_rdf_triplet(f.triplet("p1.html"));
        f.store.declare_instance(f.ashoka, f.hotel);
        f.store.put_page({"p1.html", {f.ashoka, f.bangalore}, {f.hotel, f.city}, 42});
        f.store.persist(path);

        Ontobase loaded = Ontobase::load(path);
        CHECK(loaded.ontology_triplets().size() == 1);
        CHECK(loaded.rdf_triplets().size() == 1);
        CHECK(loaded.pages().at("p1.html").content_digest == 42);
        auto rels = loaded.relations_between(*loaded.lookup("hotel"), *loaded.lookup("city"));
        REQUIRE(rels.size() == 1);
        CHECK(loaded.text(rels[0]) == "locatedin");
        CHECK(loaded.pages_matching(*loaded.lookup("ashoka"), rels[0],
                                    *loaded.lookup("bangalore")) ==
              std::set<std::string>{"p1.html"});
    }

    SUBCASE("truncated file is rejected with a line number") {
        Fixture f;
        f.store.put_rdf_triplet(f.triplet());
        f.store.persist(path);
        std::ifstream in(path);
        std::string contents((std::istreambuf_iterator<char>(in)), {});
        in.close();
        std::ofstream out(path, std::ios::trunc);
        out << contents.substr(0, contents.size() - 10);
        out.close();
        CHECK_THROWS_AS(Ontobase::load(path), CorruptStore);
    }

    SUBCASE("blank line inside the store is rejected") {
        std::ofstream out(path, std::ios::trunc);
        out << "{\"semlook_store\":1}\n\n{\"kind\":\"instance\",\"name\":\"a\",\"concept\":\"b\"}\n";
        out.close();
        CHECK_THROWS_AS(Ontobase::load(path), CorruptStore);
    }

    SUBCASE("trailing blank lines are tolerated") {
        Ontobase store;
        store.persist(path);
        std::ofstream out(path, std::ios::app);
        out << "\n\n";
        out.close();
        CHECK_NOTHROW(Ontobase::load(path));
    }
    fs::remove(path);
}

TEST_CASE("insert-order independence: permutations persist byte-identically") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        // Random triplet batch over a small vocabulary.
        std::vector<std::array<int, 3>> onto;
        for (int i = 0; i < 6; ++i)
            onto.push_back({static_cast<int>(rng() % 4), static_cast<int>(rng() % 3),
                            static_cast<int>(rng() % 4)});

        auto build = [&](const std::vector<std::size_t>& order) {
            Ontobase s;
            for (std::size_t idx : order) {
                auto [d, p, r] = onto[idx];
                s.put_ontology_triplet({s.intern("c" + std::to_string(d)),
                                        s.intern("p" + std::to_string(p)),
                                        s.intern("c" + std::to_string(r)),
                                        PropertyKind::ObjectProperty, "o.xml"});
            }
            return s;
        };
        std::vector<std::size_t> order(onto.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        auto a_path = temp_file("perm_a.db");
        auto b_path = temp_file("perm_b.db");
        build(order).persist(a_path);
        std::shuffle(order.begin(), order.end(), rng);
        build(order).persist(b_path);

        std::ifstream fa(a_path), fb(b_path);
        std::string sa((std::istreambuf_iterator<char>(fa)), {});
        std::string sb((std::istreambuf_iterator<char>(fb)), {});
        CHECK(sa == sb);
        fs::remove(a_path);
        fs::remove(b_path);
    }
}
