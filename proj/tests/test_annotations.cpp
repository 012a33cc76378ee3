#include <doctest.h>

#include <algorithm>
#include <random>

#include "semlook/annotations.hpp"

using namespace semlook;
using namespace semlook::annotations;

TEST_CASE("extract_annotation_links matches only rdf+xml links, in order") {
    auto links = extract_annotation_links(
        "<html><head>"
        "<link rel=\"stylesheet\" href=\"s.css\">"
        "<link type=\"application/rdf+xml\" href=\"a.rdf\">"
        "<link type=\"application/rdf+xml;\" href=\"b.rdf\"/>"
        "</head></html>");
    REQUIRE(links.size() == 2);
    CHECK(links[0] == AnnotationLink{"a.rdf", "application/rdf+xml"});
    CHECK(links[1] == AnnotationLink{"b.rdf", "application/rdf+xml"});

    CHECK(extract_annotation_links("<link rel=stylesheet href=s.css>").empty());
    // tolerant of broken markup
    CHECK(extract_annotation_links("<html><link type=\"application/rdf+xml\" href=\"x.rdf\"")
              .empty());
    auto unquoted = extract_annotation_links("<LINK TYPE=application/rdf+xml HREF=up.rdf>");
    REQUIRE(unquoted.size() == 1);
    CHECK(unquoted[0].href == "up.rdf");
}

TEST_CASE("classify_document by root tag or property elements") {
    CHECK(classify_document("<ONTOLOGY></ONTOLOGY>") == DocumentKind::Ontology);
    CHECK(classify_document("<ontology/>") == DocumentKind::Ontology);
    CHECK(classify_document("<owl:Stuff><ObjectProperty rdf:ID=\"x\"/></owl:Stuff>") ==
          DocumentKind::Ontology);
    CHECK(classify_document("<rdf:RDF><rdf:Description rdf:about=\"a\"/></rdf:RDF>") ==
          DocumentKind::Rdf);
    CHECK_THROWS_AS(classify_document("<rdf:RDF><rdf:Desc"), MalformedDocument);
}

static const char* kOntologyDoc =
    "<?xml version=\"1.0\"?>\n"
    "<ONTOLOGY>"
    "  <ObjectProperty rdf:ID=\"locatedIn\">"
    "    <domain rdfs:resource=\"#Hotel\"/>"
    "    <range rdfs:resource=\"#City\"/>"
    "  </ObjectProperty>"
    "  <DatatypeProperty rdf:ID=\"hasName\">"
    "    <domain rdfs:resource=\"#Hotel\"/>"
    "    <range rdfs:resource=\"#Literal\"/>"
    "  </DatatypeProperty>"
    "  <ObjectProperty>"
    "    <domain rdfs:resource=\"#X\"/>"
    "    <range rdfs:resource=\"#Y\"/>"
    "  </ObjectProperty>"
    "  <ObjectProperty rdf:ID=\"broken\">"
    "    <domain rdfs:resource=\"#Hotel\"/>"
    "  </ObjectProperty>"
    "</ONTOLOGY>";

TEST_CASE("parse_ontology_document maps property elements to triplets") {
    auto doc = parse_ontology_document(kOntologyDoc, "o.xml", "p.html");
    REQUIRE(doc.triplets.size() == 2);
    CHECK(doc.triplets[0] ==
          RawOntologyTriplet{"hotel", "locatedin", "city", PropertyKind::ObjectProperty});
    CHECK(doc.triplets[1] ==
          RawOntologyTriplet{"hotel", "hasname", "literal", PropertyKind::DatatypeProperty});
    // one skip for the missing rdf:ID, one for the missing range
    CHECK(doc.warnings.size() == 2);
    CHECK(doc.source_url == "o.xml");
}

static const char* kRdfDoc =
    "<?xml version=\"1.0\"?>\n"
    "<rdf:RDF>"
    "  <instances>"
    "    <instance name=\"Ashoka\" concept=\"Hotel\"/>"
    "    <instance name=\"Bangalore\" concept=\"City\"/>"
    "    <instance name=\"Lalbagh\" concept=\"Garden\"/>"
    "  </instances>"
    "  <rdf:Description rdf:about=\"Ashoka\">"
    "    <locatedIn rdf:resource=\"Bangalore\"/>"
    "    <near rdf:resource=\"Lalbagh\"/>"
    "    <near rdf:resource=\"#Bangalore\"/>"
    "  </rdf:Description>"
    "  <rdf:Description rdf:about=\"Lalbagh\">"
    "    <within rdf:resource=\"Mysore\"/>"
    "  </rdf:Description>"
    "</rdf:RDF>";

TEST_CASE("parse_rdf_document maps descriptions to triplets via the instance map") {
    auto doc = parse_rdf_document(kRdfDoc, "r.rdf", "p.html");
    REQUIRE(doc.triplets.size() == 3);
    CHECK(doc.triplets[0] == RawRdfTriplet{"ashoka", "locatedin", "bangalore"});
    CHECK(doc.triplets[1] == RawRdfTriplet{"ashoka", "near", "lalbagh"});
    CHECK(doc.triplets[2] == RawRdfTriplet{"ashoka", "near", "bangalore"});
    CHECK(doc.instance_map.at("ashoka") == "hotel");
    // mysore is undeclared: triplet dropped with a warning
    REQUIRE(doc.warnings.size() == 1);
    CHECK(doc.warnings[0].find("mysore") != std::string::npos);
}

TEST_CASE("emit/re-parse round-trip preserves the triplet multiset") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        ParsedOntology onto;
        onto.source_url = "o.xml";
        int n = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            PropertyKind kind = static_cast<PropertyKind>(rng() % 3);
            onto.triplets.push_back({"c" + std::to_string(rng() % 5),
                                     "p" + std::to_string(rng() % 6),
                                     "c" + std::to_string(rng() % 5), kind});
        }
        auto onto2 = parse_ontology_document(emit_ontology_xml(onto), "o.xml", "p.html");
        auto a = onto.triplets;
        auto b = onto2.triplets;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);

        ParsedRdf rdf;
        rdf.source_url = "r.rdf";
        for (int i = 0; i < 10; ++i)
            rdf.instance_map["k" + std::to_string(i)] = "c" + std::to_string(i % 5);
        int m = 1 + static_cast<int>(rng() % 10);
        std::set<RawRdfTriplet> distinct;
        for (int i = 0; i < m; ++i)
            distinct.insert({"k" + std::to_string(rng() % 10), "p" + std::to_string(rng() % 6),
                             "k" + std::to_string(rng() % 10)});
        rdf.triplets.assign(distinct.begin(), distinct.end());
        auto rdf2 = parse_rdf_document(emit_rdf_xml(rdf), "r.rdf", "p.html");
        auto c = rdf.triplets;
        auto d = rdf2.triplets;
        std::sort(c.begin(), c.end());
        std::sort(d.begin(), d.end());
        CHECK(c == d);
        CHECK(rdf2.instance_map == rdf.instance_map);
    }
}
