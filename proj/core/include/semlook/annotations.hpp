#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semlook/errors.hpp"
#include "semlook/ontobase.hpp"

namespace semlook {
namespace annotations {

struct AnnotationLink {
    std::string href;
    std::string media_type;  // always "application/rdf+xml"

    friend bool operator==(const AnnotationLink& a, const AnnotationLink& b) {
        return a.href == b.href && a.media_type == b.media_type;
    }
};

enum class DocumentKind { Ontology, Rdf };

struct RawOntologyTriplet {
    std::string domain;
    std::string predicate;
    std::string range;
    PropertyKind kind = PropertyKind::ObjectProperty;

    auto key() const { return std::tie(domain, predicate, range, kind); }
    friend bool operator==(const RawOntologyTriplet& a, const RawOntologyTriplet& b) {
        return a.key() == b.key();
    }
    friend bool operator<(const RawOntologyTriplet& a, const RawOntologyTriplet& b) {
        return a.key() < b.key();
    }
};

struct ParsedOntology {
    std::vector<RawOntologyTriplet> triplets;
    std::string source_url;
    std::string page_url;
    std::vector<std::string> warnings;  // SkippedProperty and similar
};

struct RawRdfTriplet {
    std::string subject;
    std::string predicate;
    std::string object;

    auto key() const { return std::tie(subject, predicate, object); }
    friend bool operator==(const RawRdfTriplet& a, const RawRdfTriplet& b) {
        return a.key() == b.key();
    }
    friend bool operator<(const RawRdfTriplet& a, const RawRdfTriplet& b) {
        return a.key() < b.key();
    }
};

struct ParsedRdf {
    std::vector<RawRdfTriplet> triplets;
    std::map<std::string, std::string> instance_map;  // instance name -> concept name
    std::string source_url;
    std::string page_url;
    std::vector<std::string> warnings;
};

// Every <link> whose type attribute is application/rdf+xml (trailing ';'
// tolerated), in document order. Tolerant scan; malformed HTML is never
// rejected.
std::vector<AnnotationLink> extract_annotation_links(std::string_view page_bytes);

// Ontology if the root local-name is ONTOLOGY (case-insensitive) or any
// ObjectProperty/DatatypeProperty/FunctionalProperty element exists;
// otherwise Rdf. Throws MalformedDocument on unparseable XML.
DocumentKind classify_document(std::string_view doc_bytes);

ParsedOntology parse_ontology_document(std::string_view doc_bytes, const std::string& ourl,
                                       const std::string& wurl);

ParsedRdf parse_rdf_document(std::string_view doc_bytes, const std::string& ourl,
                             const std::string& wurl);

// Emit back to the corpus document shapes; re-parsing yields the same
// triplet multiset.
std::string emit_ontology_xml(const ParsedOntology& doc);
std::string emit_rdf_xml(const ParsedRdf& doc);

}  // namespace annotations
}  // namespace semlook
