#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "semlook/symbols.hpp"

namespace semlook {

enum class PropertyKind { ObjectProperty, DatatypeProperty, FunctionalProperty };

const char* to_string(PropertyKind k);
std::optional<PropertyKind> property_kind_from_string(std::string_view s);

// Schema-level triplet: (domain concept, predicate, range concept).
struct OntologyTriplet {
    SymbolId domain;
    SymbolId predicate;
    SymbolId range;
    PropertyKind kind = PropertyKind::ObjectProperty;
    std::string source_url;

    auto key() const { return std::tie(domain.value, predicate.value, range.value, kind, source_url); }
    friend bool operator==(const OntologyTriplet& a, const OntologyTriplet& b) { return a.key() == b.key(); }
    friend bool operator<(const OntologyTriplet& a, const OntologyTriplet& b) { return a.key() < b.key(); }
};

// Instance-level triplet bound to the page that carried it, with resolved concepts.
struct RdfTriplet {
    SymbolId subject;
    SymbolId predicate;
    SymbolId object;
    std::string page_url;
    SymbolId subject_concept;
    SymbolId object_concept;

    auto key() const {
        return std::tie(subject.value, predicate.value, object.value, page_url,
                        subject_concept.value, object_concept.value);
    }
    friend bool operator==(const RdfTriplet& a, const RdfTriplet& b) { return a.key() == b.key(); }
    friend bool operator<(const RdfTriplet& a, const RdfTriplet& b) { return a.key() < b.key(); }
};

struct PageRecord {
    std::string url;
    std::set<SymbolId> keywords;  // subjects/objects of the page's RDF triplets
    std::set<SymbolId> concepts;  // their resolved concepts
    uint64_t content_digest = 0;
};

struct PredicateStats {
    SymbolId predicate;
    std::string page_url;
    uint64_t support = 0;
    double frequency = 0.0;
    uint64_t lambda = 1;
};

// Knowledge base of pages, ontology triplets and RDF triplets with the
// indexes the query engine needs. Single-writer, multi-reader.
class Ontobase {
public:
    Ontobase() = default;
    Ontobase(Ontobase&& other) noexcept;
    Ontobase& operator=(Ontobase&& other) noexcept;

    SymbolId intern(std::string_view name);
    std::optional<SymbolId> lookup(std::string_view name) const;
    const std::string& text(SymbolId id) const;

    bool put_ontology_triplet(const OntologyTriplet& t);

    // Requires (subject_concept, predicate, object_concept) or its reverse to
    // exist as an ontology triplet; throws DanglingOntologyRef otherwise.
    // Returns false on duplicate (set semantics).
    bool put_rdf_triplet(const RdfTriplet& t);

    // Conflicting declarations are recorded and surface as AmbiguousInstance
    // on lookup.
    void declare_instance(SymbolId instance, SymbolId concept_id);

    void put_page(PageRecord page);

    // Every predicate p with (c_i, p, c_j) or (c_j, p, c_i) in the ontology,
    // deduplicated, sorted by predicate text. Symmetric in its arguments.
    std::vector<SymbolId> relations_between(SymbolId c_i, SymbolId c_j) const;

    // Pages holding (subject, predicate, object) or (object, predicate, subject).
    std::set<std::string> pages_matching(SymbolId subject, SymbolId predicate, SymbolId object) const;

    std::optional<SymbolId> concept_of_instance(SymbolId instance) const;

    double predicate_frequency(SymbolId predicate, const std::string& page_url) const;

    std::vector<PredicateStats> predicate_stats(const std::string& page_url, uint64_t lambda) const;

    std::size_t persist(const std::filesystem::path& path) const;
    static Ontobase load(const std::filesystem::path& path);

    const std::vector<OntologyTriplet>& ontology_triplets() const { return onto_; }
    const std::vector<RdfTriplet>& rdf_triplets() const { return rdf_; }
    const std::map<std::string, PageRecord>& pages() const { return pages_; }
    const std::map<SymbolId, std::set<SymbolId>>& instance_declarations() const { return instance_concepts_; }

private:
    SymbolTable symbols_;
    std::vector<OntologyTriplet> onto_;
    std::vector<RdfTriplet> rdf_;
    std::set<std::tuple<uint32_t, uint32_t, uint32_t, PropertyKind, std::string>> onto_keys_;
    std::set<std::tuple<uint32_t, uint32_t, uint32_t, std::string, uint32_t, uint32_t>> rdf_keys_;
    std::map<std::string, PageRecord> pages_;
    std::map<SymbolId, std::set<SymbolId>> instance_concepts_;

    // (min concept, max concept) -> predicates with an ontology triplet in
    // either orientation
    std::map<std::pair<uint32_t, uint32_t>, std::set<uint32_t>> pair_relations_;
    // (min instance, predicate, max instance) -> page urls
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, std::set<std::string>> pattern_urls_;
    // page url -> predicate -> occurrence count; page url -> total
    std::map<std::string, std::map<uint32_t, uint64_t>> page_pred_counts_;
    std::map<std::string, uint64_t> page_totals_;

    mutable std::shared_mutex mutex_;
};

}  // namespace semlook
