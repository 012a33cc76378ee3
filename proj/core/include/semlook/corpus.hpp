#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace semlook {

struct CountRange {
    uint32_t min = 1;
    uint32_t max = 1;
};

// Desired query-graph shape: among the designated query concepts, exactly
// `arcs` concept pairs share relations, `least` of them with the minimum
// weight.
struct BenchShape {
    uint32_t arcs = 3;
    uint32_t least = 2;
};

struct CorpusParams {
    uint32_t num_pages = 1;
    uint32_t num_concepts = 2;
    CountRange predicates_per_pair{1, 1};
    uint32_t instances_per_concept = 1;
    CountRange triplets_per_page{1, 1};
    uint64_t seed = 0;
    // Exact totals; when set, the base distribution is adjusted to hit them.
    std::optional<uint64_t> total_ontology_triplets;
    std::optional<uint64_t> total_rdf_triplets;
    std::optional<BenchShape> shape;
};

struct CorpusManifest {
    std::vector<std::string> pages;  // page refs relative to the corpus root
    uint64_t expected_ontology_triplets = 0;
    uint64_t expected_rdf_triplets = 0;
    // A query guaranteed to have relational context on this corpus.
    std::vector<std::string> query_keywords;
    std::vector<std::string> query_concepts;
};

// Emit HTML pages plus ontology/RDF annotation documents under `out`,
// byte-identical for equal params. Writes manifest.json alongside.
CorpusManifest generate_corpus(const CorpusParams& params, const std::filesystem::path& out);

CorpusManifest load_manifest(const std::filesystem::path& corpus_dir);

}  // namespace semlook
