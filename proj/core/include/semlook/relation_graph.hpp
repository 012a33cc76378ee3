#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "semlook/ontobase.hpp"

namespace semlook {

struct QueryTerm {
    SymbolId keyword;
    SymbolId concept_id;
};

enum class EnumerationMode { SemanticLook, OntoLookBaseline };

// Weighted graph over the query's concepts. Edge weight = number of
// distinct predicates between a concept pair; an absent edge means no
// relation.
struct OntologyGraph {
    std::vector<QueryTerm> terms;
    // weights[i][j]: nullopt encodes "no relation"; diagonal is 0.
    std::vector<std::vector<std::optional<uint32_t>>> weights;
    // (i, j) with i < j -> predicates, sorted by predicate text.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<SymbolId>> relations;
    // Present undirected arcs in row-major order; indices into this list
    // identify arcs everywhere below.
    std::vector<std::pair<std::size_t, std::size_t>> arcs;

    std::size_t arc_count() const { return arcs.size(); }
};

struct PruneAnalysis {
    uint32_t lra = 0;                     // minimum present arc weight
    std::vector<std::size_t> least_arcs;  // arc indices at that weight, row-major
    std::size_t nl = 0;                   // |least_arcs|
    std::size_t nc = 0;                   // ceil(nl / 2)
};

// One cut-combination; the subgraph is the graph minus these arcs.
struct SubgraphPlan {
    std::vector<std::size_t> cut;  // arc indices, ascending

    friend bool operator==(const SubgraphPlan& a, const SubgraphPlan& b) { return a.cut == b.cut; }
};

// Throws TooFewTerms (< 2 terms) or NoRelationalContext (no pair of query
// concepts shares any relation).
OntologyGraph build_ontology_graph(const std::vector<QueryTerm>& terms, const Ontobase& store);

PruneAnalysis prune_analysis(const OntologyGraph& g);

// SemanticLook: all C(nl, nc) cuts of least arcs; OntoLookBaseline: all
// C(N, ceil(N/2)) cuts of any arcs. Lexicographic order of arc indices.
// If every cut would leave an edgeless graph, a single empty-cut plan is
// emitted instead.
std::vector<SubgraphPlan> enumerate_subgraphs(const OntologyGraph& g, EnumerationMode mode);

// Exact binomial count of plans: C(nl, ceil(nl/2)) or C(n_arcs, ceil(n_arcs/2)).
// Exact for n_arcs <= 64; throws InvalidArgs if nl > n_arcs.
uint64_t count_subgraphs(EnumerationMode mode, std::size_t n_arcs, std::size_t nl);

// C(n, k) with overflow-checked 128-bit intermediates.
uint64_t binomial(uint64_t n, uint64_t k);

}  // namespace semlook
