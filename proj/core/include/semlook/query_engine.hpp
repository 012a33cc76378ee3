#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semlook/relation_graph.hpp"

namespace semlook {

struct QuerySpec {
    std::vector<QueryTerm> terms;
    EnumerationMode mode = EnumerationMode::SemanticLook;
};

struct RankedResult {
    std::string url;
    uint64_t score = 0;  // distinct matching RDF triplets on the page

    friend bool operator==(const RankedResult& a, const RankedResult& b) {
        return a.url == b.url && a.score == b.score;
    }
};

struct SearchReport {
    uint64_t subgraphs_processed = 0;
    uint64_t triplet_queries_generated = 0;  // with duplicates across plans
    uint64_t triplet_queries_executed = 0;   // deduplicated
    double elapsed_ms = 0.0;
    EnumerationMode mode = EnumerationMode::SemanticLook;
};

// Memoizes (instance, predicate, instance) lookups across plans; the same
// triplet query is produced by many plans.
class TripletQueryCache {
public:
    const std::set<std::string>& pages_for(const Ontobase& store, SymbolId subject,
                                           SymbolId predicate, SymbolId object);
    std::size_t size() const { return cache_.size(); }

private:
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, std::set<std::string>> cache_;
};

// URL set for one subgraph plan: per remaining arc, union over the arc's
// predicates of pages matching (k_i, r, k_j); then the intersection over
// arcs, seeded from the first arc's set.
std::set<std::string> urls_for_subgraph(const SubgraphPlan& plan, const OntologyGraph& g,
                                        const Ontobase& store, TripletQueryCache& cache);

std::vector<RankedResult> rank_results(const std::map<std::string, uint64_t>& matches);

std::pair<std::vector<RankedResult>, SearchReport> search(const QuerySpec& spec,
                                                          const Ontobase& store);

}  // namespace semlook
