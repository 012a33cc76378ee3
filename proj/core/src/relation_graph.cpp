#include "semlook/relation_graph.hpp"

#include <algorithm>

#include "semlook/errors.hpp"

namespace semlook {

OntologyGraph build_ontology_graph(const std::vector<QueryTerm>& terms, const Ontobase& store) {
    if (terms.size() < 2) throw TooFewTerms("a query needs at least 2 terms");
    OntologyGraph g;
    g.terms = terms;
    std::size_t n = terms.size();
    g.weights.assign(n, std::vector<std::optional<uint32_t>>(n, std::nullopt));
    for (std::size_t i = 0; i < n; ++i) g.weights[i][i] = 0;

    bool any_present = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto rels = store.relations_between(terms[i].concept_id, terms[j].concept_id);
            if (rels.empty()) continue;
            g.weights[i][j] = g.weights[j][i] = static_cast<uint32_t>(rels.size());
            g.relations[{i, j}] = std::move(rels);
            g.arcs.emplace_back(i, j);
            any_present = true;
        }
    }
    if (!any_present)
        throw NoRelationalContext("no relations between any pair of query concepts");
    return g;
}

PruneAnalysis prune_analysis(const OntologyGraph& g) {
    if (g.arcs.empty()) throw NoRelationalContext("graph has no present arcs");
    PruneAnalysis a;
    a.lra = UINT32_MAX;
    for (const auto& [i, j] : g.arcs) a.lra = std::min(a.lra, *g.weights[i][j]);
    for (std::size_t idx = 0; idx < g.arcs.size(); ++idx) {
        const auto& [i, j] = g.arcs[idx];
        if (*g.weights[i][j] == a.lra) a.least_arcs.push_back(idx);
    }
    a.nl = a.least_arcs.size();
    a.nc = (a.nl + 1) / 2;
    return a;
}

namespace {

// Lexicographic k-subsets of `pool` (which is already sorted ascending).
std::vector<SubgraphPlan> k_subsets(const std::vector<std::size_t>& pool, std::size_t k) {
    std::vector<SubgraphPlan> plans;
    std::size_t n = pool.size();
    if (k > n) return plans;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        SubgraphPlan p;
        p.cut.reserve(k);
        for (std::size_t i : idx) p.cut.push_back(pool[i]);
        plans.push_back(std::move(p));
        // advance
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return plans;
        }
        if (k == 0) return plans;
    }
}

}  // namespace

std::vector<SubgraphPlan> enumerate_subgraphs(const OntologyGraph& g, EnumerationMode mode) {
    PruneAnalysis a = prune_analysis(g);
    std::size_t n = g.arc_count();
    std::vector<std::size_t> pool;
    std::size_t cut_size;
    if (mode == EnumerationMode::SemanticLook) {
        pool = a.least_arcs;
        cut_size = a.nc;
    } else {
        pool.resize(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        cut_size = (n + 1) / 2;
    }
    // Pruning exists to shrink the search space, not to erase the query.
    if (n == cut_size) return {SubgraphPlan{}};
    return k_subsets(pool, cut_size);
}

uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 result = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > UINT64_MAX) throw InvalidArgs("binomial overflow");
    }
    return static_cast<uint64_t>(result);
}

uint64_t count_subgraphs(EnumerationMode mode, std::size_t n_arcs, std::size_t nl) {
    if (nl > n_arcs) throw InvalidArgs("nl exceeds the number of arcs");
    if (mode == EnumerationMode::SemanticLook) return binomial(nl, (nl + 1) / 2);
    return binomial(n_arcs, (n_arcs + 1) / 2);
}

}  // namespace semlook
