#include "semlook/query_engine.hpp"

#include <algorithm>
#include <chrono>

#include "semlook/errors.hpp"

namespace semlook {

const std::set<std::string>& TripletQueryCache::pages_for(const Ontobase& store, SymbolId subject,
                                                          SymbolId predicate, SymbolId object) {
    // Lookups are bidirectional, so the key is orientation-free.
    std::tuple<uint32_t, uint32_t, uint32_t> key{std::min(subject.value, object.value),
                                                 predicate.value,
                                                 std::max(subject.value, object.value)};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto [ins, _] = cache_.emplace(key, store.pages_matching(subject, predicate, object));
    return ins->second;
}

std::set<std::string> urls_for_subgraph(const SubgraphPlan& plan, const OntologyGraph& g,
                                        const Ontobase& store, TripletQueryCache& cache) {
    std::set<std::string> result;
    bool first = true;
    for (std::size_t idx = 0; idx < g.arc_count(); ++idx) {
        if (std::binary_search(plan.cut.begin(), plan.cut.end(), idx)) continue;
        const auto& [i, j] = g.arcs[idx];
        std::set<std::string> edge_urls;
        for (SymbolId r : g.relations.at({i, j})) {
            const auto& pages =
                cache.pages_for(store, g.terms[i].keyword, r, g.terms[j].keyword);
            edge_urls.insert(pages.begin(), pages.end());
        }
        if (first) {
            result = std::move(edge_urls);
            first = false;
        } else {
            std::set<std::string> next;
            std::set_intersection(result.begin(), result.end(), edge_urls.begin(),
                                  edge_urls.end(), std::inserter(next, next.begin()));
            result = std::move(next);
        }
        if (result.empty() && !first) return result;
    }
    return result;
}

std::vector<RankedResult> rank_results(const std::map<std::string, uint64_t>& matches) {
    std::vector<RankedResult> out;
    out.reserve(matches.size());
    for (const auto& [url, score] : matches) out.push_back({url, score});
    std::sort(out.begin(), out.end(), [](const RankedResult& a, const RankedResult& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.url < b.url;
    });
    return out;
}

std::pair<std::vector<RankedResult>, SearchReport> search(const QuerySpec& spec,
                                                          const Ontobase& store) {
    if (spec.terms.size() > 16) throw TooLarge("more than 16 query terms");
    auto t0 = std::chrono::steady_clock::now();

    OntologyGraph g = build_ontology_graph(spec.terms, store);
    std::vector<SubgraphPlan> plans = enumerate_subgraphs(g, spec.mode);

    SearchReport report;
    report.mode = spec.mode;
    report.subgraphs_processed = plans.size();

    TripletQueryCache cache;
    std::set<std::string> urls;
    for (const SubgraphPlan& plan : plans) {
        // Plans are alternative contexts; results are combined by union.
        auto plan_urls = urls_for_subgraph(plan, g, store, cache);
        urls.insert(plan_urls.begin(), plan_urls.end());
        for (std::size_t idx = 0; idx < g.arc_count(); ++idx) {
            if (std::binary_search(plan.cut.begin(), plan.cut.end(), idx)) continue;
            const auto& [i, j] = g.arcs[idx];
            report.triplet_queries_generated += g.relations.at({i, j}).size();
        }
    }
    report.triplet_queries_executed = cache.size();

    // Score: distinct matching triplets over ALL arcs of the full graph.
    std::map<std::string, uint64_t> scores;
    for (const std::string& url : urls) scores[url] = 0;
    std::set<std::tuple<uint32_t, uint32_t, uint32_t>> seen;
    for (const auto& [i, j] : g.arcs) {
        SymbolId ki = g.terms[i].keyword;
        SymbolId kj = g.terms[j].keyword;
        for (SymbolId r : g.relations.at({i, j})) {
            if (!seen.insert({std::min(ki.value, kj.value), r.value,
                              std::max(ki.value, kj.value)}).second)
                continue;
            const auto& pages = cache.pages_for(store, ki, r, kj);
            for (const std::string& url : pages) {
                auto it = scores.find(url);
                if (it != scores.end()) it->second += 1;
            }
        }
    }

    auto results = rank_results(scores);
    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return {std::move(results), report};
}

}  // namespace semlook
