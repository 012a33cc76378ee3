#include "semlook/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "semlook/crawler.hpp"
#include "semlook/errors.hpp"

namespace semlook {

namespace {

// The oracle rebuilds everything from the raw triplet lists; it shares only
// domain types with the engine it checks.

struct OracleArc {
    std::size_t i, j;
    std::vector<SymbolId> predicates;  // sorted by text
};

bool pair_matches(SymbolId a1, SymbolId a2, SymbolId b1, SymbolId b2) {
    return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
}

void combos(std::size_t pool, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t v = start; v < pool; ++v) {
        cur.push_back(v);
        combos(pool, k, v + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<RankedResult> oracle_search(const QuerySpec& spec, const Ontobase& store) {
    const auto& terms = spec.terms;
    if (terms.size() < 2) throw TooFewTerms("a query needs at least 2 terms");

    std::vector<OracleArc> arcs;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            std::set<uint32_t> preds;
            for (const auto& ot : store.ontology_triplets()) {
                if (pair_matches(ot.domain, ot.range, terms[i].concept_id, terms[j].concept_id))
                    preds.insert(ot.predicate.value);
            }
            if (preds.empty()) continue;
            OracleArc arc{i, j, {}};
            for (uint32_t p : preds) arc.predicates.push_back(SymbolId{p});
            std::sort(arc.predicates.begin(), arc.predicates.end(),
                      [&](SymbolId a, SymbolId b) { return store.text(a) < store.text(b); });
            arcs.push_back(std::move(arc));
        }
    }
    if (arcs.empty()) throw NoRelationalContext("no relations between any pair of query concepts");
    if (arcs.size() > 16) throw TooLarge("oracle guard: more than 16 arcs");

    std::size_t lra = SIZE_MAX;
    for (const auto& a : arcs) lra = std::min(lra, a.predicates.size());
    std::vector<std::size_t> least;
    for (std::size_t idx = 0; idx < arcs.size(); ++idx)
        if (arcs[idx].predicates.size() == lra) least.push_back(idx);
    std::size_t nc = (least.size() + 1) / 2;

    std::vector<std::vector<std::size_t>> cuts;
    std::vector<std::size_t> cur;
    if (spec.mode == EnumerationMode::SemanticLook) {
        if (nc == arcs.size()) {
            cuts.push_back({});
        } else {
            std::vector<std::vector<std::size_t>> pool_combos;
            combos(least.size(), nc, 0, cur, pool_combos);
            for (const auto& c : pool_combos) {
                std::vector<std::size_t> cut;
                for (std::size_t v : c) cut.push_back(least[v]);
                cuts.push_back(std::move(cut));
            }
        }
    } else {
        std::size_t cut_size = (arcs.size() + 1) / 2;
        if (cut_size == arcs.size())
            cuts.push_back({});
        else
            combos(arcs.size(), cut_size, 0, cur, cuts);
    }

    auto matching_pages = [&](const OracleArc& arc, SymbolId r) {
        std::set<std::string> pages;
        for (const auto& t : store.rdf_triplets()) {
            if (t.predicate == r &&
                pair_matches(t.subject, t.object, terms[arc.i].keyword, terms[arc.j].keyword))
                pages.insert(t.page_url);
        }
        return pages;
    };

    std::set<std::string> urls;
    for (const auto& cut : cuts) {
        std::set<std::string> plan_urls;
        bool first = true;
        for (std::size_t idx = 0; idx < arcs.size(); ++idx) {
            if (std::find(cut.begin(), cut.end(), idx) != cut.end()) continue;
            std::set<std::string> edge;
            for (SymbolId r : arcs[idx].predicates) {
                auto pages = matching_pages(arcs[idx], r);
                edge.insert(pages.begin(), pages.end());
            }
            if (first) {
                plan_urls = std::move(edge);
                first = false;
            } else {
                std::set<std::string> next;
                for (const auto& u : plan_urls)
                    if (edge.count(u)) next.insert(u);
                plan_urls = std::move(next);
            }
        }
        urls.insert(plan_urls.begin(), plan_urls.end());
    }

    // Score: distinct orientation-free triplet patterns the page matches,
    // over all arcs and predicates of the full graph.
    std::map<std::string, uint64_t> scores;
    for (const auto& url : urls) scores[url] = 0;
    std::set<std::tuple<uint32_t, uint32_t, uint32_t>> seen;
    for (const auto& arc : arcs) {
        SymbolId ki = terms[arc.i].keyword;
        SymbolId kj = terms[arc.j].keyword;
        for (SymbolId r : arc.predicates) {
            if (!seen.insert({std::min(ki.value, kj.value), r.value,
                              std::max(ki.value, kj.value)}).second)
                continue;
            for (const auto& url : matching_pages(arc, r))
                if (scores.count(url)) scores[url] += 1;
        }
    }

    std::vector<RankedResult> out;
    for (const auto& [url, score] : scores) out.push_back({url, score});
    std::sort(out.begin(), out.end(), [](const RankedResult& a, const RankedResult& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.url < b.url;
    });
    return out;
}

namespace {

double median5(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

BenchTable run_bench(const std::vector<BenchRowSpec>& rows,
                     const std::filesystem::path& work_dir) {
    BenchTable table;
    std::size_t row_no = 0;
    for (const auto& row_spec : rows) {
        CorpusParams params = row_spec.corpus;
        params.shape = BenchShape{row_spec.arcs, row_spec.least};
        auto corpus_dir = work_dir / ("row" + std::to_string(row_no++));
        CorpusManifest manifest = generate_corpus(params, corpus_dir);

        Ontobase store;
        CorpusSource source{CorpusSource::Kind::Directory, corpus_dir.string(), std::nullopt};
        crawl(source, store);

        QuerySpec query;
        for (std::size_t i = 0; i < manifest.query_keywords.size(); ++i) {
            query.terms.push_back({store.intern(manifest.query_keywords[i]),
                                   store.intern(manifest.query_concepts[i])});
        }

        BenchRow row;
        row.keywords = static_cast<uint32_t>(query.terms.size());
        row.relations_olook = row_spec.arcs;
        row.relations_slook = row_spec.least;
        row.subgraphs_olook =
            count_subgraphs(EnumerationMode::OntoLookBaseline, row_spec.arcs, row_spec.least);
        row.subgraphs_slook =
            count_subgraphs(EnumerationMode::SemanticLook, row_spec.arcs, row_spec.least);

        // One mode at a time, warm-up then median of 5.
        for (EnumerationMode mode :
             {EnumerationMode::OntoLookBaseline, EnumerationMode::SemanticLook}) {
            query.mode = mode;
            search(query, store);  // warm-up
            std::vector<double> times;
            uint64_t triplets = 0;
            for (int run = 0; run < 5; ++run) {
                auto [results, report] = search(query, store);
                times.push_back(report.elapsed_ms);
                triplets = report.triplet_queries_generated;
            }
            if (mode == EnumerationMode::OntoLookBaseline) {
                row.triplets_olook = triplets;
                row.time_olook_ms = median5(times);
            } else {
                row.triplets_slook = triplets;
                row.time_slook_ms = median5(times);
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string BenchTable::to_csv() const {
    std::ostringstream out;
    out << "keywords,N,nl,subgraphs_olook,subgraphs_slook,triplets_olook,triplets_slook,"
           "ms_olook,ms_slook\n";
    for (const auto& r : rows) {
        out << r.keywords << ',' << r.relations_olook << ',' << r.relations_slook << ','
            << r.subgraphs_olook << ',' << r.subgraphs_slook << ',' << r.triplets_olook << ','
            << r.triplets_slook << ',' << r.time_olook_ms << ',' << r.time_slook_ms << '\n';
    }
    return out.str();
}

std::string BenchTable::to_markdown() const {
    std::ostringstream out;
    out << "| keywords | N | nl | subgraphs (OntoLook) | subgraphs (SemanticLook) | "
           "triplets (OntoLook) | triplets (SemanticLook) | ms (OntoLook) | ms (SemanticLook) |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << r.keywords << " | " << r.relations_olook << " | " << r.relations_slook
            << " | " << r.subgraphs_olook << " | " << r.subgraphs_slook << " | "
            << r.triplets_olook << " | " << r.triplets_slook << " | " << r.time_olook_ms << " | "
            << r.time_slook_ms << " |\n";
    }
    return out.str();
}

}  // namespace semlook
