#include <benchmark/benchmark.h>

#include <filesystem>

#include "semlook/bench.hpp"
#include "semlook/crawler.hpp"
#include "semlook/query_engine.hpp"

using namespace semlook;
namespace fs = std::filesystem;

namespace {

// Shared fixture: one generated corpus per shape, crawled once.
struct CorpusFixture {
    Ontobase store;
    QuerySpec spec;

    CorpusFixture(uint32_t arcs, uint32_t least) {
        fs::path dir =
            fs::temp_directory_path() /
            ("semlook_micro_" + std::to_string(arcs) + "_" + std::to_string(least));
        fs::remove_all(dir);
        CorpusParams params;
        params.num_pages = 24;
        params.instances_per_concept = 2;
        params.triplets_per_page = {6, 14};
        params.seed = 7;
        params.shape = BenchShape{arcs, least};
        CorpusManifest manifest = generate_corpus(params, dir);
        crawl(CorpusSource{CorpusSource::Kind::Directory, dir.string(), std::nullopt}, store);
        for (std::size_t i = 0; i < manifest.query_keywords.size(); ++i)
            spec.terms.push_back({store.intern(manifest.query_keywords[i]),
                                  store.intern(manifest.query_concepts[i])});
        fs::remove_all(dir);
    }
};

CorpusFixture& fixture(uint32_t arcs, uint32_t least) {
    static std::map<std::pair<uint32_t, uint32_t>, CorpusFixture> cache;
    auto it = cache.find({arcs, least});
    if (it == cache.end())
        it = cache.try_emplace({arcs, least}, arcs, least).first;
    return it->second;
}

void BM_CountSubgraphs(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto nl = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_subgraphs(EnumerationMode::OntoLookBaseline, n, nl));
        benchmark::DoNotOptimize(count_subgraphs(EnumerationMode::SemanticLook, n, nl));
    }
}
BENCHMARK(BM_CountSubgraphs)->Args({25, 10})->Args({18, 6})->Args({9, 3});

void BM_EnumerateSubgraphs(benchmark::State& state) {
    auto& f = fixture(static_cast<uint32_t>(state.range(0)),
                      static_cast<uint32_t>(state.range(1)));
    auto mode = state.range(2) ? EnumerationMode::OntoLookBaseline
                               : EnumerationMode::SemanticLook;
    OntologyGraph g = build_ontology_graph(f.spec.terms, f.store);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgraphs(g, mode));
}
BENCHMARK(BM_EnumerateSubgraphs)->Args({9, 3, 0})->Args({9, 3, 1})->Args({18, 6, 0});

void BM_Search(benchmark::State& state) {
    auto& f = fixture(static_cast<uint32_t>(state.range(0)),
                      static_cast<uint32_t>(state.range(1)));
    QuerySpec spec = f.spec;
    spec.mode = state.range(2) ? EnumerationMode::OntoLookBaseline
                               : EnumerationMode::SemanticLook;
    for (auto _ : state) benchmark::DoNotOptimize(search(spec, f.store));
}
BENCHMARK(BM_Search)->Args({9, 3, 0})->Args({9, 3, 1})->Args({18, 6, 0})->Args({18, 6, 1});

}  // namespace

BENCHMARK_MAIN();
