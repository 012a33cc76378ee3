#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "semlook/corpus.hpp"
#include "semlook/query_engine.hpp"

namespace semlook {

// Brute-force reference search: explicit enumeration of plans, arcs, pages
// and triplets, with no indexes or caching. Guarded to small instances.
std::vector<RankedResult> oracle_search(const QuerySpec& spec, const Ontobase& store);

struct BenchRowSpec {
    uint32_t arcs = 3;   // N
    uint32_t least = 2;  // nl
    CorpusParams corpus;
};

struct BenchRow {
    uint32_t keywords = 0;
    uint32_t relations_olook = 0;  // N
    uint32_t relations_slook = 0;  // nl
    uint64_t subgraphs_olook = 0;
    uint64_t subgraphs_slook = 0;
    uint64_t triplets_olook = 0;
    uint64_t triplets_slook = 0;
    double time_olook_ms = 0.0;
    double time_slook_ms = 0.0;
};

struct BenchTable {
    std::vector<BenchRow> rows;

    std::string to_csv() const;
    std::string to_markdown() const;
};

// Generates a corpus per row under `work_dir`, crawls it, and runs the same
// query in both modes. Times are the median of 5 runs after one warm-up.
BenchTable run_bench(const std::vector<BenchRowSpec>& rows,
                     const std::filesystem::path& work_dir);

}  // namespace semlook
