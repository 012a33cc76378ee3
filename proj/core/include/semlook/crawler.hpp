#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semlook/ontobase.hpp"

namespace semlook {

struct CorpusSource {
    enum class Kind { Directory, HttpBase };
    Kind kind = Kind::Directory;
    std::string root;
    // Explicit page refs. Required for HttpBase; optional for Directory
    // (defaults to a recursive *.html scan in sorted path order).
    std::optional<std::vector<std::string>> page_list;
};

struct CrawlReport {
    uint64_t pages_visited = 0;
    uint64_t annotation_docs_parsed = 0;
    uint64_t ontology_triplets = 0;  // store insertions that returned true
    uint64_t rdf_triplets = 0;       // store insertions that returned true
    std::vector<std::pair<std::string, std::string>> warnings;  // (url, message)
    double elapsed_ms = 0.0;
};

struct CrawlConfig {
    uint64_t lambda = 1;  // minimum per-page predicate support; 1 = keep all
};

// Fetch `ref` relative to `base_ref` (a page ref relative to source.root),
// staying inside the source. Throws FetchError.
std::string fetch(const std::string& ref, const CorpusSource& source,
                  const std::string& base_ref = "");

CrawlReport crawl(const CorpusSource& source, Ontobase& store, const CrawlConfig& config = {});

}  // namespace semlook
