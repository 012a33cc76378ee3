#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "semlook/bench.hpp"
#include "semlook/corpus.hpp"
#include "semlook/crawler.hpp"
#include "semlook/query_engine.hpp"

using namespace semlook;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string db_path_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SEMLOOK_DB")) return env;
    return {};
}

EnumerationMode parse_mode(const std::string& s) {
    if (s == "semlook") return EnumerationMode::SemanticLook;
    if (s == "ontolook") return EnumerationMode::OntoLookBaseline;
    throw CLI::ValidationError("--mode", "expected semlook or ontolook");
}

const char* mode_name(EnumerationMode m) {
    return m == EnumerationMode::SemanticLook ? "semlook" : "ontolook";
}

int cmd_crawl(const std::string& source_arg, const std::string& manifest_path,
              const std::string& db, uint64_t lambda) {
    CorpusSource source;
    if (source_arg.rfind("http://", 0) == 0 || source_arg.rfind("https://", 0) == 0) {
        source.kind = CorpusSource::Kind::HttpBase;
    } else {
        source.kind = CorpusSource::Kind::Directory;
    }
    source.root = source_arg;
    if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) throw IoError("cannot read manifest " + manifest_path);
        std::vector<std::string> pages;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) pages.push_back(line);
        source.page_list = std::move(pages);
    }
    Ontobase store;
    CrawlReport report = crawl(source, store, CrawlConfig{lambda});
    store.persist(db);
    std::cout << "pages_visited=" << report.pages_visited
              << " annotation_docs_parsed=" << report.annotation_docs_parsed
              << " ontology_triplets=" << report.ontology_triplets
              << " rdf_triplets=" << report.rdf_triplets
              << " warnings=" << report.warnings.size() << "\n";
    for (const auto& [url, msg] : report.warnings)
        std::cerr << "warning: " << url << ": " << msg << "\n";
    return 0;
}

int cmd_query(const std::string& db, const std::string& mode_str,
              const std::vector<std::string>& term_args, const std::string& report_format) {
    Ontobase store = Ontobase::load(db);
    QuerySpec spec;
    spec.mode = parse_mode(mode_str);
    for (const std::string& arg : term_args) {
        auto colon = arg.find(':');
        std::string keyword = colon == std::string::npos ? arg : arg.substr(0, colon);
        SymbolId kid = store.intern(keyword);
        SymbolId cid;
        if (colon != std::string::npos) {
            cid = store.intern(arg.substr(colon + 1));
        } else {
            auto resolved = store.concept_of_instance(kid);
            if (!resolved) throw NoRelationalContext("cannot resolve concept for '" + keyword + "'");
            cid = *resolved;
        }
        spec.terms.push_back({kid, cid});
    }

    auto [results, report] = search(spec, store);
    if (report_format == "json") {
        ordered_json j;
        j["mode"] = mode_name(report.mode);
        j["subgraphs_processed"] = report.subgraphs_processed;
        j["triplet_queries_generated"] = report.triplet_queries_generated;
        j["triplet_queries_executed"] = report.triplet_queries_executed;
        j["elapsed_ms"] = report.elapsed_ms;
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) arr.push_back({{"url", r.url}, {"score", r.score}});
        j["results"] = arr;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& r : results) std::cout << r.url << "\t" << r.score << "\n";
        std::cerr << "mode=" << mode_name(report.mode)
                  << " subgraphs_processed=" << report.subgraphs_processed
                  << " triplet_queries_generated=" << report.triplet_queries_generated
                  << " triplet_queries_executed=" << report.triplet_queries_executed
                  << " elapsed_ms=" << report.elapsed_ms << "\n";
    }
    return 0;
}

int cmd_count(const std::string& mode_str, uint64_t arcs, uint64_t least) {
    EnumerationMode mode = parse_mode(mode_str);
    std::cout << count_subgraphs(mode, arcs, least) << "\n";
    return 0;
}

int cmd_gen_corpus(const CorpusParams& params, const std::string& out_dir) {
    CorpusManifest m = generate_corpus(params, out_dir);
    std::cout << "pages=" << m.pages.size()
              << " ontology_triplets=" << m.expected_ontology_triplets
              << " rdf_triplets=" << m.expected_rdf_triplets << "\n";
    return 0;
}

int cmd_bench(const std::string& db, const std::string& rows_path, const std::string& emit) {
    std::ifstream in(rows_path);
    if (!in) throw IoError("cannot read rows config " + rows_path);
    ordered_json j = ordered_json::parse(in);
    std::vector<BenchRowSpec> rows;
    for (const auto& row : j) {
        BenchRowSpec spec;
        spec.arcs = row.at("arcs");
        spec.least = row.at("least");
        spec.corpus.num_pages = row.value("pages", 40u);
        spec.corpus.num_concepts = row.value("concepts", 1u);
        spec.corpus.instances_per_concept = row.value("instances", 2u);
        spec.corpus.triplets_per_page.min = row.value("triplets_min", 5u);
        spec.corpus.triplets_per_page.max = row.value("triplets_max", 12u);
        spec.corpus.seed = row.value("seed", 0u);
        if (row.contains("rdf_total")) spec.corpus.total_rdf_triplets = row["rdf_total"].get<uint64_t>();
        if (row.contains("onto_total"))
            spec.corpus.total_ontology_triplets = row["onto_total"].get<uint64_t>();
        rows.push_back(std::move(spec));
    }
    std::filesystem::path work = std::filesystem::path(db).parent_path() / "bench_corpora";
    BenchTable table = run_bench(rows, work);
    std::cout << (emit == "md" ? table.to_markdown() : table.to_csv());
    return 0;
}

int cmd_inspect(const std::string& db) {
    Ontobase store = Ontobase::load(db);
    std::cout << "pages=" << store.pages().size()
              << " ontology_triplets=" << store.ontology_triplets().size()
              << " rdf_triplets=" << store.rdf_triplets().size()
              << " instances=" << store.instance_declarations().size() << "\n";
    for (const auto& [url, page] : store.pages()) {
        std::cout << url << ": keywords=" << page.keywords.size()
                  << " concepts=" << page.concepts.size();
        for (const auto& s : store.predicate_stats(url, 1)) {
            std::cout << " " << store.text(s.predicate) << "=" << s.support;
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relation-based semantic search over annotated web pages"};
    app.require_subcommand(1);

    std::string db;
    std::string mode_str = "semlook";

    auto* crawl_cmd = app.add_subcommand("crawl", "Ingest a corpus into the store");
    std::string source_arg, manifest_path;
    uint64_t lambda = 1;
    crawl_cmd->add_option("--source", source_arg, "Corpus directory or HTTP base URL")->required();
    crawl_cmd->add_option("--manifest", manifest_path, "Page list, one ref per line");
    crawl_cmd->add_option("--db", db, "Store path (or SEMLOOK_DB)");
    crawl_cmd->add_option("--lambda", lambda, "Minimum per-page predicate support");

    auto* query_cmd = app.add_subcommand("query", "Run a search");
    std::vector<std::string> terms;
    std::string report_format = "text";
    query_cmd->add_option("--db", db, "Store path (or SEMLOOK_DB)");
    query_cmd->add_option("--mode", mode_str, "semlook or ontolook");
    query_cmd->add_option("-t,--term", terms, "keyword[:Concept]")->required();
    query_cmd->add_option("--report", report_format, "json or text");

    auto* count_cmd = app.add_subcommand("count", "Exact subgraph count for a graph shape");
    uint64_t arcs = 0, least = 0;
    count_cmd->add_option("--mode", mode_str, "semlook or ontolook");
    count_cmd->add_option("--arcs", arcs, "Total arcs N")->required();
    count_cmd->add_option("--least", least, "Least-ranked arcs nl");

    auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a synthetic corpus");
    CorpusParams params;
    std::string out_dir;
    gen_cmd->add_option("--seed", params.seed, "RNG seed");
    gen_cmd->add_option("--pages", params.num_pages, "Number of pages");
    gen_cmd->add_option("--concepts", params.num_concepts, "Number of concepts");
    gen_cmd->add_option("--instances", params.instances_per_concept, "Instances per concept");
    gen_cmd->add_option("--preds-min", params.predicates_per_pair.min, "Min predicates per pair");
    gen_cmd->add_option("--preds-max", params.predicates_per_pair.max, "Max predicates per pair");
    gen_cmd->add_option("--triplets-min", params.triplets_per_page.min, "Min triplets per page");
    gen_cmd->add_option("--triplets-max", params.triplets_per_page.max, "Max triplets per page");
    uint64_t onto_total = 0, rdf_total = 0;
    uint32_t shape_arcs = 0, shape_least = 0;
    gen_cmd->add_option("--onto-total", onto_total, "Exact ontology triplet total");
    gen_cmd->add_option("--rdf-total", rdf_total, "Exact RDF triplet total");
    gen_cmd->add_option("--shape-arcs", shape_arcs, "Query graph arcs N");
    gen_cmd->add_option("--shape-least", shape_least, "Query graph least arcs nl");
    gen_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* bench_cmd = app.add_subcommand("bench", "Run the OntoLook comparison harness");
    std::string rows_path, emit = "csv";
    bench_cmd->add_option("--db", db, "Working store path (or SEMLOOK_DB)");
    bench_cmd->add_option("--rows", rows_path, "JSON row config")->required();
    bench_cmd->add_option("--emit", emit, "csv or md");

    auto* inspect_cmd = app.add_subcommand("inspect", "Dump store statistics");
    inspect_cmd->add_option("--db", db, "Store path (or SEMLOOK_DB)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*count_cmd) return cmd_count(mode_str, arcs, least ? least : arcs);
        if (*gen_cmd) {
            if (onto_total) params.total_ontology_triplets = onto_total;
            if (rdf_total) params.total_rdf_triplets = rdf_total;
            if (shape_arcs) params.shape = BenchShape{shape_arcs, shape_least ? shape_least : 1};
            return cmd_gen_corpus(params, out_dir);
        }
        std::string resolved_db = db_path_or_env(db);
        if (resolved_db.empty()) {
            std::cerr << "error: no --db given and SEMLOOK_DB unset\n";
            return 2;
        }
        if (*crawl_cmd) return cmd_crawl(source_arg, manifest_path, resolved_db, lambda);
        if (*query_cmd) return cmd_query(resolved_db, mode_str, terms, report_format);
        if (*bench_cmd) return cmd_bench(resolved_db, rows_path, emit);
        if (*inspect_cmd) return cmd_inspect(resolved_db);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
