#include "semlook/crawler.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>

#include <httplib.h>

#include "semlook/annotations.hpp"
#include "semlook/errors.hpp"

namespace semlook {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FetchError("cannot read " + p.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

bool path_within(const fs::path& root, const fs::path& target) {
    auto r = fs::weakly_canonical(root);
    auto t = fs::weakly_canonical(target);
    auto rit = r.begin();
    auto tit = t.begin();
    for (; rit != r.end(); ++rit, ++tit) {
        if (tit == t.end() || *rit != *tit) return false;
    }
    return true;
}

std::string fetch_directory(const std::string& ref, const fs::path& root,
                            const std::string& base_ref) {
    fs::path target;
    fs::path ref_path(ref);
    if (ref_path.is_absolute()) {
        target = ref_path;
    } else if (!base_ref.empty()) {
        target = (root / fs::path(base_ref)).parent_path() / ref_path;
    } else {
        target = root / ref_path;
    }
    if (!path_within(root, target)) throw FetchError("ref escapes source root: " + ref);
    if (!fs::is_regular_file(target)) throw FetchError("no such file: " + target.string());
    return read_file(target);
}

// Split "http://host:port/base/path" into origin and path.
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw FetchError("not an absolute URL: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string fetch_http(const std::string& ref, const std::string& root,
                       const std::string& base_ref) {
    std::string url;
    if (ref.rfind("http://", 0) == 0 || ref.rfind("https://", 0) == 0) {
        if (ref.rfind(root, 0) != 0) throw FetchError("ref outside source root: " + ref);
        url = ref;
    } else if (!base_ref.empty()) {
        std::string base = root;
        if (base.back() == '/') base.pop_back();
        std::string dir = base_ref;
        auto slash = dir.rfind('/');
        dir = (slash == std::string::npos) ? "" : dir.substr(0, slash + 1);
        url = base + "/" + dir + ref;
    } else {
        std::string base = root;
        if (base.back() == '/') base.pop_back();
        url = base + "/" + ref;
    }
    auto [origin, path] = split_url(url);
    httplib::Client client(origin);
    auto res = client.Get(path);
    if (!res || res->status != 200) {
        throw FetchError("HTTP " + (res ? std::to_string(res->status) : std::string("error")) +
                         " for " + url);
    }
    return res->body;
}

std::vector<std::string> discover_pages(const CorpusSource& source) {
    if (source.page_list) return *source.page_list;
    if (source.kind == CorpusSource::Kind::HttpBase)
        throw SourceUnavailable("HTTP sources need an explicit page manifest");
    fs::path root(source.root);
    if (!fs::is_directory(root)) throw SourceUnavailable("no such directory: " + source.root);
    std::vector<std::string> pages;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() == ".html")
            pages.push_back(fs::relative(entry.path(), root).generic_string());
    }
    std::sort(pages.begin(), pages.end());
    return pages;
}

}  // namespace

std::string fetch(const std::string& ref, const CorpusSource& source,
                  const std::string& base_ref) {
    if (source.kind == CorpusSource::Kind::Directory)
        return fetch_directory(ref, fs::path(source.root), base_ref);
    return fetch_http(ref, source.root, base_ref);
}

CrawlReport crawl(const CorpusSource& source, Ontobase& store, const CrawlConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    CrawlReport report;
    std::vector<std::string> pages = discover_pages(source);

    for (const std::string& page_ref : pages) {
        std::string page_bytes;
        try {
            page_bytes = fetch(page_ref, source);
        } catch (const FetchError& e) {
            report.warnings.emplace_back(page_ref, e.what());
            continue;
        }
        ++report.pages_visited;

        auto links = annotations::extract_annotation_links(page_bytes);
        std::vector<annotations::ParsedOntology> ontologies;
        std::vector<annotations::ParsedRdf> rdfs;
        for (const auto& link : links) {
            try {
                std::string doc = fetch(link.href, source, page_ref);
                if (annotations::classify_document(doc) == annotations::DocumentKind::Ontology)
                    ontologies.push_back(
                        annotations::parse_ontology_document(doc, link.href, page_ref));
                else
                    rdfs.push_back(annotations::parse_rdf_document(doc, link.href, page_ref));
                ++report.annotation_docs_parsed;
            } catch (const DomainError& e) {
                report.warnings.emplace_back(link.href, e.what());
            }
        }

        // Ontology before RDF so the RDF->ontology mapping invariant holds.
        for (const auto& doc : ontologies) {
            for (const auto& w : doc.warnings) report.warnings.emplace_back(doc.source_url, w);
            for (const auto& t : doc.triplets) {
                OntologyTriplet ot{store.intern(t.domain), store.intern(t.predicate),
                                   store.intern(t.range), t.kind, doc.source_url};
                if (store.put_ontology_triplet(ot)) ++report.ontology_triplets;
            }
        }

        std::vector<RdfTriplet> candidates;
        for (const auto& doc : rdfs) {
            for (const auto& w : doc.warnings) report.warnings.emplace_back(doc.source_url, w);
            for (const auto& [name, concept_name] : doc.instance_map)
                store.declare_instance(store.intern(name), store.intern(concept_name));
            for (const auto& t : doc.triplets) {
                RdfTriplet rt;
                rt.subject = store.intern(t.subject);
                rt.predicate = store.intern(t.predicate);
                rt.object = store.intern(t.object);
                rt.page_url = page_ref;
                rt.subject_concept = store.intern(doc.instance_map.at(t.subject));
                rt.object_concept = store.intern(doc.instance_map.at(t.object));
                candidates.push_back(rt);
            }
        }

        // Per-page minimum-support filter.
        if (config.lambda > 1) {
            std::map<uint32_t, uint64_t> support;
            for (const auto& t : candidates) support[t.predicate.value] += 1;
            std::erase_if(candidates, [&](const RdfTriplet& t) {
                return support[t.predicate.value] < config.lambda;
            });
        }

        PageRecord page;
        page.url = page_ref;
        page.content_digest = fnv1a64(page_bytes);
        for (const auto& t : candidates) {
            try {
                if (store.put_rdf_triplet(t)) ++report.rdf_triplets;
            } catch (const DanglingOntologyRef& e) {
                report.warnings.emplace_back(page_ref, e.what());
                continue;
            }
            page.keywords.insert(t.subject);
            page.keywords.insert(t.object);
            page.concepts.insert(t.subject_concept);
            page.concepts.insert(t.object_concept);
        }
        store.put_page(std::move(page));
    }

    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

}  // namespace semlook
