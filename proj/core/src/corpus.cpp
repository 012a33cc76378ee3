#include "semlook/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "semlook/annotations.hpp"
#include "semlook/errors.hpp"
#include "semlook/relation_graph.hpp"

namespace semlook {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string concept_name(uint32_t i) { return "c" + std::to_string(i); }

std::string instance_name(uint32_t concept_idx, uint32_t m) {
    return "c" + std::to_string(concept_idx) + "_k" + std::to_string(m);
}

std::string page_name(uint32_t p) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%04u", p);
    return buf;
}

void write_file(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    out << bytes;
    if (!out) throw IoError("write failed: " + p.string());
}

uint32_t draw(std::mt19937_64& rng, CountRange r) {
    if (r.max <= r.min) return r.min;
    return r.min + static_cast<uint32_t>(rng() % (r.max - r.min + 1));
}

}  // namespace

CorpusManifest generate_corpus(const CorpusParams& params, const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (!fs::is_directory(out)) throw IoError("cannot create directory " + out.string());
    if (params.num_pages < 1 || params.num_concepts < 1 || params.instances_per_concept < 1)
        throw InvalidArgs("corpus params must be >= 1");

    std::mt19937_64 rng(params.seed);

    uint32_t nc = params.num_concepts;
    uint32_t q = 0;  // number of designated query concepts
    if (params.shape) {
        if (params.shape->least > params.shape->arcs || params.shape->arcs < 1)
            throw InvalidArgs("bench shape needs 1 <= least <= arcs");
        q = 2;
        while (q * (q - 1) / 2 < params.shape->arcs) ++q;
        nc = std::max(nc, q);
    }

    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t i = 0; i < nc; ++i)
        for (uint32_t j = i + 1; j < nc; ++j) pairs.emplace_back(i, j);

    std::vector<uint32_t> preds(pairs.size(), 0);
    std::vector<std::size_t> shape_pairs;  // pair indices forming the query arcs
    std::vector<std::size_t> pad_targets;

    if (params.shape) {
        uint32_t placed = 0;
        for (std::size_t idx = 0; idx < pairs.size() && placed < params.shape->arcs; ++idx) {
            if (pairs[idx].second >= q) continue;  // arcs live among the query concepts
            preds[idx] = placed < params.shape->least ? 1 : 2;
            shape_pairs.push_back(idx);
            ++placed;
        }
        for (std::size_t idx = 0; idx < pairs.size(); ++idx)
            if (pairs[idx].second >= q) pad_targets.push_back(idx);
        if (pad_targets.empty()) {
            // No spare concepts; padding goes to the heavy arcs so the least
            // set stays intact.
            for (std::size_t idx : shape_pairs)
                if (preds[idx] >= 2) pad_targets.push_back(idx);
        }
    } else {
        for (std::size_t idx = 0; idx < pairs.size(); ++idx)
            preds[idx] = draw(rng, params.predicates_per_pair);
        for (std::size_t idx = 0; idx < pairs.size(); ++idx) pad_targets.push_back(idx);
    }

    if (params.total_ontology_triplets) {
        uint64_t target = *params.total_ontology_triplets;
        uint64_t cur = 0;
        for (uint32_t p : preds) cur += p;
        std::size_t k = 0;
        while (cur < target) {
            if (pad_targets.empty()) throw InvalidArgs("no pairs available to pad ontology");
            preds[pad_targets[k++ % pad_targets.size()]] += 1;
            ++cur;
        }
        while (cur > target) {
            bool removed = false;
            for (std::size_t t = 0; t < pad_targets.size() && cur > target; ++t) {
                std::size_t idx = pad_targets[t];
                uint32_t floor = params.shape && preds[idx] >= 2 &&
                                         std::count(shape_pairs.begin(), shape_pairs.end(), idx)
                                     ? 2u
                                     : 0u;
                if (preds[idx] > floor) {
                    preds[idx] -= 1;
                    --cur;
                    removed = true;
                }
            }
            if (!removed) throw InvalidArgs("ontology total below the shape minimum");
        }
    }

    annotations::ParsedOntology onto;
    onto.source_url = "ontology.xml";
    // (pair index, predicate slot) -> name; slot 0 is the canonical predicate
    // of the pair, used for the hub page.
    std::vector<std::vector<std::string>> pair_pred_names(pairs.size());
    uint64_t pred_serial = 0;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        auto [i, j] = pairs[idx];
        for (uint32_t k = 0; k < preds[idx]; ++k) {
            std::string name =
                "r" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
            PropertyKind kind = PropertyKind::ObjectProperty;
            if (pred_serial % 7 == 3) kind = PropertyKind::DatatypeProperty;
            if (pred_serial % 7 == 5) kind = PropertyKind::FunctionalProperty;
            ++pred_serial;
            onto.triplets.push_back({concept_name(i), name, concept_name(j), kind});
            pair_pred_names[idx].push_back(std::move(name));
        }
    }
    write_file(out / "ontology.xml", annotations::emit_ontology_xml(onto));

    std::vector<std::size_t> populated_pairs;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx)
        if (preds[idx] > 0) populated_pairs.push_back(idx);
    if (populated_pairs.empty()) throw InvalidArgs("corpus has no relations at all");

    uint32_t ipc = params.instances_per_concept;
    uint64_t page_capacity = 0;
    for (std::size_t idx : populated_pairs)
        page_capacity += static_cast<uint64_t>(preds[idx]) * ipc * ipc;

    std::vector<uint64_t> counts(params.num_pages);
    for (auto& c : counts) c = draw(rng, params.triplets_per_page);
    uint64_t hub = params.shape ? shape_pairs.size() : 0;
    counts[0] = std::max(counts[0], hub);
    if (params.total_rdf_triplets) {
        uint64_t target = *params.total_rdf_triplets;
        uint64_t cur = 0;
        for (uint64_t c : counts) cur += c;
        std::size_t k = 0;
        while (cur < target) {
            if (counts[k % counts.size()] < page_capacity) {
                counts[k % counts.size()] += 1;
                ++cur;
            }
            ++k;
            if (k > counts.size() * (page_capacity + 2))
                throw InvalidArgs("rdf total exceeds corpus capacity");
        }
        while (cur > target) {
            bool removed = false;
            for (std::size_t p = counts.size(); p-- > 0 && cur > target;) {
                uint64_t floor = p == 0 ? hub : 0;
                if (counts[p] > floor) {
                    counts[p] -= 1;
                    --cur;
                    removed = true;
                }
            }
            if (!removed) throw InvalidArgs("rdf total below the hub minimum");
        }
    }
    for (auto& c : counts) c = std::min(c, page_capacity);

    CorpusManifest manifest;
    for (uint32_t p = 0; p < params.num_pages; ++p) {
        std::set<annotations::RawRdfTriplet> chosen;
        std::vector<annotations::RawRdfTriplet> order;
        auto add = [&](const annotations::RawRdfTriplet& t) {
            if (chosen.insert(t).second) order.push_back(t);
        };
        if (p == 0 && params.shape) {
            for (std::size_t idx : shape_pairs) {
                auto [i, j] = pairs[idx];
                add({instance_name(i, 0), pair_pred_names[idx][0], instance_name(j, 0)});
            }
        }
        uint64_t attempts = 0;
        while (chosen.size() < counts[p] && attempts < counts[p] * 200 + 1000) {
            ++attempts;
            std::size_t idx = populated_pairs[rng() % populated_pairs.size()];
            auto [i, j] = pairs[idx];
            const auto& names = pair_pred_names[idx];
            add({instance_name(i, static_cast<uint32_t>(rng() % ipc)),
                 names[rng() % names.size()],
                 instance_name(j, static_cast<uint32_t>(rng() % ipc))});
        }
        // Deterministic sweep if random draws keep colliding.
        for (std::size_t idx : populated_pairs) {
            if (chosen.size() >= counts[p]) break;
            auto [i, j] = pairs[idx];
            for (const auto& name : pair_pred_names[idx]) {
                for (uint32_t su = 0; su < ipc && chosen.size() < counts[p]; ++su)
                    for (uint32_t ob = 0; ob < ipc && chosen.size() < counts[p]; ++ob)
                        add({instance_name(i, su), name, instance_name(j, ob)});
            }
        }

        annotations::ParsedRdf doc;
        doc.source_url = page_name(p) + ".rdf";
        doc.triplets = order;
        for (const auto& t : order) {
            auto concept_of = [](const std::string& inst) {
                return inst.substr(0, inst.find("_k"));
            };
            doc.instance_map[t.subject] = concept_of(t.subject);
            doc.instance_map[t.object] = concept_of(t.object);
        }
        write_file(out / (page_name(p) + ".rdf"), annotations::emit_rdf_xml(doc));

        std::string html = "<html><head>\n"
                           "<title>" + page_name(p) + "</title>\n"
                           "<link rel=\"stylesheet\" href=\"style.css\">\n"
                           "<link type=\"application/rdf+xml\" href=\"ontology.xml\">\n"
                           "<link type=\"application/rdf+xml\" href=\"" + page_name(p) +
                           ".rdf\">\n</head><body>\n<p>Synthetic page " + page_name(p) +
                           " with " + std::to_string(order.size()) +
                           " annotated statements.</p>\n</body></html>\n";
        write_file(out / (page_name(p) + ".html"), html);

        manifest.pages.push_back(page_name(p) + ".html");
        manifest.expected_rdf_triplets += order.size();
    }
    manifest.expected_ontology_triplets = onto.triplets.size();

    if (params.shape) {
        for (uint32_t i = 0; i < q; ++i) {
            manifest.query_keywords.push_back(instance_name(i, 0));
            manifest.query_concepts.push_back(concept_name(i));
        }
    } else {
        auto [i, j] = pairs[populated_pairs.front()];
        manifest.query_keywords = {instance_name(i, 0), instance_name(j, 0)};
        manifest.query_concepts = {concept_name(i), concept_name(j)};
    }

    ordered_json j;
    j["pages"] = manifest.pages;
    j["expected_ontology_triplets"] = manifest.expected_ontology_triplets;
    j["expected_rdf_triplets"] = manifest.expected_rdf_triplets;
    j["query_keywords"] = manifest.query_keywords;
    j["query_concepts"] = manifest.query_concepts;
    write_file(out / "manifest.json", j.dump(2) + "\n");
    return manifest;
}

CorpusManifest load_manifest(const fs::path& corpus_dir) {
    std::ifstream in(corpus_dir / "manifest.json");
    if (!in) throw IoError("cannot read manifest in " + corpus_dir.string());
    ordered_json j = ordered_json::parse(in, nullptr, true);
    CorpusManifest m;
    m.pages = j.at("pages").get<std::vector<std::string>>();
    m.expected_ontology_triplets = j.at("expected_ontology_triplets");
    m.expected_rdf_triplets = j.at("expected_rdf_triplets");
    m.query_keywords = j.at("query_keywords").get<std::vector<std::string>>();
    m.query_concepts = j.at("query_concepts").get<std::vector<std::string>>();
    return m;
}

}  // namespace semlook
