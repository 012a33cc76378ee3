#include "semlook/ontobase.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

namespace semlook {

using ordered_json = nlohmann::ordered_json;

const char* to_string(PropertyKind k) {
    switch (k) {
        case PropertyKind::ObjectProperty: return "ObjectProperty";
        case PropertyKind::DatatypeProperty: return "DatatypeProperty";
        case PropertyKind::FunctionalProperty: return "FunctionalProperty";
    }
    return "ObjectProperty";
}

std::optional<PropertyKind> property_kind_from_string(std::string_view s) {
    if (s == "ObjectProperty") return PropertyKind::ObjectProperty;
    if (s == "DatatypeProperty") return PropertyKind::DatatypeProperty;
    if (s == "FunctionalProperty") return PropertyKind::FunctionalProperty;
    return std::nullopt;
}

Ontobase::Ontobase(Ontobase&& other) noexcept { *this = std::move(other); }

Ontobase& Ontobase::operator=(Ontobase&& other) noexcept {
    if (this == &other) return *this;
    std::scoped_lock lock(mutex_, other.mutex_);
    symbols_ = std::move(other.symbols_);
    onto_ = std::move(other.onto_);
    rdf_ = std::move(other.rdf_);
    onto_keys_ = std::move(other.onto_keys_);
    rdf_keys_ = std::move(other.rdf_keys_);
    pages_ = std::move(other.pages_);
    instance_concepts_ = std::move(other.instance_concepts_);
    pair_relations_ = std::move(other.pair_relations_);
    pattern_urls_ = std::move(other.pattern_urls_);
    page_pred_counts_ = std::move(other.page_pred_counts_);
    page_totals_ = std::move(other.page_totals_);
    return *this;
}

SymbolId Ontobase::intern(std::string_view name) {
    std::unique_lock lock(mutex_);
    return symbols_.intern(name);
}

std::optional<SymbolId> Ontobase::lookup(std::string_view name) const {
    std::shared_lock lock(mutex_);
    return symbols_.lookup(name);
}

const std::string& Ontobase::text(SymbolId id) const {
    std::shared_lock lock(mutex_);
    return symbols_.text(id);
}

static std::pair<uint32_t, uint32_t> unordered_pair(SymbolId a, SymbolId b) {
    return {std::min(a.value, b.value), std::max(a.value, b.value)};
}

bool Ontobase::put_ontology_triplet(const OntologyTriplet& t) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = onto_keys_.insert(
        {t.domain.value, t.predicate.value, t.range.value, t.kind, t.source_url});
    if (!inserted) return false;
    onto_.push_back(t);
    pair_relations_[unordered_pair(t.domain, t.range)].insert(t.predicate.value);
    return true;
}

bool Ontobase::put_rdf_triplet(const RdfTriplet& t) {
    std::unique_lock lock(mutex_);
    auto pr = pair_relations_.find(unordered_pair(t.subject_concept, t.object_concept));
    if (pr == pair_relations_.end() || !pr->second.count(t.predicate.value)) {
        throw DanglingOntologyRef("no ontology triplet for (" + symbols_.text(t.subject_concept) +
                                  ", " + symbols_.text(t.predicate) + ", " +
                                  symbols_.text(t.object_concept) + ")");
    }
    auto [it, inserted] = rdf_keys_.insert({t.subject.value, t.predicate.value, t.object.value,
                                            t.page_url, t.subject_concept.value,
                                            t.object_concept.value});
    if (!inserted) return false;
    rdf_.push_back(t);
    auto [lo, hi] = unordered_pair(t.subject, t.object);
    pattern_urls_[{lo, t.predicate.value, hi}].insert(t.page_url);
    page_pred_counts_[t.page_url][t.predicate.value] += 1;
    page_totals_[t.page_url] += 1;
    return true;
}

void Ontobase::declare_instance(SymbolId instance, SymbolId concept_id) {
    std::unique_lock lock(mutex_);
    instance_concepts_[instance].insert(concept_id);
}

void Ontobase::put_page(PageRecord page) {
    std::unique_lock lock(mutex_);
    pages_[page.url] = std::move(page);
}

std::vector<SymbolId> Ontobase::relations_between(SymbolId c_i, SymbolId c_j) const {
    std::shared_lock lock(mutex_);
    auto it = pair_relations_.find(unordered_pair(c_i, c_j));
    if (it == pair_relations_.end()) return {};
    std::vector<SymbolId> out;
    out.reserve(it->second.size());
    for (uint32_t p : it->second) out.push_back(SymbolId{p});
    std::sort(out.begin(), out.end(),
              [&](SymbolId a, SymbolId b) { return symbols_.text(a) < symbols_.text(b); });
    return out;
}

std::set<std::string> Ontobase::pages_matching(SymbolId subject, SymbolId predicate,
                                               SymbolId object) const {
    std::shared_lock lock(mutex_);
    auto [lo, hi] = unordered_pair(subject, object);
    auto it = pattern_urls_.find({lo, predicate.value, hi});
    if (it == pattern_urls_.end()) return {};
    return it->second;
}

std::optional<SymbolId> Ontobase::concept_of_instance(SymbolId instance) const {
    std::shared_lock lock(mutex_);
    auto it = instance_concepts_.find(instance);
    if (it == instance_concepts_.end() || it->second.empty()) return std::nullopt;
    if (it->second.size() > 1) {
        std::string msg = "instance '" + symbols_.text(instance) + "' declared with concepts";
        for (SymbolId c : it->second) msg += " '" + symbols_.text(c) + "'";
        throw AmbiguousInstance(msg);
    }
    return *it->second.begin();
}

double Ontobase::predicate_frequency(SymbolId predicate, const std::string& page_url) const {
    std::shared_lock lock(mutex_);
    if (!pages_.count(page_url)) throw UnknownPage("unknown page: " + page_url);
    auto tot = page_totals_.find(page_url);
    if (tot == page_totals_.end() || tot->second == 0) return 0.0;
    auto pc = page_pred_counts_.find(page_url);
    auto cnt = pc->second.find(predicate.value);
    if (cnt == pc->second.end()) return 0.0;
    return static_cast<double>(cnt->second) / static_cast<double>(tot->second);
}

std::vector<PredicateStats> Ontobase::predicate_stats(const std::string& page_url,
                                                      uint64_t lambda) const {
    std::shared_lock lock(mutex_);
    if (!pages_.count(page_url)) throw UnknownPage("unknown page: " + page_url);
    std::vector<PredicateStats> out;
    auto pc = page_pred_counts_.find(page_url);
    if (pc == page_pred_counts_.end()) return out;
    uint64_t total = page_totals_.at(page_url);
    for (auto& [pred, support] : pc->second) {
        PredicateStats s;
        s.predicate = SymbolId{pred};
        s.page_url = page_url;
        s.support = support;
        s.frequency = total ? static_cast<double>(support) / static_cast<double>(total) : 0.0;
        s.lambda = lambda;
        out.push_back(s);
    }
    return out;
}

std::size_t Ontobase::persist(const std::filesystem::path& path) const {
    std::shared_lock lock(mutex_);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << "{\"semlook_store\":1}\n";
    std::size_t records = 0;

    // Records are sorted by text so equal stores persist byte-identically
    // regardless of insertion order.
    auto txt = [&](SymbolId id) { return symbols_.text(id); };

    std::vector<OntologyTriplet> onto = onto_;
    std::sort(onto.begin(), onto.end(), [&](const OntologyTriplet& a, const OntologyTriplet& b) {
        return std::make_tuple(txt(a.domain), txt(a.predicate), txt(a.range), a.kind, a.source_url) <
               std::make_tuple(txt(b.domain), txt(b.predicate), txt(b.range), b.kind, b.source_url);
    });
    for (const auto& t : onto) {
        ordered_json j;
        j["kind"] = "onto";
        j["domain"] = txt(t.domain);
        j["predicate"] = txt(t.predicate);
        j["range"] = txt(t.range);
        j["property_kind"] = to_string(t.kind);
        j["source_url"] = t.source_url;
        out << j.dump() << "\n";
        ++records;
    }

    std::vector<std::pair<std::string, std::string>> instances;
    for (auto& [inst, concepts] : instance_concepts_)
        for (SymbolId c : concepts) instances.emplace_back(txt(inst), txt(c));
    std::sort(instances.begin(), instances.end());
    for (auto& [name, concept_name] : instances) {
        ordered_json j;
        j["kind"] = "instance";
        j["name"] = name;
        j["concept"] = concept_name;
        out << j.dump() << "\n";
        ++records;
    }

    std::vector<RdfTriplet> rdf = rdf_;
    std::sort(rdf.begin(), rdf.end(), [&](const RdfTriplet& a, const RdfTriplet& b) {
        return std::make_tuple(txt(a.subject), txt(a.predicate), txt(a.object), a.page_url,
                               txt(a.subject_concept), txt(a.object_concept)) <
               std::make_tuple(txt(b.subject), txt(b.predicate), txt(b.object), b.page_url,
                               txt(b.subject_concept), txt(b.object_concept));
    });
    for (const auto& t : rdf) {
        ordered_json j;
        j["kind"] = "rdf";
        j["subject"] = txt(t.subject);
        j["predicate"] = txt(t.predicate);
        j["object"] = txt(t.object);
        j["page_url"] = t.page_url;
        j["subject_concept"] = txt(t.subject_concept);
        j["object_concept"] = txt(t.object_concept);
        out << j.dump() << "\n";
        ++records;
    }

    for (auto& [url, page] : pages_) {
        ordered_json j;
        j["kind"] = "page";
        j["url"] = page.url;
        std::vector<std::string> kw, cw;
        for (SymbolId k : page.keywords) kw.push_back(txt(k));
        for (SymbolId c : page.concepts) cw.push_back(txt(c));
        std::sort(kw.begin(), kw.end());
        std::sort(cw.begin(), cw.end());
        j["keywords"] = kw;
        j["concepts"] = cw;
        j["content_digest"] = page.content_digest;
        out << j.dump() << "\n";
        ++records;
    }
    if (!out) throw IoError("write failed: " + path.string());
    return records;
}

Ontobase Ontobase::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptStore("cannot open " + path.string(), 0);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw CorruptStore("missing header", 1);

    auto parse = [&](std::size_t idx) {
        try {
            return ordered_json::parse(lines[idx]);
        } catch (const ordered_json::exception& e) {
            throw CorruptStore(std::string("bad JSON: ") + e.what(), idx + 1);
        }
    };

    {
        auto hdr = parse(0);
        if (!hdr.is_object() || hdr.value("semlook_store", 0) != 1)
            throw CorruptStore("bad header", 1);
    }

    struct RawOnto { std::string d, p, r, kind, src; std::size_t line; };
    struct RawInstance { std::string name, concept_name; };
    struct RawRdf { std::string s, p, o, url, sc, oc; std::size_t line; };
    std::vector<RawOnto> ontos;
    std::vector<RawInstance> instances;
    std::vector<RawRdf> rdfs;
    std::vector<PageRecord> pages;
    std::vector<std::vector<std::string>> page_kw, page_cw;

    Ontobase store;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) throw CorruptStore("blank line inside store", i + 1);
        auto j = parse(i);
        std::string kind = j.value("kind", "");
        try {
            if (kind == "onto") {
                ontos.push_back({j.at("domain"), j.at("predicate"), j.at("range"),
                                 j.at("property_kind"), j.at("source_url"), i + 1});
            } else if (kind == "instance") {
                instances.push_back({j.at("name"), j.at("concept")});
            } else if (kind == "rdf") {
                rdfs.push_back({j.at("subject"), j.at("predicate"), j.at("object"),
                                j.at("page_url"), j.at("subject_concept"), j.at("object_concept"),
                                i + 1});
            } else if (kind == "page") {
                PageRecord p;
                p.url = j.at("url");
                p.content_digest = j.at("content_digest");
                pages.push_back(std::move(p));
                page_kw.push_back(j.at("keywords").get<std::vector<std::string>>());
                page_cw.push_back(j.at("concepts").get<std::vector<std::string>>());
            } else {
                throw CorruptStore("unknown record kind '" + kind + "'", i + 1);
            }
        } catch (const ordered_json::exception& e) {
            throw CorruptStore(std::string("bad record: ") + e.what(), i + 1);
        }
    }

    for (const auto& r : ontos) {
        auto kind = property_kind_from_string(r.kind);
        if (!kind) throw CorruptStore("bad property_kind '" + r.kind + "'", r.line);
        store.put_ontology_triplet({store.intern(r.d), store.intern(r.p), store.intern(r.r),
                                    *kind, r.src});
    }
    for (const auto& r : instances)
        store.declare_instance(store.intern(r.name), store.intern(r.concept_name));
    for (const auto& r : rdfs) {
        try {
            store.put_rdf_triplet({store.intern(r.s), store.intern(r.p), store.intern(r.o), r.url,
                                   store.intern(r.sc), store.intern(r.oc)});
        } catch (const DanglingOntologyRef& e) {
            throw CorruptStore(std::string("dangling rdf record: ") + e.what(), r.line);
        }
    }
    for (std::size_t i = 0; i < pages.size(); ++i) {
        PageRecord p = std::move(pages[i]);
        for (const auto& k : page_kw[i]) p.keywords.insert(store.intern(k));
        for (const auto& c : page_cw[i]) p.concepts.insert(store.intern(c));
        store.put_page(std::move(p));
    }
    return store;
}

}  // namespace semlook
