#include "semlook/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "semlook/symbols.hpp"

namespace semlook {
namespace annotations {

namespace pt = boost::property_tree;

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// "rdf:Description" -> "description"; matching ignores namespace prefixes.
std::string local_name(std::string_view qname) {
    auto pos = qname.rfind(':');
    if (pos != std::string_view::npos) qname = qname.substr(pos + 1);
    return to_lower(qname);
}

std::string strip_fragment(std::string_view v) {
    if (!v.empty() && v.front() == '#') v.remove_prefix(1);
    return std::string(v);
}

bool is_element(const std::string& name) {
    return name != "<xmlattr>" && name != "<xmlcomment>" && name != "<xmltext>";
}

// Attribute lookup by local name.
std::optional<std::string> attribute(const pt::ptree& node, std::string_view local) {
    auto attrs = node.get_child_optional("<xmlattr>");
    if (!attrs) return std::nullopt;
    for (const auto& [name, value] : *attrs) {
        if (local_name(name) == local) return value.get_value<std::string>();
    }
    return std::nullopt;
}

bool is_property_element(const std::string& name) {
    std::string ln = local_name(name);
    return ln == "objectproperty" || ln == "datatypeproperty" || ln == "functionalproperty";
}

PropertyKind property_kind_of(const std::string& name) {
    std::string ln = local_name(name);
    if (ln == "datatypeproperty") return PropertyKind::DatatypeProperty;
    if (ln == "functionalproperty") return PropertyKind::FunctionalProperty;
    return PropertyKind::ObjectProperty;
}

bool contains_property_element(const pt::ptree& node) {
    for (const auto& [name, child] : node) {
        if (!is_element(name)) continue;
        if (is_property_element(name)) return true;
        if (contains_property_element(child)) return true;
    }
    return false;
}

pt::ptree parse_xml(std::string_view doc_bytes) {
    std::istringstream in{std::string(doc_bytes)};
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace | pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        throw MalformedDocument(std::string("unparseable XML: ") + e.message());
    }
    return tree;
}

// First element child; the document root.
const std::pair<const std::string, pt::ptree>* root_of(const pt::ptree& tree) {
    for (const auto& entry : tree) {
        if (is_element(entry.first)) return &entry;
    }
    return nullptr;
}

template <typename F>
void for_each_element(const pt::ptree& node, F&& fn) {
    for (const auto& [name, child] : node) {
        if (!is_element(name)) continue;
        fn(name, child);
        for_each_element(child, fn);
    }
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::vector<AnnotationLink> extract_annotation_links(std::string_view page_bytes) {
    std::vector<AnnotationLink> links;
    std::string lower = to_lower(page_bytes);
    std::size_t pos = 0;
    while ((pos = lower.find("<link", pos)) != std::string::npos) {
        std::size_t after = pos + 5;
        // Must be a tag boundary, not e.g. <linkage>.
        if (after < lower.size() && !std::isspace(static_cast<unsigned char>(lower[after])) &&
            lower[after] != '>' && lower[after] != '/') {
            pos = after;
            continue;
        }
        std::size_t end = lower.find('>', after);
        if (end == std::string::npos) break;
        std::string_view tag = page_bytes.substr(after, end - after);

        // Attribute scan, tolerant of unquoted values.
        std::string href, type;
        std::size_t i = 0;
        while (i < tag.size()) {
            while (i < tag.size() &&
                   (std::isspace(static_cast<unsigned char>(tag[i])) || tag[i] == '/'))
                ++i;
            std::size_t name_start = i;
            while (i < tag.size() && tag[i] != '=' && tag[i] != '/' &&
                   !std::isspace(static_cast<unsigned char>(tag[i])))
                ++i;
            std::string name = to_lower(tag.substr(name_start, i - name_start));
            while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
            std::string value;
            if (i < tag.size() && tag[i] == '=') {
                ++i;
                while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
                if (i < tag.size() && (tag[i] == '"' || tag[i] == '\'')) {
                    char q = tag[i++];
                    std::size_t vstart = i;
                    while (i < tag.size() && tag[i] != q) ++i;
                    value = std::string(tag.substr(vstart, i - vstart));
                    if (i < tag.size()) ++i;
                } else {
                    std::size_t vstart = i;
                    while (i < tag.size() && !std::isspace(static_cast<unsigned char>(tag[i])))
                        ++i;
                    value = std::string(tag.substr(vstart, i - vstart));
                }
            }
            if (name == "href") href = value;
            if (name == "type") type = value;
        }

        std::string t = to_lower(type);
        while (!t.empty() && (t.back() == ';' || std::isspace(static_cast<unsigned char>(t.back()))))
            t.pop_back();
        if (t == "application/rdf+xml" && !href.empty())
            links.push_back({href, "application/rdf+xml"});
        pos = end + 1;
    }
    return links;
}

DocumentKind classify_document(std::string_view doc_bytes) {
    pt::ptree tree = parse_xml(doc_bytes);
    const auto* root = root_of(tree);
    if (!root) throw MalformedDocument("no root element");
    if (local_name(root->first) == "ontology") return DocumentKind::Ontology;
    if (is_property_element(root->first) || contains_property_element(root->second))
        return DocumentKind::Ontology;
    return DocumentKind::Rdf;
}

ParsedOntology parse_ontology_document(std::string_view doc_bytes, const std::string& ourl,
                                       const std::string& wurl) {
    pt::ptree tree = parse_xml(doc_bytes);
    ParsedOntology out;
    out.source_url = ourl;
    out.page_url = wurl;

    for_each_element(tree, [&](const std::string& name, const pt::ptree& node) {
        if (!is_property_element(name)) return;
        auto id = attribute(node, "id");  // rdf:ID
        if (!id) {
            out.warnings.push_back("SkippedProperty: " + name + " without rdf:ID");
            return;
        }
        std::string relation = normalize_symbol(*id);
        std::optional<std::string> domain, range;
        for (const auto& [cname, child] : node) {
            if (!is_element(cname)) continue;
            std::string ln = local_name(cname);
            auto resource = attribute(child, "resource");
            if (ln == "domain") {
                if (resource) domain = normalize_symbol(strip_fragment(*resource));
            } else if (ln == "range") {
                if (resource) range = normalize_symbol(strip_fragment(*resource));
            } else {
                out.warnings.push_back("SkippedProperty: unexpected child <" + cname + "> of " +
                                       relation);
            }
        }
        if (!domain || !range || relation.empty() || domain->empty() || range->empty()) {
            out.warnings.push_back("SkippedProperty: " + relation + " missing domain or range");
            return;
        }
        out.triplets.push_back({*domain, relation, *range, property_kind_of(name)});
    });
    return out;
}

ParsedRdf parse_rdf_document(std::string_view doc_bytes, const std::string& ourl,
                             const std::string& wurl) {
    pt::ptree tree = parse_xml(doc_bytes);
    ParsedRdf out;
    out.source_url = ourl;
    out.page_url = wurl;

    for_each_element(tree, [&](const std::string& name, const pt::ptree& node) {
        if (local_name(name) != "instances") return;
        for (const auto& [cname, child] : node) {
            if (!is_element(cname) || local_name(cname) != "instance") continue;
            auto iname = attribute(child, "name");
            auto concept_name = attribute(child, "concept");
            if (!iname || !concept_name) {
                out.warnings.push_back("instance element missing name or concept");
                continue;
            }
            out.instance_map[normalize_symbol(*iname)] = normalize_symbol(*concept_name);
        }
    });

    for_each_element(tree, [&](const std::string& name, const pt::ptree& node) {
        if (local_name(name) != "description") return;
        auto about = attribute(node, "about");
        if (!about) {
            out.warnings.push_back("rdf:Description without rdf:about");
            return;
        }
        std::string subject = normalize_symbol(strip_fragment(*about));
        for (const auto& [cname, child] : node) {
            if (!is_element(cname)) continue;
            std::string predicate = normalize_symbol(local_name(cname));
            auto resource = attribute(child, "resource");
            if (!resource) {
                out.warnings.push_back("predicate <" + cname + "> of " + subject +
                                       " without rdf:resource");
                continue;
            }
            std::string object = normalize_symbol(strip_fragment(*resource));
            if (!out.instance_map.count(subject) || !out.instance_map.count(object)) {
                out.warnings.push_back("UnmappedInstance: (" + subject + ", " + predicate + ", " +
                                       object + ") dropped");
                continue;
            }
            out.triplets.push_back({subject, predicate, object});
        }
    });
    return out;
}

std::string emit_ontology_xml(const ParsedOntology& doc) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\"?>\n<ONTOLOGY>\n";
    for (const auto& t : doc.triplets) {
        out << "  <" << to_string(t.kind) << " rdf:ID=\"" << xml_escape(t.predicate) << "\">\n"
            << "    <domain rdfs:resource=\"#" << xml_escape(t.domain) << "\"/>\n"
            << "    <range rdfs:resource=\"#" << xml_escape(t.range) << "\"/>\n"
            << "  </" << to_string(t.kind) << ">\n";
    }
    out << "</ONTOLOGY>\n";
    return out.str();
}

std::string emit_rdf_xml(const ParsedRdf& doc) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\"?>\n<rdf:RDF>\n  <instances>\n";
    for (const auto& [name, concept_name] : doc.instance_map) {
        out << "    <instance name=\"" << xml_escape(name) << "\" concept=\""
            << xml_escape(concept_name) << "\"/>\n";
    }
    out << "  </instances>\n";
    // One Description per subject, children in triplet order.
    std::vector<std::string> subject_order;
    std::map<std::string, std::vector<const RawRdfTriplet*>> by_subject;
    for (const auto& t : doc.triplets) {
        if (!by_subject.count(t.subject)) subject_order.push_back(t.subject);
        by_subject[t.subject].push_back(&t);
    }
    for (const auto& subject : subject_order) {
        out << "  <rdf:Description rdf:about=\"" << xml_escape(subject) << "\">\n";
        for (const auto* t : by_subject[subject]) {
            out << "    <" << xml_escape(t->predicate) << " rdf:resource=\""
                << xml_escape(t->object) << "\"/>\n";
        }
        out << "  </rdf:Description>\n";
    }
    out << "</rdf:RDF>\n";
    return out.str();
}

}  // namespace annotations
}  // namespace semlook
