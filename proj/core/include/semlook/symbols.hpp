#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semlook/errors.hpp"

namespace semlook {

// Dense handle for an interned concept/predicate/instance name.
struct SymbolId {
    uint32_t value = 0;

    friend bool operator==(SymbolId a, SymbolId b) { return a.value == b.value; }
    friend bool operator!=(SymbolId a, SymbolId b) { return a.value != b.value; }
    friend bool operator<(SymbolId a, SymbolId b) { return a.value < b.value; }
};

struct SymbolIdHash {
    std::size_t operator()(SymbolId s) const { return std::hash<uint32_t>{}(s.value); }
};

// Trim ASCII whitespace and lowercase; symbol matching is case-insensitive.
std::string normalize_symbol(std::string_view name);

class SymbolTable {
public:
    // Returns the existing id for `name` (case-insensitive, trimmed) or a fresh one.
    SymbolId intern(std::string_view name) {
        std::string key = normalize_symbol(name);
        if (key.empty()) throw InvalidName("empty symbol name");
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        SymbolId id{static_cast<uint32_t>(texts_.size())};
        texts_.push_back(key);
        ids_.emplace(std::move(key), id);
        return id;
    }

    std::optional<SymbolId> lookup(std::string_view name) const {
        auto it = ids_.find(normalize_symbol(name));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& text(SymbolId id) const { return texts_.at(id.value); }

    std::size_t size() const { return texts_.size(); }

private:
    std::vector<std::string> texts_;
    std::unordered_map<std::string, SymbolId> ids_;
};

// FNV-1a, used for page content digests.
uint64_t fnv1a64(std::string_view bytes);

}  // namespace semlook
