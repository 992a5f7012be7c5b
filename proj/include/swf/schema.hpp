#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swf/error.hpp"
#include "swf/value.hpp"

namespace swf {

struct FieldDecl {
    std::string name;
    FieldKind kind;
    bool operator==(const FieldDecl&) const = default;
};

// Declared shape of artifact metadata plus the designated unique-ID field.
struct MetadataSchema {
    std::vector<FieldDecl> entries;
    std::string key_field;

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].name == name) return i;
        return std::nullopt;
    }

    std::optional<FieldKind> kind_of(const std::string& name) const {
        if (auto i = index_of(name)) return entries[*i].kind;
        return std::nullopt;
    }

    // Throws Error on duplicate/empty names or an unusable key field.
    void check() const;

    bool operator==(const MetadataSchema&) const = default;
};

using SchemaPtr = std::shared_ptr<const MetadataSchema>;

}  // namespace swf
