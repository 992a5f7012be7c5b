#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "swf/dataset.hpp"
#include "swf/schema.hpp"
#include "swf/workflow.hpp"

namespace swf {

struct LoaderSpec {
    std::string kind;  // "csv", "json", ...
    std::string path;
    MetadataSchema schema;
};

class Loader {
public:
    virtual ~Loader() = default;
    virtual DataSetPtr load(const LoaderSpec& spec) const = 0;
};

using LoaderFactory = std::function<std::shared_ptr<const Loader>()>;

// Maps loader kind names to factories; csv and json are pre-registered.
class LoaderRegistry {
public:
    static LoaderRegistry with_defaults();

    void register_kind(const std::string& kind, LoaderFactory factory);
    std::shared_ptr<const Loader> resolve(const LoaderSpec& spec) const;
    DataSetPtr load(const LoaderSpec& spec) const { return resolve(spec)->load(spec); }

private:
    std::map<std::string, LoaderFactory> factories_;
};

DataSetPtr load_csv(const LoaderSpec& spec);
DataSetPtr load_json(const LoaderSpec& spec);

// Flat record table with no declared schema; kinds are inferred column-wise
// (used by add_metadata, whose source carries no schema block).
struct InferredTable {
    MetadataSchema schema;  // key_field left empty
    std::vector<std::vector<MetadataValue>> rows;
};

InferredTable load_inferred(LoaderKind kind, const std::string& path);

// Value parsing shared by loaders: empty text is missing, otherwise the text
// must parse under the declared kind.
MetadataValue parse_cell(const std::string& raw, FieldKind kind, std::size_t row,
                         const std::string& column);

// RFC 4180 reader; returns rows of fields, header included.
std::vector<std::vector<std::string>> read_csv_file(const std::string& path);

}  // namespace swf
