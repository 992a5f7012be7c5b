#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swf/schema.hpp"
#include "swf/value.hpp"

namespace swf {

// One identified record; values are aligned with the schema entry order.
struct Artifact {
    std::string id;
    std::vector<MetadataValue> values;

    const MetadataValue& value(const MetadataSchema& schema, const std::string& field) const;
};

using ArtifactPtr = std::shared_ptr<const Artifact>;

struct DataSet;
using DataSetPtr = std::shared_ptr<const DataSet>;

// Ordered, duplicate-free (by artifact id) collection; depth 0 holds artifacts,
// depth >= 1 holds nested sets of uniform depth - 1.
struct DataSet {
    std::string label;
    int depth = 0;
    SchemaPtr schema;
    std::vector<ArtifactPtr> artifacts;  // populated iff depth == 0
    std::vector<DataSetPtr> children;    // populated iff depth >= 1

    std::size_t size() const { return depth == 0 ? artifacts.size() : children.size(); }
};

enum class ViolationKind { DuplicateId, DepthMismatch, SchemaMismatch, EmptyId };

struct Violation {
    ViolationKind kind;
    std::string message;
};

std::vector<Violation> validate_dataset(const DataSet& d);

struct NumericSummary {
    double mean = 0;
    double median = 0;
    double min = 0;
    double max = 0;
    double q1 = 0;
    double q3 = 0;
    double mode = 0;                // smallest value on tie
    std::optional<double> stddev;   // sample stddev, present when count >= 2
};

struct FieldSummary {
    std::size_t count = 0;    // non-missing values
    std::size_t missing = 0;
    bool is_date = false;
    std::optional<NumericSummary> numeric;               // numeric/date fields
    std::vector<std::pair<std::string, std::size_t>> frequencies;  // text/bool fields
};

// Descriptive statistics for one field of a depth-0 set; throws Error on an
// unknown field or a nested set.
FieldSummary dataset_summary(const DataSet& d, const std::string& field);

}  // namespace swf
