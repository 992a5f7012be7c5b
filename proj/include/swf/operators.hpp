#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swf/constraint.hpp"
#include "swf/dataset.hpp"
#include "swf/loaders.hpp"
#include "swf/rng.hpp"
#include "swf/trace.hpp"
#include "swf/workflow.hpp"

namespace swf {

struct FilterOutcome {
    DataSetPtr data;
    std::size_t excluded_missing = 0;  // rejected artifacts that touched missing values
};

FilterOutcome filter_op(const DataSet& d, const ConstraintExpr& c);

// Uniform sample without replacement via a partial Fisher-Yates shuffle of the
// index array; output keeps input order. Throws ExecError when n > |d|.
DataSetPtr random_op(const DataSet& d, std::int64_t n, std::uint64_t seed);

// Sort by order_field (stable, missing last), pick every k-th element from a
// random start, k = floor(|d| / n); output keeps input order.
DataSetPtr systematic_op(const DataSet& d, std::int64_t n, const std::string& order_field,
                         bool ascending, std::uint64_t seed);

struct ManualOutcome {
    DataSetPtr data;
    std::vector<std::string> unresolved;  // listed ids absent from the input
};

ManualOutcome manual_op(const DataSet& d, const std::vector<std::string>& ids);

// Splits d by the strata constraints and verifies they partition it (pairwise
// disjoint and exhaustive). Throws ExecError naming up to 5 witnesses.
std::vector<DataSetPtr> partition_strata(const DataSet& d, const std::vector<Stratum>& strata);

// Groups without the partition requirement: one filtered subset per stratum.
std::vector<DataSetPtr> group_strata(const DataSet& d, const std::vector<Stratum>& strata);

DataSetPtr union_op(const DataSet& d);
DataSetPtr intersection_op(const DataSet& d);

struct AddMetadataOutcome {
    DataSetPtr data;
    std::size_t matched = 0;
    std::size_t added_fields = 0;
};

AddMetadataOutcome add_metadata_op(const DataSet& d, const InferredTable& table,
                                   const std::string& join_key);

// ---- workflow execution ----

struct ExecOptions {
    // Replaces every workflow seed with mix_seed(override, operator ordinal).
    std::optional<std::uint64_t> seed_override;
    // Fields whose descriptive summaries are recorded per trace node; empty
    // means every schema field.
    std::vector<std::string> summary_fields;
    // Base directory for relative add_metadata paths.
    std::string base_dir;
};

struct ExecResult {
    DataSetPtr final_set;
    ExecutionTrace trace;
};

// Runs the workflow steps against an already-loaded sampling frame.
ExecResult execute_workflow(const Workflow& w, DataSetPtr frame,
                            const LoaderRegistry& loaders, const ExecOptions& opts = {});

}  // namespace swf
