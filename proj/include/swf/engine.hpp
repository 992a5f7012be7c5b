#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swf/operators.hpp"
#include "swf/report.hpp"
#include "swf/workflow.hpp"

namespace swf {

struct RunConfig {
    std::string output_dir;
    bool write_json = true;
    bool write_md = true;
    bool write_dot = true;
    std::vector<std::string> fields_of_interest;  // empty: all non-key fields
    double confidence = 0.95;
    double margin = 0.05;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> export_sample_path;
};

struct RunOutcome {
    ExecResult exec;
    std::vector<Indicator> indicators;
    bool any_fail = false;  // some indicator verdict is fail
};

// Parses a workflow file; relative data paths resolve against the file's
// directory (returned through base_dir).
Workflow parse_workflow_file(const std::string& path, std::string* base_dir = nullptr);

// Load, execute, analyze, and write the requested outputs atomically
// (report.json / report.md / workflow.dot plus the optional sample CSV).
RunOutcome run_workflow_file(const std::string& workflow_path, const RunConfig& config);

// Final-sample CSV in schema order, RFC 4180.
std::string export_sample_csv(const DataSet& d);

}  // namespace swf
