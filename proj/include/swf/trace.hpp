#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "swf/dataset.hpp"

namespace swf {

// One intermediate set produced during workflow execution.
struct TraceNode {
    int set_id = 0;
    std::string label;              // "Set #k", branch/stratum name appended when present
    std::vector<int> parents;       // empty only for the initial sampling frame
    std::string op_kind;            // "input", "filter", "random", ...
    std::vector<std::pair<std::string, std::string>> params;
    std::size_t size = 0;
    int depth = 0;
    DataSetPtr data;
    std::map<std::string, FieldSummary> summaries;  // depth-0 nodes, fields of interest
    std::vector<std::string> warnings;

    std::string param(const std::string& key) const {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return {};
    }
};

struct ExecutionTrace {
    std::vector<TraceNode> nodes;

    const TraceNode& node(int set_id) const { return nodes.at(static_cast<std::size_t>(set_id)); }
    const TraceNode& initial() const { return nodes.front(); }
    const TraceNode& final_node() const { return nodes.back(); }
};

}  // namespace swf
