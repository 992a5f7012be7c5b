#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "swf/stats.hpp"
#include "swf/trace.hpp"
#include "swf/workflow.hpp"

namespace swf {

enum class IndicatorKind { CochranCheck, KsComparison, ChiSquareComparison, Coverage,
                           DescriptiveDelta };
enum class Verdict { Pass, Warn, Fail, NotApplicable };

const char* to_string(IndicatorKind k);
const char* to_string(Verdict v);

struct Indicator {
    IndicatorKind kind;
    int from_set = 0;
    int to_set = 0;
    std::string field;  // empty when not field-specific
    nlohmann::ordered_json payload;
    Verdict verdict = Verdict::NotApplicable;
    std::string text;
};

struct IndicatorOptions {
    std::vector<std::string> fields_of_interest;  // empty: all non-key schema fields
    double confidence = 0.95;
    double margin = 0.05;
    double significance = 0.05;
    std::size_t histogram_bins = 10;
};

// Representativeness indicators per operator edge: Cochran adequacy for every
// random stage, KS / chi-square distribution comparisons per field for every
// selection stage, and final-sample coverage against the initial frame.
std::vector<Indicator> auto_indicators(const ExecutionTrace& trace,
                                       const IndicatorOptions& opts = {});

// Executed-workflow diagram, one node per intermediate set.
std::string emit_dot(const ExecutionTrace& trace);

// Static workflow shape (pre-execution), operator nodes only.
std::string emit_workflow_dot(const Workflow& w);

std::string emit_report_json(const ExecutionTrace& trace,
                             const std::vector<Indicator>& indicators,
                             const IndicatorOptions& opts = {});
std::string emit_report_markdown(const ExecutionTrace& trace,
                                 const std::vector<Indicator>& indicators);

}  // namespace swf
