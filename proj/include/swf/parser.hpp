#pragma once

#include <string>

#include "swf/constraint.hpp"
#include "swf/workflow.hpp"

namespace swf {

// Parses a full DSL document and checks every constraint against the declared
// input schema. Throws ParseError.
Workflow parse_workflow(const std::string& text);

// Parses a standalone constraint expression (no schema check).
ConstraintPtr parse_constraint(const std::string& text);

// Canonical document form; parse_workflow(pretty_print(w)) == w structurally.
std::string pretty_print(const Workflow& w);

}  // namespace swf
