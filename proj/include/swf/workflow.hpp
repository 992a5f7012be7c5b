#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "swf/constraint.hpp"
#include "swf/schema.hpp"

namespace swf {

enum class LoaderKind { Csv, Json };

const char* to_string(LoaderKind k);

struct InputDecl {
    LoaderKind kind = LoaderKind::Csv;
    std::string path;
    MetadataSchema schema;
    bool operator==(const InputDecl&) const = default;
};

struct Step;

struct FilterStep {
    ConstraintPtr constraint;
    bool operator==(const FilterStep& o) const { return *constraint == *o.constraint; }
};

struct RandomStep {
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    bool operator==(const RandomStep&) const = default;
};

struct SystematicStep {
    std::int64_t n = 0;
    std::string order_field;
    bool ascending = true;
    std::uint64_t seed = 0;
    bool operator==(const SystematicStep&) const = default;
};

struct ManualStep {
    std::vector<std::string> ids;
    bool operator==(const ManualStep&) const = default;
};

struct Branch {
    std::string label;
    std::vector<Step> steps;
    bool operator==(const Branch&) const;
};

struct GroupStep {
    std::vector<Branch> branches;
    bool operator==(const GroupStep&) const = default;
};

struct Stratum {
    std::string label;
    ConstraintPtr where;
    bool operator==(const Stratum& o) const {
        return label == o.label && *where == *o.where;
    }
};

struct StratifiedStep {
    std::vector<Stratum> strata;
    std::int64_t take = 0;
    std::uint64_t seed = 0;
    bool operator==(const StratifiedStep&) const = default;
};

struct ClusterStep {
    std::vector<Stratum> strata;
    std::int64_t pick = 0;
    std::uint64_t seed = 0;
    bool operator==(const ClusterStep&) const = default;
};

struct QuotaBranch {
    Stratum stratum;
    std::vector<std::string> ids;
    bool operator==(const QuotaBranch&) const = default;
};

struct QuotaStep {
    std::vector<QuotaBranch> branches;
    bool operator==(const QuotaStep&) const = default;
};

struct UnionStep {
    bool operator==(const UnionStep&) const = default;
};

struct IntersectionStep {
    bool operator==(const IntersectionStep&) const = default;
};

struct AddMetadataStep {
    LoaderKind kind = LoaderKind::Csv;
    std::string path;
    std::string join_key;
    bool operator==(const AddMetadataStep&) const = default;
};

using StepNode = std::variant<FilterStep, RandomStep, SystematicStep, ManualStep, GroupStep,
                              StratifiedStep, ClusterStep, QuotaStep, UnionStep,
                              IntersectionStep, AddMetadataStep>;

struct Step {
    StepNode node;
    SourcePos pos;  // not part of structural equality
    bool operator==(const Step& o) const { return node == o.node; }
};

inline bool Branch::operator==(const Branch& o) const {
    return label == o.label && steps == o.steps;
}

struct Workflow {
    InputDecl input;
    std::vector<Step> steps;
    bool operator==(const Workflow&) const = default;
};

}  // namespace swf
