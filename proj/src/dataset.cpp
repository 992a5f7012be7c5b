#include "swf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "swf/error.hpp"

namespace swf {

void MetadataSchema::check() const {
    if (entries.empty()) throw Error("schema has no fields");
    std::unordered_set<std::string> seen;
    for (const auto& e : entries) {
        if (e.name.empty()) throw Error("schema field with empty name");
        if (!seen.insert(e.name).second)
            throw Error("duplicate schema field '" + e.name + "'");
    }
    auto kk = kind_of(key_field);
    if (!kk) throw Error("key field '" + key_field + "' is not declared");
    if (*kk != FieldKind::Text && *kk != FieldKind::Integer)
        throw Error("key field '" + key_field + "' must be text or int");
}

const MetadataValue& Artifact::value(const MetadataSchema& schema,
                                     const std::string& field) const {
    auto i = schema.index_of(field);
    if (!i || *i >= values.size()) throw Error("unknown field '" + field + "'");
    return values[*i];
}

namespace {

void validate_into(const DataSet& d, std::vector<Violation>& out) {
    if (d.depth == 0) {
        std::unordered_set<std::string> ids;
        for (const auto& a : d.artifacts) {
            if (a->id.empty())
                out.push_back({ViolationKind::EmptyId, "artifact with empty id"});
            else if (!ids.insert(a->id).second)
                out.push_back({ViolationKind::DuplicateId, "duplicate id '" + a->id + "'"});
        }
        return;
    }
    for (const auto& c : d.children) {
        if (c->depth != d.depth - 1)
            out.push_back({ViolationKind::DepthMismatch,
                           "child depth " + std::to_string(c->depth) + " under depth " +
                               std::to_string(d.depth)});
        if (d.schema && c->schema && !(*c->schema == *d.schema))
            out.push_back({ViolationKind::SchemaMismatch, "child schema differs from parent"});
        validate_into(*c, out);
    }
}

double quantile(const std::vector<double>& sorted, double p) {
    // Linear interpolation between order statistics (h = (n-1)p).
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<Violation> validate_dataset(const DataSet& d) {
    std::vector<Violation> out;
    validate_into(d, out);
    return out;
}

FieldSummary dataset_summary(const DataSet& d, const std::string& field) {
    if (d.depth != 0) throw Error("dataset_summary requires a depth-0 set");
    if (!d.schema) throw Error("dataset has no schema");
    auto idx = d.schema->index_of(field);
    if (!idx) throw Error("unknown field '" + field + "'");
    const FieldKind kind = d.schema->entries[*idx].kind;

    FieldSummary s;
    s.is_date = kind == FieldKind::Date;

    const bool numeric = kind == FieldKind::Integer || kind == FieldKind::Real ||
                         kind == FieldKind::Date;
    std::vector<double> vals;
    std::map<std::string, std::size_t> freq;
    for (const auto& a : d.artifacts) {
        const MetadataValue& v = a->values[*idx];
        if (v.missing()) {
            ++s.missing;
            continue;
        }
        ++s.count;
        if (numeric)
            vals.push_back(*v.numeric());
        else
            ++freq[v.display()];
    }

    if (!numeric) {
        s.frequencies.assign(freq.begin(), freq.end());
        return s;
    }
    if (vals.empty()) return s;

    std::sort(vals.begin(), vals.end());
    NumericSummary n;
    n.min = vals.front();
    n.max = vals.back();
    n.median = quantile(vals, 0.5);
    n.q1 = quantile(vals, 0.25);
    n.q3 = quantile(vals, 0.75);

    double sum = 0;
    for (double v : vals) sum += v;
    n.mean = sum / static_cast<double>(vals.size());

    if (vals.size() >= 2) {
        double ss = 0;
        for (double v : vals) ss += (v - n.mean) * (v - n.mean);
        n.stddev = std::sqrt(ss / static_cast<double>(vals.size() - 1));
    }

    // Mode: ties broken towards the smallest value; vals is sorted so the
    // first run with maximal length wins.
    std::size_t best = 0, run = 0;
    double best_val = vals.front(), run_val = vals.front();
    for (double v : vals) {
        if (v == run_val) {
            ++run;
        } else {
            run_val = v;
            run = 1;
        }
        if (run > best) {
            best = run;
            best_val = run_val;
        }
    }
    n.mode = best_val;

    s.numeric = n;
    return s;
}

}  // namespace swf
