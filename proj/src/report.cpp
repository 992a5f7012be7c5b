#include "swf/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "swf/error.hpp"

namespace swf {

namespace {

using ordered_json = nlohmann::ordered_json;

bool numeric_field(FieldKind k) {
    return k == FieldKind::Integer || k == FieldKind::Real || k == FieldKind::Date;
}

std::vector<double> collect_numeric(const DataSet& d, std::size_t field_idx) {
    std::vector<double> out;
    for (const auto& a : d.artifacts)
        if (auto v = a->values[field_idx].numeric()) out.push_back(*v);
    return out;
}

std::vector<std::string> collect_text(const DataSet& d, std::size_t field_idx) {
    std::vector<std::string> out;
    for (const auto& a : d.artifacts)
        if (!a->values[field_idx].missing()) out.push_back(a->values[field_idx].display());
    return out;
}

std::map<std::string, std::size_t> count_categories(const DataSet& d, std::size_t field_idx) {
    std::map<std::string, std::size_t> out;
    for (const auto& a : d.artifacts)
        if (!a->values[field_idx].missing()) ++out[a->values[field_idx].display()];
    return out;
}

std::vector<std::string> fields_of_interest(const ExecutionTrace& trace,
                                            const IndicatorOptions& opts) {
    if (!opts.fields_of_interest.empty()) return opts.fields_of_interest;
    std::vector<std::string> out;
    const auto& schema = *trace.initial().data->schema;
    for (const auto& e : schema.entries)
        if (e.name != schema.key_field) out.push_back(e.name);
    return out;
}

bool selection_kind(const std::string& kind) {
    return kind == "filter" || kind == "random" || kind == "systematic" || kind == "manual";
}

Indicator cochran_indicator(const TraceNode& node, const TraceNode& parent,
                            const IndicatorOptions& opts) {
    Indicator ind;
    ind.kind = IndicatorKind::CochranCheck;
    ind.from_set = parent.set_id;
    ind.to_set = node.set_id;

    stats::CochranParams params;
    params.frame_size = parent.size;
    params.confidence = opts.confidence;
    params.margin = opts.margin;
    auto res = stats::cochran_min_sample(params);

    ind.payload = {{"frame_size", parent.size},
                   {"confidence", opts.confidence},
                   {"margin", opts.margin},
                   {"z", res.z},
                   {"n0", res.n0},
                   {"minimum", res.minimum},
                   {"actual", node.size}};
    if (node.size >= res.minimum) {
        ind.verdict = Verdict::Pass;
        ind.text = "sample size " + std::to_string(node.size) +
                   " meets the Cochran minimum " + std::to_string(res.minimum) +
                   " for a frame of " + std::to_string(parent.size);
    } else {
        ind.verdict = Verdict::Fail;
        ind.text = "sample size " + std::to_string(node.size) +
                   " is below the Cochran minimum " + std::to_string(res.minimum) +
                   " for a frame of " + std::to_string(parent.size);
    }
    return ind;
}

Indicator ks_indicator(const TraceNode& node, const TraceNode& parent,
                       std::size_t parent_idx, std::size_t node_idx,
                       const std::string& field, const IndicatorOptions& opts) {
    Indicator ind;
    ind.kind = IndicatorKind::KsComparison;
    ind.from_set = parent.set_id;
    ind.to_set = node.set_id;
    ind.field = field;

    auto xs = collect_numeric(*parent.data, parent_idx);
    auto ys = collect_numeric(*node.data, node_idx);
    if (xs.empty() || ys.empty()) {
        ind.verdict = Verdict::NotApplicable;
        ind.text = "no non-missing values to compare";
        return ind;
    }
    auto r = stats::ks_two_sample(std::move(xs), std::move(ys));
    ind.payload = {{"d", r.d},
                   {"n_frame", r.n1},
                   {"n_sample", r.n2},
                   {"n_effective", r.n_effective},
                   {"p_value", r.p_value},
                   {"small_sample", r.small_sample}};
    std::ostringstream txt;
    txt << "KS D=" << r.d << ", p=" << r.p_value;
    if (r.p_value >= opts.significance) {
        ind.verdict = r.small_sample ? Verdict::Warn : Verdict::Pass;
        txt << " >= " << opts.significance << ": no evidence of distribution shift";
        if (r.small_sample) txt << " (small sample, asymptotic p is rough)";
    } else {
        ind.verdict = Verdict::Fail;
        txt << " < " << opts.significance << ": distributions differ on '" << field << "'";
    }
    ind.text = txt.str();
    return ind;
}

Indicator chi_square_indicator(const TraceNode& node, const TraceNode& parent,
                               std::size_t parent_idx, std::size_t node_idx,
                               const std::string& field, const IndicatorOptions& opts) {
    Indicator ind;
    ind.kind = IndicatorKind::ChiSquareComparison;
    ind.from_set = parent.set_id;
    ind.to_set = node.set_id;
    ind.field = field;

    auto frame_counts = count_categories(*parent.data, parent_idx);
    auto sample_counts = count_categories(*node.data, node_idx);
    std::size_t frame_total = 0, sample_total = 0;
    for (const auto& [k, c] : frame_counts) frame_total += c;
    for (const auto& [k, c] : sample_counts) sample_total += c;

    if (frame_counts.size() < 2 || sample_total == 0) {
        ind.verdict = Verdict::NotApplicable;
        ind.text = "not enough categories or sample values";
        return ind;
    }

    std::vector<double> observed, expected;
    for (const auto& [cat, frame_c] : frame_counts) {
        auto it = sample_counts.find(cat);
        observed.push_back(it == sample_counts.end() ? 0.0
                                                     : static_cast<double>(it->second));
        expected.push_back(static_cast<double>(frame_c) * static_cast<double>(sample_total) /
                           static_cast<double>(frame_total));
    }
    auto r = stats::chi_square_gof(observed, expected);
    ind.payload = {{"statistic", r.statistic},
                   {"df", r.df},
                   {"p_value", r.p_value},
                   {"categories", frame_counts.size()},
                   {"low_expected", r.low_expected}};
    std::ostringstream txt;
    txt << "chi-square=" << r.statistic << ", df=" << r.df << ", p=" << r.p_value;
    if (r.p_value >= opts.significance) {
        ind.verdict = r.low_expected ? Verdict::Warn : Verdict::Pass;
        txt << ": category proportions preserved";
        if (r.low_expected) txt << " (some expected counts < 5)";
    } else {
        ind.verdict = Verdict::Fail;
        txt << ": category proportions shifted on '" << field << "'";
    }
    ind.text = txt.str();
    return ind;
}

std::string short_params(const TraceNode& n) {
    static const char* keep[] = {"constraint", "n", "seed", "order_by", "direction",
                                 "stratum", "join"};
    std::string out;
    for (const auto& [k, v] : n.params) {
        if (std::find_if(std::begin(keep), std::end(keep),
                         [&](const char* s) { return k == s; }) == std::end(keep))
            continue;
        if (!out.empty()) out += ", ";
        out += k + "=" + v;
    }
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

ordered_json summary_json(const FieldSummary& s) {
    ordered_json j;
    j["count"] = s.count;
    j["missing"] = s.missing;
    if (s.numeric) {
        const auto& n = *s.numeric;
        j["mean"] = n.mean;
        j["median"] = n.median;
        j["min"] = n.min;
        j["max"] = n.max;
        j["q1"] = n.q1;
        j["q3"] = n.q3;
        j["mode"] = n.mode;
        if (n.stddev) j["stddev"] = *n.stddev;
    }
    if (!s.frequencies.empty()) {
        // array of [value, count] pairs; object insertion is linear per key,
        // which turns quadratic on high-cardinality fields
        ordered_json freq = ordered_json::array();
        for (const auto& [v, c] : s.frequencies) freq.push_back({v, c});
        j["frequencies"] = freq;
    }
    return j;
}

}  // namespace

const char* to_string(IndicatorKind k) {
    switch (k) {
        case IndicatorKind::CochranCheck: return "cochran-check";
        case IndicatorKind::KsComparison: return "ks-comparison";
        case IndicatorKind::ChiSquareComparison: return "chi-square-comparison";
        case IndicatorKind::Coverage: return "coverage";
        case IndicatorKind::DescriptiveDelta: return "descriptive-delta";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Warn: return "warn";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::vector<Indicator> auto_indicators(const ExecutionTrace& trace,
                                       const IndicatorOptions& opts) {
    std::vector<Indicator> out;
    const auto fields = fields_of_interest(trace, opts);

    for (const auto& node : trace.nodes) {
        if (node.parents.empty() || node.depth != 0) continue;
        const TraceNode& parent = trace.node(node.parents.front());

        if (node.op_kind == "random") out.push_back(cochran_indicator(node, parent, opts));

        if (!selection_kind(node.op_kind) || parent.depth != 0) continue;
        for (const auto& field : fields) {
            auto pi = parent.data->schema->index_of(field);
            auto ni = node.data->schema->index_of(field);
            if (!pi || !ni) continue;
            const FieldKind kind = parent.data->schema->entries[*pi].kind;
            if (numeric_field(kind))
                out.push_back(ks_indicator(node, parent, *pi, *ni, field, opts));
            else
                out.push_back(chi_square_indicator(node, parent, *pi, *ni, field, opts));
        }
    }

    // Coverage of the final sample against the initial frame.
    const TraceNode& frame = trace.initial();
    const TraceNode& last = trace.final_node();
    if (last.depth == 0 && last.set_id != frame.set_id) {
        for (const auto& field : fields) {
            auto fi = frame.data->schema->index_of(field);
            auto li = last.data->schema->index_of(field);
            if (!fi || !li) continue;
            Indicator ind;
            ind.kind = IndicatorKind::Coverage;
            ind.from_set = frame.set_id;
            ind.to_set = last.set_id;
            ind.field = field;
            const FieldKind kind = frame.data->schema->entries[*fi].kind;
            double ratio;
            std::size_t frame_distinct;
            if (numeric_field(kind)) {
                auto fv = collect_numeric(*frame.data, *fi);
                if (fv.empty()) continue;
                std::set<double> fd(fv.begin(), fv.end());
                frame_distinct = fd.size();
                ratio = stats::coverage(collect_numeric(*last.data, *li), fv);
            } else {
                auto fv = collect_text(*frame.data, *fi);
                if (fv.empty()) continue;
                std::set<std::string> fd(fv.begin(), fv.end());
                frame_distinct = fd.size();
                ratio = stats::coverage_text(collect_text(*last.data, *li), fv);
            }
            ind.payload = {{"ratio", ratio}, {"frame_distinct", frame_distinct}};
            ind.verdict = ratio >= 1.0 ? Verdict::Pass : Verdict::Warn;
            std::ostringstream txt;
            txt << "sample covers " << ratio * 100 << "% of the frame's distinct classes";
            ind.text = txt.str();
            out.push_back(std::move(ind));
        }
    }
    return out;
}

std::string emit_dot(const ExecutionTrace& trace) {
    std::ostringstream out;
    out << "digraph sampling_workflow {\n";
    out << "  rankdir=TB;\n";
    out << "  node [shape=box, style=rounded];\n";
    for (const auto& n : trace.nodes) {
        out << "  s" << n.set_id << " [label=\"" << dot_escape(n.label) << " ("
            << n.size << ")\"];\n";
    }
    for (const auto& n : trace.nodes) {
        const std::string params = short_params(n);
        for (int p : n.parents) {
            out << "  s" << p << " -> s" << n.set_id << " [label=\""
                << dot_escape(n.op_kind);
            if (!params.empty()) out << "\\n" << dot_escape(params);
            out << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

namespace {

struct DotBuilder {
    std::ostringstream out;
    int next_id = 0;

    int add(const std::string& label) {
        int id = next_id++;
        out << "  op" << id << " [label=\"" << dot_escape(label) << "\"];\n";
        return id;
    }

    void edge(int from, int to) { out << "  op" << from << " -> op" << to << ";\n"; }
};

std::string describe(const Step& s) {
    if (const auto* f = std::get_if<FilterStep>(&s.node))
        return "filter " + print_constraint(*f->constraint);
    if (const auto* r = std::get_if<RandomStep>(&s.node))
        return "random n=" + std::to_string(r->n) + " seed=" + std::to_string(r->seed);
    if (const auto* sy = std::get_if<SystematicStep>(&s.node))
        return "systematic n=" + std::to_string(sy->n) + " by " + sy->order_field;
    if (const auto* m = std::get_if<ManualStep>(&s.node))
        return "manual (" + std::to_string(m->ids.size()) + " ids)";
    if (const auto* st = std::get_if<StratifiedStep>(&s.node))
        return "stratified (" + std::to_string(st->strata.size()) + " strata, take " +
               std::to_string(st->take) + ")";
    if (const auto* cl = std::get_if<ClusterStep>(&s.node))
        return "cluster (" + std::to_string(cl->strata.size()) + " groups, pick " +
               std::to_string(cl->pick) + ")";
    if (const auto* q = std::get_if<QuotaStep>(&s.node))
        return "quota (" + std::to_string(q->branches.size()) + " strata)";
    if (std::holds_alternative<UnionStep>(s.node)) return "union";
    if (std::holds_alternative<IntersectionStep>(s.node)) return "intersection";
    const auto& am = std::get<AddMetadataStep>(s.node);
    return "add_metadata join " + am.join_key;
}

std::vector<int> emit_static_steps(DotBuilder& b, std::vector<int> tails,
                                   const std::vector<Step>& steps) {
    for (const auto& s : steps) {
        if (const auto* g = std::get_if<GroupStep>(&s.node)) {
            std::vector<int> merged;
            for (const auto& br : g->branches) {
                int entry = b.add("branch " + br.label);
                for (int t : tails) b.edge(t, entry);
                auto ends = emit_static_steps(b, {entry}, br.steps);
                merged.insert(merged.end(), ends.begin(), ends.end());
            }
            tails = std::move(merged);
            continue;
        }
        int id = b.add(describe(s));
        for (int t : tails) b.edge(t, id);
        tails = {id};
    }
    return tails;
}

}  // namespace

std::string emit_workflow_dot(const Workflow& w) {
    DotBuilder b;
    b.out << "digraph workflow {\n  rankdir=TB;\n  node [shape=box];\n";
    int input = b.add(std::string("input ") + to_string(w.input.kind) + " " + w.input.path);
    emit_static_steps(b, {input}, w.steps);
    b.out << "}\n";
    return b.out.str();
}

std::string emit_report_json(const ExecutionTrace& trace,
                             const std::vector<Indicator>& indicators,
                             const IndicatorOptions& opts) {
    ordered_json doc;
    doc["schema_version"] = 1;

    const auto fields = fields_of_interest(trace, opts);

    ordered_json nodes = ordered_json::array();
    for (const auto& n : trace.nodes) {
        ordered_json jn;
        jn["set_id"] = n.set_id;
        jn["label"] = n.label;
        jn["op"] = n.op_kind;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : n.params) params[k] = v;
        jn["params"] = params;
        jn["parents"] = n.parents;
        jn["size"] = n.size;
        jn["depth"] = n.depth;
        if (!n.warnings.empty()) jn["warnings"] = n.warnings;
        if (!n.summaries.empty()) {
            ordered_json sums = ordered_json::object();
            for (const auto& [field, s] : n.summaries) sums[field] = summary_json(s);
            jn["summaries"] = sums;
        }
        if (n.depth == 0 && n.data) {
            ordered_json hists = ordered_json::object();
            for (const auto& field : fields) {
                auto fi = n.data->schema->index_of(field);
                if (!fi || !numeric_field(n.data->schema->entries[*fi].kind)) continue;
                auto vals = collect_numeric(*n.data, *fi);
                auto h = stats::histogram(vals, opts.histogram_bins);
                ordered_json jh;
                jh["edges"] = h.edges;
                jh["counts"] = h.counts;
                jh["overflow"] = h.overflow;
                jh["missing"] = n.data->artifacts.size() - vals.size();
                hists[field] = jh;
            }
            if (!hists.empty()) jn["histograms"] = hists;
        }
        nodes.push_back(std::move(jn));
    }
    doc["nodes"] = nodes;

    ordered_json edges = ordered_json::array();
    for (const auto& n : trace.nodes)
        for (int p : n.parents)
            edges.push_back({{"from", p}, {"to", n.set_id}, {"op", n.op_kind}});
    doc["edges"] = edges;

    ordered_json inds = ordered_json::array();
    for (const auto& ind : indicators) {
        ordered_json ji;
        ji["kind"] = to_string(ind.kind);
        ji["from"] = ind.from_set;
        ji["to"] = ind.to_set;
        if (!ind.field.empty()) ji["field"] = ind.field;
        ji["verdict"] = to_string(ind.verdict);
        ji["text"] = ind.text;
        if (!ind.payload.is_null()) ji["payload"] = ind.payload;
        inds.push_back(std::move(ji));
    }
    doc["indicators"] = inds;

    return doc.dump(2) + "\n";
}

std::string emit_report_markdown(const ExecutionTrace& trace,
                                 const std::vector<Indicator>& indicators) {
    std::ostringstream out;
    out << "# Sampling workflow report\n\n";

    out << "## Stages\n\n";
    out << "| set | op | size | depth | parents |\n";
    out << "|-----|----|------|-------|---------|\n";
    for (const auto& n : trace.nodes) {
        out << "| " << n.label << " | " << n.op_kind << " | " << n.size << " | " << n.depth
            << " | ";
        for (std::size_t i = 0; i < n.parents.size(); ++i) {
            if (i) out << ", ";
            out << "#" << n.parents[i];
        }
        out << " |\n";
    }
    out << "\n";

    for (const auto& n : trace.nodes) {
        if (n.summaries.empty()) continue;
        out << "### " << n.label << " (" << n.op_kind << ", size " << n.size << ")\n\n";
        out << "| field | count | missing | mean | median | stddev | min | max | mode |\n";
        out << "|-------|-------|---------|------|--------|--------|-----|-----|------|\n";
        for (const auto& [field, s] : n.summaries) {
            out << "| " << field << " | " << s.count << " | " << s.missing << " | ";
            if (s.numeric) {
                const auto& num = *s.numeric;
                out << format_real(num.mean) << " | " << format_real(num.median) << " | "
                    << (num.stddev ? format_real(*num.stddev) : "-") << " | "
                    << format_real(num.min) << " | " << format_real(num.max) << " | "
                    << format_real(num.mode);
            } else {
                out << "- | - | - | - | - | " << s.frequencies.size() << " distinct";
            }
            out << " |\n";
        }
        out << "\n";
        for (const auto& w : n.warnings) out << "- warning: " << w << "\n";
        if (!n.warnings.empty()) out << "\n";
    }

    out << "## Indicators\n\n";
    if (indicators.empty()) out << "(none)\n";
    for (const auto& ind : indicators) {
        out << "- **" << to_string(ind.verdict) << "** " << to_string(ind.kind) << " Set #"
            << ind.from_set << " -> Set #" << ind.to_set;
        if (!ind.field.empty()) out << " [" << ind.field << "]";
        out << ": " << ind.text << "\n";
    }
    return out.str();
}

}  // namespace swf
