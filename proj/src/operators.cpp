#include "swf/operators.hpp"

#include <algorithm>
#include <filesystem>
#include <unordered_map>
#include <unordered_set>

#include "swf/error.hpp"

namespace swf {

namespace {

DataSetPtr subset_in_input_order(const DataSet& d, const std::vector<std::size_t>& indices) {
    auto out = std::make_shared<DataSet>();
    out->depth = 0;
    out->schema = d.schema;
    out->artifacts.reserve(indices.size());
    for (std::size_t i : indices) out->artifacts.push_back(d.artifacts[i]);
    return out;
}

void require_depth0(const DataSet& d, const char* op) {
    if (d.depth != 0) throw ExecError(std::string(op) + ": input must be a set of artifacts");
}

}  // namespace

FilterOutcome filter_op(const DataSet& d, const ConstraintExpr& c) {
    require_depth0(d, "filter");
    FilterOutcome out;
    auto result = std::make_shared<DataSet>();
    result->depth = 0;
    result->schema = d.schema;
    for (const auto& a : d.artifacts) {
        EvalStats stats;
        if (eval_constraint(c, *a, *d.schema, &stats))
            result->artifacts.push_back(a);
        else if (stats.touched_missing)
            ++out.excluded_missing;
    }
    out.data = std::move(result);
    return out;
}

DataSetPtr random_op(const DataSet& d, std::int64_t n, std::uint64_t seed) {
    require_depth0(d, "random");
    const auto size = static_cast<std::int64_t>(d.artifacts.size());
    if (n < 0 || n > size)
        throw ExecError("random: sample size " + std::to_string(n) +
                        " exceeds input size " + std::to_string(size));

    std::vector<std::size_t> indices(d.artifacts.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;

    SeededRng rng(seed);
    for (std::int64_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(size - i)));
        std::swap(indices[static_cast<std::size_t>(i)], indices[j]);
    }
    indices.resize(static_cast<std::size_t>(n));
    std::sort(indices.begin(), indices.end());
    return subset_in_input_order(d, indices);
}

DataSetPtr systematic_op(const DataSet& d, std::int64_t n, const std::string& order_field,
                         bool ascending, std::uint64_t seed) {
    require_depth0(d, "systematic");
    const auto size = static_cast<std::int64_t>(d.artifacts.size());
    if (n < 1) throw ExecError("systematic: sample size must be >= 1");
    if (n > size)
        throw ExecError("systematic: sample size " + std::to_string(n) +
                        " exceeds input size " + std::to_string(size));
    auto idx = d.schema->index_of(order_field);
    if (!idx) throw ExecError("systematic: unknown field '" + order_field + "'");
    const FieldKind kind = d.schema->entries[*idx].kind;
    if (kind != FieldKind::Integer && kind != FieldKind::Real && kind != FieldKind::Date)
        throw ExecError("systematic: field '" + order_field + "' is not orderable");

    std::vector<std::size_t> order(d.artifacts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto va = d.artifacts[a]->values[*idx].numeric();
        auto vb = d.artifacts[b]->values[*idx].numeric();
        if (!va || !vb) return static_cast<bool>(va);  // missing sorts last
        return ascending ? *va < *vb : *va > *vb;
    });

    const std::uint64_t k = static_cast<std::uint64_t>(size / n);
    SeededRng rng(seed);
    const std::uint64_t start = rng.below(k);
    std::vector<std::size_t> selected;
    for (std::int64_t i = 0; i < n; ++i)
        selected.push_back(order[start + static_cast<std::uint64_t>(i) * k]);
    std::sort(selected.begin(), selected.end());
    return subset_in_input_order(d, selected);
}

ManualOutcome manual_op(const DataSet& d, const std::vector<std::string>& ids) {
    require_depth0(d, "manual");
    std::unordered_set<std::string> wanted(ids.begin(), ids.end());
    std::unordered_set<std::string> found;
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < d.artifacts.size(); ++i) {
        if (wanted.count(d.artifacts[i]->id)) {
            indices.push_back(i);
            found.insert(d.artifacts[i]->id);
        }
    }
    ManualOutcome out;
    out.data = subset_in_input_order(d, indices);
    for (const auto& id : ids)
        if (!found.count(id)) out.unresolved.push_back(id);
    return out;
}

std::vector<DataSetPtr> group_strata(const DataSet& d, const std::vector<Stratum>& strata) {
    require_depth0(d, "group");
    std::vector<DataSetPtr> out;
    for (const auto& s : strata) out.push_back(filter_op(d, *s.where).data);
    return out;
}

std::vector<DataSetPtr> partition_strata(const DataSet& d, const std::vector<Stratum>& strata) {
    require_depth0(d, "stratified");
    std::vector<std::vector<std::size_t>> members(strata.size());
    std::vector<std::string> overlap, uncovered;
    for (std::size_t i = 0; i < d.artifacts.size(); ++i) {
        int hits = 0;
        for (std::size_t s = 0; s < strata.size(); ++s) {
            if (eval_constraint(*strata[s].where, *d.artifacts[i], *d.schema)) {
                ++hits;
                if (hits == 1) members[s].push_back(i);
            }
        }
        if (hits == 0 && uncovered.size() < 5) uncovered.push_back(d.artifacts[i]->id);
        if (hits > 1 && overlap.size() < 5) overlap.push_back(d.artifacts[i]->id);
    }
    if (!overlap.empty() || !uncovered.empty()) {
        std::string msg = "strata do not partition the input:";
        if (!overlap.empty()) {
            msg += " covered more than once:";
            for (const auto& id : overlap) msg += " " + id;
            msg += ";";
        }
        if (!uncovered.empty()) {
            msg += " uncovered:";
            for (const auto& id : uncovered) msg += " " + id;
        }
        throw ExecError(msg);
    }
    std::vector<DataSetPtr> out;
    for (const auto& m : members) out.push_back(subset_in_input_order(d, m));
    return out;
}

DataSetPtr union_op(const DataSet& d) {
    if (d.depth < 1) throw ExecError("union: input must be a set of sets");
    auto out = std::make_shared<DataSet>();
    out->depth = d.depth - 1;
    out->schema = d.schema;
    if (d.depth == 1) {
        std::unordered_set<std::string> seen;
        for (const auto& child : d.children)
            for (const auto& a : child->artifacts)
                if (seen.insert(a->id).second) out->artifacts.push_back(a);
    } else {
        for (const auto& child : d.children)
            for (const auto& grandchild : child->children)
                out->children.push_back(grandchild);
    }
    return out;
}

DataSetPtr intersection_op(const DataSet& d) {
    if (d.depth != 1)
        throw ExecError("intersection: input must be a set of artifact sets");
    if (d.children.empty()) throw ExecError("intersection: input has no children");
    auto out = std::make_shared<DataSet>();
    out->depth = 0;
    out->schema = d.schema;
    for (const auto& a : d.children.front()->artifacts) {
        bool everywhere = true;
        for (std::size_t c = 1; c < d.children.size() && everywhere; ++c) {
            everywhere = std::any_of(d.children[c]->artifacts.begin(),
                                     d.children[c]->artifacts.end(),
                                     [&](const ArtifactPtr& b) { return b->id == a->id; });
        }
        if (everywhere) out->artifacts.push_back(a);
    }
    return out;
}

AddMetadataOutcome add_metadata_op(const DataSet& d, const InferredTable& table,
                                   const std::string& join_key) {
    require_depth0(d, "add_metadata");
    if (!d.schema->kind_of(join_key))
        throw ExecError("add_metadata: join key '" + join_key + "' not in input schema");
    auto right_key = table.schema.index_of(join_key);
    if (!right_key)
        throw ExecError("add_metadata: join key '" + join_key + "' not in metadata source");

    // Right-side rows keyed by the join value's display form.
    std::unordered_map<std::string, std::size_t> right;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const MetadataValue& key = table.rows[r][*right_key];
        if (key.missing()) continue;
        if (!right.emplace(key.display(), r).second)
            throw ExecError("add_metadata: duplicate join key '" + key.display() +
                            "' in metadata source");
    }

    auto schema = std::make_shared<MetadataSchema>(*d.schema);
    std::vector<std::size_t> new_cols;
    for (std::size_t c = 0; c < table.schema.entries.size(); ++c) {
        const auto& e = table.schema.entries[c];
        if (e.name == join_key) continue;
        if (schema->index_of(e.name))
            throw ExecError("add_metadata: field '" + e.name + "' already exists");
        schema->entries.push_back(e);
        new_cols.push_back(c);
    }

    AddMetadataOutcome out;
    out.added_fields = new_cols.size();
    const std::size_t left_key = *d.schema->index_of(join_key);

    auto result = std::make_shared<DataSet>();
    result->depth = 0;
    result->schema = schema;
    for (const auto& a : d.artifacts) {
        auto b = std::make_shared<Artifact>();
        b->id = a->id;
        b->values = a->values;
        b->values.resize(schema->entries.size());
        const MetadataValue& key = a->values[left_key];
        if (!key.missing()) {
            auto it = right.find(key.display());
            if (it != right.end()) {
                ++out.matched;
                for (std::size_t k = 0; k < new_cols.size(); ++k)
                    b->values[d.schema->entries.size() + k] = table.rows[it->second][new_cols[k]];
            }
        }
        result->artifacts.push_back(std::move(b));
    }
    out.data = std::move(result);
    return out;
}

// ---- workflow execution ----

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

struct Context {
    ExecutionTrace trace;
    const LoaderRegistry& loaders;
    const ExecOptions& opts;
    std::uint64_t op_ordinal = 0;

    std::uint64_t effective_seed(std::uint64_t declared) {
        const std::uint64_t ordinal = op_ordinal++;
        if (opts.seed_override) return mix_seed(*opts.seed_override, ordinal);
        return declared;
    }

    int add_node(DataSetPtr data, std::vector<int> parents, std::string op_kind,
                 Params params, const std::string& branch,
                 std::vector<std::string> warnings = {}) {
        TraceNode n;
        n.set_id = static_cast<int>(trace.nodes.size());
        n.label = "Set #" + std::to_string(n.set_id);
        n.parents = std::move(parents);
        n.op_kind = std::move(op_kind);
        n.params = std::move(params);
        if (!branch.empty()) n.params.emplace_back("branch", branch);
        n.size = data->size();
        n.depth = data->depth;
        n.warnings = std::move(warnings);
        if (data->depth == 0) {
            std::vector<std::string> fields = opts.summary_fields;
            if (fields.empty())
                for (const auto& e : data->schema->entries)
                    if (e.name != data->schema->key_field) fields.push_back(e.name);
            for (const auto& f : fields)
                if (data->schema->index_of(f)) n.summaries[f] = dataset_summary(*data, f);
        }
        n.data = std::move(data);
        trace.nodes.push_back(std::move(n));
        return trace.nodes.back().set_id;
    }
};

// Current value flowing down the step chain: the dataset plus the trace nodes
// that back it (one node for depth-0 values, the child nodes for aggregates).
struct Current {
    DataSetPtr data;
    std::vector<int> ids;
};

DataSetPtr make_aggregate(SchemaPtr schema, std::vector<DataSetPtr> children) {
    auto agg = std::make_shared<DataSet>();
    agg->depth = children.empty() ? 1 : children.front()->depth + 1;
    agg->schema = std::move(schema);
    agg->children = std::move(children);
    return agg;
}

std::string resolve_path(const Context& ctx, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute() || ctx.opts.base_dir.empty()) return path;
    return (std::filesystem::path(ctx.opts.base_dir) / p).string();
}

Current exec_steps(Context& ctx, Current cur, const std::vector<Step>& steps,
                   const std::string& branch);

Current exec_step(Context& ctx, Current cur, const Step& s, const std::string& branch) {
    if (const auto* f = std::get_if<FilterStep>(&s.node)) {
        FilterOutcome out = filter_op(*cur.data, *f->constraint);
        int id = ctx.add_node(out.data, cur.ids, "filter",
                              {{"constraint", print_constraint(*f->constraint)},
                               {"excluded_missing", std::to_string(out.excluded_missing)}},
                              branch);
        return {out.data, {id}};
    }
    if (const auto* r = std::get_if<RandomStep>(&s.node)) {
        const std::uint64_t seed = ctx.effective_seed(r->seed);
        DataSetPtr out = random_op(*cur.data, r->n, seed);
        int id = ctx.add_node(out, cur.ids, "random",
                              {{"n", std::to_string(r->n)}, {"seed", std::to_string(seed)}},
                              branch);
        return {out, {id}};
    }
    if (const auto* sy = std::get_if<SystematicStep>(&s.node)) {
        const std::uint64_t seed = ctx.effective_seed(sy->seed);
        DataSetPtr out = systematic_op(*cur.data, sy->n, sy->order_field, sy->ascending, seed);
        int id = ctx.add_node(out, cur.ids, "systematic",
                              {{"n", std::to_string(sy->n)},
                               {"order_by", sy->order_field},
                               {"direction", sy->ascending ? "asc" : "desc"},
                               {"seed", std::to_string(seed)}},
                              branch);
        return {out, {id}};
    }
    if (const auto* m = std::get_if<ManualStep>(&s.node)) {
        ManualOutcome out = manual_op(*cur.data, m->ids);
        std::vector<std::string> warnings;
        for (const auto& id : out.unresolved) warnings.push_back("unresolved id '" + id + "'");
        int id = ctx.add_node(out.data, cur.ids, "manual",
                              {{"requested", std::to_string(m->ids.size())},
                               {"unresolved", std::to_string(out.unresolved.size())}},
                              branch, std::move(warnings));
        return {out.data, {id}};
    }
    if (const auto* g = std::get_if<GroupStep>(&s.node)) {
        std::vector<DataSetPtr> children;
        std::vector<int> ids;
        for (const auto& b : g->branches) {
            Current sub = exec_steps(ctx, cur, b.steps, b.label);
            children.push_back(sub.data);
            for (int i : sub.ids) ids.push_back(i);
        }
        return {make_aggregate(cur.data->schema, std::move(children)), std::move(ids)};
    }
    if (const auto* st = std::get_if<StratifiedStep>(&s.node)) {
        const std::uint64_t seed = ctx.effective_seed(st->seed);
        std::vector<DataSetPtr> subsets = partition_strata(*cur.data, st->strata);
        std::vector<DataSetPtr> children;
        std::vector<int> ids;
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            int sub_id = ctx.add_node(
                subsets[i], cur.ids, "filter",
                {{"constraint", print_constraint(*st->strata[i].where)},
                 {"stratum", st->strata[i].label}},
                branch);
            const std::uint64_t stratum_seed = mix_seed(seed, i);
            DataSetPtr sampled = random_op(*subsets[i], st->take, stratum_seed);
            int id = ctx.add_node(sampled, {sub_id}, "random",
                                  {{"n", std::to_string(st->take)},
                                   {"seed", std::to_string(stratum_seed)},
                                   {"stratum", st->strata[i].label}},
                                  branch);
            children.push_back(sampled);
            ids.push_back(id);
        }
        return {make_aggregate(cur.data->schema, std::move(children)), std::move(ids)};
    }
    if (const auto* cl = std::get_if<ClusterStep>(&s.node)) {
        const std::uint64_t seed = ctx.effective_seed(cl->seed);
        if (cl->pick < 0 || cl->pick > static_cast<std::int64_t>(cl->strata.size()))
            throw ExecError("cluster: cannot pick " + std::to_string(cl->pick) + " of " +
                            std::to_string(cl->strata.size()) + " groups");
        std::vector<DataSetPtr> groups = group_strata(*cur.data, cl->strata);
        std::vector<int> group_ids;
        for (std::size_t i = 0; i < groups.size(); ++i)
            group_ids.push_back(ctx.add_node(
                groups[i], cur.ids, "filter",
                {{"constraint", print_constraint(*cl->strata[i].where)},
                 {"stratum", cl->strata[i].label}},
                branch));

        // Pick whole groups without replacement; keep declaration order.
        std::vector<std::size_t> order(groups.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        SeededRng rng(seed);
        for (std::int64_t i = 0; i < cl->pick; ++i) {
            const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(
                               static_cast<std::uint64_t>(order.size() - static_cast<std::size_t>(i))));
            std::swap(order[static_cast<std::size_t>(i)], order[j]);
        }
        order.resize(static_cast<std::size_t>(cl->pick));
        std::sort(order.begin(), order.end());

        std::vector<DataSetPtr> children;
        std::vector<int> ids;
        for (std::size_t i : order) {
            children.push_back(groups[i]);
            ids.push_back(group_ids[i]);
        }
        return {make_aggregate(cur.data->schema, std::move(children)), std::move(ids)};
    }
    if (const auto* q = std::get_if<QuotaStep>(&s.node)) {
        std::vector<Stratum> strata;
        for (const auto& b : q->branches) strata.push_back(b.stratum);
        std::vector<DataSetPtr> subsets = partition_strata(*cur.data, strata);
        std::vector<DataSetPtr> children;
        std::vector<int> ids;
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            int sub_id = ctx.add_node(
                subsets[i], cur.ids, "filter",
                {{"constraint", print_constraint(*strata[i].where)},
                 {"stratum", strata[i].label}},
                branch);
            ManualOutcome out = manual_op(*subsets[i], q->branches[i].ids);
            // An id that exists in the whole input but not in this stratum is a
            // misassignment, not a typo.
            std::vector<std::string> warnings;
            for (const auto& missing_id : out.unresolved) {
                bool in_input = std::any_of(
                    cur.data->artifacts.begin(), cur.data->artifacts.end(),
                    [&](const ArtifactPtr& a) { return a->id == missing_id; });
                if (in_input)
                    throw ExecError("quota: id '" + missing_id + "' is outside stratum '" +
                                    strata[i].label + "'");
                warnings.push_back("unresolved id '" + missing_id + "'");
            }
            int id = ctx.add_node(out.data, {sub_id}, "manual",
                                  {{"requested", std::to_string(q->branches[i].ids.size())},
                                   {"stratum", strata[i].label}},
                                  branch, std::move(warnings));
            children.push_back(out.data);
            ids.push_back(id);
        }
        return {make_aggregate(cur.data->schema, std::move(children)), std::move(ids)};
    }
    if (std::holds_alternative<UnionStep>(s.node)) {
        DataSetPtr out = union_op(*cur.data);
        int id = ctx.add_node(out, cur.ids, "union", {}, branch);
        return {out, {id}};
    }
    if (std::holds_alternative<IntersectionStep>(s.node)) {
        DataSetPtr out = intersection_op(*cur.data);
        int id = ctx.add_node(out, cur.ids, "intersection", {}, branch);
        return {out, {id}};
    }
    const auto& am = std::get<AddMetadataStep>(s.node);
    InferredTable table = load_inferred(am.kind, resolve_path(ctx, am.path));
    AddMetadataOutcome out = add_metadata_op(*cur.data, table, am.join_key);
    const double rate = cur.data->artifacts.empty()
                            ? 0.0
                            : static_cast<double>(out.matched) /
                                  static_cast<double>(cur.data->artifacts.size());
    int id = ctx.add_node(out.data, cur.ids, "add_metadata",
                          {{"source", am.path},
                           {"join", am.join_key},
                           {"matched", std::to_string(out.matched)},
                           {"match_rate", format_real(rate)},
                           {"added_fields", std::to_string(out.added_fields)}},
                          branch);
    return {out.data, {id}};
}

Current exec_steps(Context& ctx, Current cur, const std::vector<Step>& steps,
                   const std::string& branch) {
    for (const auto& s : steps) cur = exec_step(ctx, cur, s, branch);
    return cur;
}

}  // namespace

ExecResult execute_workflow(const Workflow& w, DataSetPtr frame,
                            const LoaderRegistry& loaders, const ExecOptions& opts) {
    Context ctx{{}, loaders, opts};
    int frame_id = ctx.add_node(frame, {}, "input",
                                {{"source", w.input.path},
                                 {"loader", to_string(w.input.kind)}},
                                "");
    Current cur{frame, {frame_id}};
    cur = exec_steps(ctx, std::move(cur), w.steps, "");
    return {cur.data, std::move(ctx.trace)};
}

}  // namespace swf
