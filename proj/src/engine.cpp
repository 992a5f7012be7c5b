#include "swf/engine.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "swf/error.hpp"
#include "swf/parser.hpp"

namespace swf {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Write via a temp file and rename so a failed run leaves no partial output.
void write_atomic(const fs::path& target, const std::string& content) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Workflow parse_workflow_file(const std::string& path, std::string* base_dir) {
    const std::string text = read_file(path);
    Workflow w = parse_workflow(text);
    if (base_dir) {
        fs::path dir = fs::path(path).parent_path();
        *base_dir = dir.empty() ? "." : dir.string();
    }
    return w;
}

std::string export_sample_csv(const DataSet& d) {
    if (d.depth != 0) throw Error("sample export requires a set of artifacts");
    std::ostringstream out;
    const auto& entries = d.schema->entries;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ",";
        out << csv_quote(entries[i].name);
    }
    out << "\r\n";
    for (const auto& a : d.artifacts) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) out << ",";
            out << csv_quote(a->values[i].display());
        }
        out << "\r\n";
    }
    return out.str();
}

RunOutcome run_workflow_file(const std::string& workflow_path, const RunConfig& config) {
    std::string base_dir;
    Workflow w = parse_workflow_file(workflow_path, &base_dir);

    auto registry = LoaderRegistry::with_defaults();
    LoaderSpec spec;
    spec.kind = to_string(w.input.kind);
    spec.path = fs::path(w.input.path).is_absolute()
                    ? w.input.path
                    : (fs::path(base_dir) / w.input.path).string();
    spec.schema = w.input.schema;
    DataSetPtr frame = registry.load(spec);

    ExecOptions opts;
    opts.seed_override = config.seed_override;
    opts.summary_fields = config.fields_of_interest;
    opts.base_dir = base_dir;

    RunOutcome outcome;
    outcome.exec = execute_workflow(w, frame, registry, opts);

    IndicatorOptions iopts;
    iopts.fields_of_interest = config.fields_of_interest;
    iopts.confidence = config.confidence;
    iopts.margin = config.margin;
    outcome.indicators = auto_indicators(outcome.exec.trace, iopts);
    for (const auto& ind : outcome.indicators)
        if (ind.verdict == Verdict::Fail) outcome.any_fail = true;

    if (!config.output_dir.empty()) {
        fs::create_directories(config.output_dir);
        const fs::path out_dir(config.output_dir);
        if (config.write_json)
            write_atomic(out_dir / "report.json",
                         emit_report_json(outcome.exec.trace, outcome.indicators, iopts));
        if (config.write_md)
            write_atomic(out_dir / "report.md",
                         emit_report_markdown(outcome.exec.trace, outcome.indicators));
        if (config.write_dot)
            write_atomic(out_dir / "workflow.dot", emit_dot(outcome.exec.trace));
    }

    if (config.export_sample_path) {
        DataSetPtr sample = outcome.exec.final_set;
        if (sample->depth > 0) {
            // Flatten nested results for export; union semantics (dedup by id).
            DataSetPtr flat = sample;
            while (flat->depth > 0) flat = union_op(*flat);
            sample = flat;
        }
        write_atomic(*config.export_sample_path, export_sample_csv(*sample));
    }
    return outcome;
}

}  // namespace swf
