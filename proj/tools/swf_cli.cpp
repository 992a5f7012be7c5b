// Command-line front end; talks to the engine exclusively through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swf/swf_c.h"

namespace {

// Exit codes: 0 ok, 1 execution error, 2 parse error, 3 strict indicator failure.
int status_to_exit(swf_status s) {
    switch (s) {
        case SWF_OK: return 0;
        case SWF_ERR_PARSE: return 2;
        case SWF_STRICT_FAIL: return 3;
        default: return 1;
    }
}

void report_error(const char* err) {
    if (err) std::cerr << "error: " << err << "\n";
}

struct WorkflowHandle {
    swf_workflow* w = nullptr;
    ~WorkflowHandle() { swf_workflow_free(w); }
};

int cmd_validate(const std::string& path) {
    WorkflowHandle h;
    char* err = nullptr;
    swf_status s = swf_workflow_parse_file(path.c_str(), &h.w, &err);
    if (s != SWF_OK) {
        report_error(err);
        swf_free_string(err);
        return 2;
    }
    std::cout << "OK\n";
    return 0;
}

int cmd_diagram(const std::string& path, const std::string& out_path) {
    WorkflowHandle h;
    char* err = nullptr;
    swf_status s = swf_workflow_parse_file(path.c_str(), &h.w, &err);
    if (s != SWF_OK) {
        report_error(err);
        swf_free_string(err);
        return 2;
    }
    char* dot = nullptr;
    s = swf_workflow_diagram(h.w, &dot, &err);
    if (s != SWF_OK) {
        report_error(err);
        swf_free_string(err);
        return 1;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        swf_free_string(dot);
        return 1;
    }
    out << dot;
    swf_free_string(dot);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic multistage sampling workflows with representativeness indicators"};
    app.require_subcommand(1);

    std::string wf_path;
    auto* validate = app.add_subcommand("validate", "Parse and schema-check a workflow file");
    validate->add_option("file", wf_path, "workflow file")->required();

    std::string run_path, out_dir, formats = "json,md,dot", fields, export_path;
    double confidence = 0.95, margin = 0.05;
    bool strict = false;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
    auto* run = app.add_subcommand("run", "Execute a workflow and write reports");
    run->add_option("file", run_path, "workflow file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--format", formats, "comma-separated subset of json,md,dot");
    run->add_option("--fields", fields, "fields of interest (comma-separated)");
    run->add_option("--confidence", confidence, "Cochran confidence level");
    run->add_option("--margin", margin, "Cochran margin of error");
    run->add_flag("--strict", strict, "exit 3 when any indicator verdict is fail");
    auto* seed_opt = run->add_option("--seed-override", seed_override,
                                     "replace every workflow seed (derived per operator)");
    run->add_option("--export-sample", export_path, "write the final sample as CSV");

    std::string diagram_path, diagram_out;
    auto* diagram = app.add_subcommand("diagram", "Emit the static workflow shape as DOT");
    diagram->add_option("file", diagram_path, "workflow file")->required();
    diagram->add_option("--out", diagram_out, "output DOT path")->required();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return cmd_validate(wf_path);
    if (diagram->parsed()) return cmd_diagram(diagram_path, diagram_out);

    has_seed_override = seed_opt->count() > 0;

    WorkflowHandle h;
    char* err = nullptr;
    swf_status s = swf_workflow_parse_file(run_path.c_str(), &h.w, &err);
    if (s != SWF_OK) {
        report_error(err);
        swf_free_string(err);
        return status_to_exit(s);
    }

    swf_run_options options{};
    options.output_dir = out_dir.c_str();
    options.write_json = formats.find("json") != std::string::npos;
    options.write_md = formats.find("md") != std::string::npos;
    options.write_dot = formats.find("dot") != std::string::npos;
    options.fields = fields.empty() ? nullptr : fields.c_str();
    options.confidence = confidence;
    options.margin = margin;
    options.strict = strict ? 1 : 0;
    options.has_seed_override = has_seed_override ? 1 : 0;
    options.seed_override = seed_override;
    options.export_sample_path = export_path.empty() ? nullptr : export_path.c_str();

    if (!options.write_json && !options.write_md && !options.write_dot) {
        std::cerr << "error: --format selects none of json, md, dot\n";
        return 1;
    }

    s = swf_workflow_run(h.w, &options, &err);
    if (s != SWF_OK) {
        report_error(err);
        swf_free_string(err);
        return status_to_exit(s);
    }
    return 0;
}
