#include "swf/swf_c.h"

#include <cstring>
#include <string>

#include "swf/engine.hpp"
#include "swf/error.hpp"
#include "swf/report.hpp"

using namespace swf;

struct swf_workflow {
    std::string path;
    Workflow parsed;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** error_out, const std::string& msg) {
    if (error_out) *error_out = dup_string(msg);
}

std::vector<std::string> split_fields(const char* fields) {
    std::vector<std::string> out;
    if (!fields) return out;
    std::string s(fields);
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

extern "C" {

swf_status swf_workflow_parse_file(const char* path, swf_workflow** out,
                                   char** error_out) {
    if (!path || !out) {
        set_error(error_out, "path and out must be non-NULL");
        return SWF_ERR_INVALID;
    }
    *out = nullptr;
    try {
        auto handle = new swf_workflow;
        handle->path = path;
        handle->parsed = parse_workflow_file(path);
        *out = handle;
        return SWF_OK;
    } catch (const ParseError& e) {
        set_error(error_out, e.what());
        return SWF_ERR_PARSE;
    } catch (const std::exception& e) {
        set_error(error_out, e.what());
        return SWF_ERR_EXEC;
    }
}

void swf_workflow_free(swf_workflow* w) { delete w; }

swf_status swf_workflow_diagram(const swf_workflow* w, char** dot_out,
                                char** error_out) {
    if (!w || !dot_out) {
        set_error(error_out, "workflow and dot_out must be non-NULL");
        return SWF_ERR_INVALID;
    }
    try {
        *dot_out = dup_string(emit_workflow_dot(w->parsed));
        return SWF_OK;
    } catch (const std::exception& e) {
        set_error(error_out, e.what());
        return SWF_ERR_EXEC;
    }
}

swf_status swf_workflow_run(const swf_workflow* w, const swf_run_options* options,
                            char** error_out) {
    if (!w || !options) {
        set_error(error_out, "workflow and options must be non-NULL");
        return SWF_ERR_INVALID;
    }
    try {
        RunConfig config;
        config.output_dir = options->output_dir ? options->output_dir : "";
        config.write_json = options->write_json != 0;
        config.write_md = options->write_md != 0;
        config.write_dot = options->write_dot != 0;
        config.fields_of_interest = split_fields(options->fields);
        if (options->confidence > 0) config.confidence = options->confidence;
        if (options->margin > 0) config.margin = options->margin;
        if (options->has_seed_override) config.seed_override = options->seed_override;
        if (options->export_sample_path)
            config.export_sample_path = std::string(options->export_sample_path);

        RunOutcome outcome = run_workflow_file(w->path, config);
        if (options->strict && outcome.any_fail) {
            std::string msg = "failing indicators:";
            for (const auto& ind : outcome.indicators)
                if (ind.verdict == Verdict::Fail)
                    msg += "\n  " + std::string(to_string(ind.kind)) + ": " + ind.text;
            set_error(error_out, msg);
            return SWF_STRICT_FAIL;
        }
        return SWF_OK;
    } catch (const ParseError& e) {
        set_error(error_out, e.what());
        return SWF_ERR_PARSE;
    } catch (const std::exception& e) {
        set_error(error_out, e.what());
        return SWF_ERR_EXEC;
    }
}

void swf_free_string(char* s) { delete[] s; }

const char* swf_version(void) { return "0.1.0"; }

}  // extern "C"
