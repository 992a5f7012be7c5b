/* C interface to the sampling workflow engine.
 *
 * All functions return swf_status; on failure an error message is stored in
 * *error_out (when non-NULL) and must be released with swf_free_string.
 * Workflow handles are opaque and freed with swf_workflow_free.
 */
#ifndef SWF_C_H
#define SWF_C_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swf_status {
    SWF_OK = 0,
    SWF_ERR_PARSE = 1,     /* syntax or schema error in the DSL document */
    SWF_ERR_EXEC = 2,      /* operator or load failure during execution */
    SWF_ERR_INVALID = 3,   /* bad arguments */
    SWF_STRICT_FAIL = 4    /* run finished, but an indicator verdict is fail */
} swf_status;

typedef struct swf_workflow swf_workflow;

/* Parses and schema-checks a workflow file without touching data files. */
swf_status swf_workflow_parse_file(const char* path, swf_workflow** out,
                                   char** error_out);

void swf_workflow_free(swf_workflow* w);

/* Static (pre-execution) workflow diagram as DOT text. */
swf_status swf_workflow_diagram(const swf_workflow* w, char** dot_out,
                                char** error_out);

typedef struct swf_run_options {
    const char* output_dir;          /* NULL: write no report files */
    int write_json;
    int write_md;
    int write_dot;
    const char* fields;              /* comma-separated, NULL/"": all fields */
    double confidence;               /* <= 0: default 0.95 */
    double margin;                   /* <= 0: default 0.05 */
    int strict;                      /* failing indicator -> SWF_STRICT_FAIL */
    int has_seed_override;
    uint64_t seed_override;
    const char* export_sample_path;  /* NULL: no sample export */
} swf_run_options;

/* Loads the input, executes the workflow, computes indicators, and writes the
 * requested outputs. */
swf_status swf_workflow_run(const swf_workflow* w, const swf_run_options* options,
                            char** error_out);

void swf_free_string(char* s);

const char* swf_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SWF_C_H */
