#ifndef MINET_H
#define MINET_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes mirror the CLI exit codes. */
enum {
  MINET_OK = 0,
  MINET_INTERNAL = 1,
  MINET_VALIDATION = 2,
  MINET_CONVERGENCE = 3
};

typedef struct minet_bundle minet_bundle;

const char* minet_version(void);

/* Message of the most recent failure on this thread; empty if none. */
const char* minet_last_error(void);

/* Network bundle handle. Paths refer to the JSON bundle format. */
int minet_bundle_load(const char* path, minet_bundle** out);
int minet_bundle_generate(const char* spec_json, minet_bundle** out);
int minet_bundle_save(const minet_bundle* bundle, const char* path);
int minet_bundle_to_json(const minet_bundle* bundle, char** json_out);
void minet_bundle_free(minet_bundle* bundle);

/* Runs one task from a JSON config; on success *report_json receives the
 * report string, released with minet_string_free. */
int minet_run_task(const char* config_json, char** report_json);

void minet_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
