/* C interface to the bhlab library.
 *
 * Usage: build a config (key/value strings), run it, read the result.
 * All functions return 0 / a valid pointer on success.  On failure they
 * return a nonzero error code / NULL and bhl_last_error() describes what
 * went wrong (thread local, valid until the next bhlab call on the same
 * thread).
 */
#ifndef BHLAB_H
#define BHLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bhl_config bhl_config;
typedef struct bhl_result bhl_result;

/* error codes; mirror the categories used internally */
enum {
    BHL_OK = 0,
    BHL_ERR_INVALID_ARGUMENT = 1,
    BHL_ERR_CONFIG = 2,
    BHL_ERR_PRECONDITION = 3,
    BHL_ERR_REGIME = 4,
    BHL_ERR_NUMERIC = 5,
    BHL_ERR_IO = 6,
    BHL_ERR_INTERNAL = 7
};

const char* bhl_version(void);
const char* bhl_errc_name(int code);

/* message / code for the most recent failure on this thread
 * ("" and BHL_OK if none) */
const char* bhl_last_error(void);
int bhl_last_error_code(void);

bhl_config* bhl_config_new(void);
void bhl_config_free(bhl_config* cfg);
int bhl_config_set(bhl_config* cfg, const char* key, const char* value);
/* parse a flat key = value file (with optional [section] headers) into cfg */
int bhl_config_load(bhl_config* cfg, const char* path);

/* run the experiment named by cfg["experiment"]; NULL on failure */
bhl_result* bhl_run(const bhl_config* cfg);
void bhl_result_free(bhl_result* res);

/* named scalar outputs; returns 0 and fills *out when the name exists */
int bhl_result_scalar(const bhl_result* res, const char* name, double* out);
/* human-readable summary (owned by res) */
const char* bhl_result_text(const bhl_result* res);
size_t bhl_result_artifact_count(const bhl_result* res);
const char* bhl_result_artifact_name(const bhl_result* res, size_t index);
/* write every artifact (CSV tables, plot files, metadata.json) into dir */
int bhl_result_write(const bhl_result* res, const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* BHLAB_H */
