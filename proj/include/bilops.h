/*
 * bilops C API: exact classification and calculus of invariant bilinear
 * differential operators on tensor densities.
 *
 * The engine is driven by JSON requests.  Every request is an object with a
 * "command" field:
 *
 *   solve         kernel of the singular-vector system at fixed weights
 *                 {"command":"solve","n":1,"weights":["0","0"],"degree":3}
 *                 {"command":"solve","n":2,"w1":["0","-1"],"w2":["0","-1"],
 *                  "degree":3,"nu":["-2","-3"]}
 *   scan          kernel dimensions over a weight grid
 *                 {"command":"scan","n":1,"degree":4,
 *                  "grid":{"start":"-3","stop":"3","step":"1/3"}}
 *   locus         exact parametric solution locus on the line, 1 <= d <= 6
 *                 {"command":"locus","degree":3}
 *   verify        exhaustive invariance check of a catalog operator
 *                 {"command":"verify","op":"P8","n":3}
 *   fit           invariant members of an operator template
 *                 {"command":"fit","template":"density","degree":3,
 *                  "a":"-2/3","b":"-2/3","n":1}
 *   catalog_apply apply a catalog operator to two tensor fields
 *   catalog_list  the operator registry
 *
 * Rationals are "p/q" strings, weights arrays of rationals.  Responses are
 * JSON reports (schema_version, command, config, results) or TSV when the
 * request carries "format":"tsv".
 */

#ifndef BILOPS_H
#define BILOPS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bilops_engine bilops_engine;

typedef enum bilops_status {
    BILOPS_OK = 0,
    /* the request was malformed or out of the supported domain */
    BILOPS_ERR_INVALID_REQUEST = 2,
    /* a fiber truncation bound was exceeded; the error message names the
       bound that would have sufficed */
    BILOPS_ERR_TRUNCATION = 3,
    BILOPS_ERR_INTERNAL = 4,
    BILOPS_ERR_BAD_HANDLE = 5
} bilops_status;

/* Library ABI version; increase on breaking changes. */
int bilops_abi_version(void);

/* parallelism <= 0 reads the BILOPS_JOBS environment variable (default 1). */
bilops_engine* bilops_engine_create(int parallelism);
void bilops_engine_destroy(bilops_engine* engine);

/* Run one request.  On BILOPS_OK, *result_out receives a NUL-terminated
 * report that the caller releases with bilops_string_free.  On error,
 * *result_out is NULL and bilops_last_error describes the failure. */
bilops_status bilops_run(bilops_engine* engine, const char* request_json,
                         char** result_out);

/* Message of the last failed bilops_run on this engine; empty string if the
 * last call succeeded.  Owned by the engine. */
const char* bilops_last_error(const bilops_engine* engine);

void bilops_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BILOPS_H */
