#ifndef HMRKIT_H
#define HMRKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HMR_API __declspec(dllexport)
#else
#define HMR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hmr_status {
  HMR_OK = 0,
  HMR_INVALID_ARGUMENT = 1,
  HMR_MALFORMED_JSON = 2,
  HMR_SHAPE_MISMATCH = 10,
  HMR_GRADING_VIOLATION = 11,
  HMR_COMPOSITION_NONZERO = 12,
  HMR_DEGENERATE_SPECTRUM = 20,
  HMR_STEP_TOO_LARGE = 21,
  HMR_MALFORMED_ORBIT_MAP = 30,
  HMR_NOT_CHAIN_MAP = 31,
  HMR_NOT_COCYCLE = 32,
  HMR_NO_REAL_STRUCTURE = 33,
  HMR_NOT_DIVISIBLE_BY_8 = 40,
  HMR_ODD_PAIRING = 41,
  HMR_NOT_COPRIME = 50,
  HMR_UNKNOWN_FAMILY = 51,
  HMR_AMBIGUOUS_DIFFERENTIAL = 52,
  HMR_IO = 60,
  HMR_INTERNAL = 99
} hmr_status;

typedef struct hmr_context hmr_context;
typedef struct hmr_complex hmr_complex;
typedef struct hmr_cw hmr_cw;

typedef enum hmr_flavor { HMR_CHECK = 0, HMR_HAT = 1, HMR_BAR = 2 } hmr_flavor;

HMR_API const char* hmr_version(void);
HMR_API const char* hmr_status_name(hmr_status s);

HMR_API hmr_context* hmr_context_create(void);
HMR_API void hmr_context_destroy(hmr_context* ctx);
/* JSON error object of the last failing call on ctx; "" after success. Owned by ctx. */
HMR_API const char* hmr_last_error(const hmr_context* ctx);

/* Runs a subcommand with JSON parameters. *report_json is owned by ctx and valid until the next call. */
HMR_API hmr_status hmr_run(hmr_context* ctx, const char* command, const char* params_json, const char** report_json);

HMR_API hmr_status hmr_complex_from_json(hmr_context* ctx, const char* blocks_json, hmr_complex** out);
HMR_API void hmr_complex_destroy(hmr_complex* c);
/* *ok = 1 when all three differentials square to zero and the LES is exact in the interior window. */
HMR_API hmr_status hmr_complex_verify(hmr_context* ctx, const hmr_complex* c, int* ok);
HMR_API hmr_status hmr_complex_rank(hmr_context* ctx, const hmr_complex* c, hmr_flavor f, int64_t grading,
                                    size_t* rank);

HMR_API hmr_status hmr_cw_from_json(hmr_context* ctx, const char* cw_json, hmr_cw** out);
HMR_API hmr_status hmr_cw_builtin(hmr_context* ctx, const char* name, hmr_cw** out);
HMR_API void hmr_cw_destroy(hmr_cw* cw);
/* Size of the real spin^c torsor; 0 when infinite. */
HMR_API hmr_status hmr_cw_census_size(hmr_context* ctx, const hmr_cw* cw, uint64_t* size);
/* c1 is a cochain on the 2-cells of M. */
HMR_API hmr_status hmr_cw_admits(hmr_context* ctx, const hmr_cw* cw, const int64_t* c1, size_t len, int* admits);

HMR_API hmr_status hmr_closed4_index(hmr_context* ctx, int64_t c1_sq, int64_t sigma, uint64_t b1, uint64_t bplus,
                                     uint64_t b0, int64_t* index);
HMR_API hmr_status hmr_loop_grading_shift(hmr_context* ctx, int64_t pairing, int64_t* shift);
/* Seifert matrix in row-major order; *order = 0 encodes infinite H_1. */
HMR_API hmr_status hmr_branched_cover(hmr_context* ctx, const int64_t* seifert, size_t n, uint64_t* order,
                                      size_t* b1);

#ifdef __cplusplus
}
#endif

#endif
