#ifndef BCNF_BCNF_H
#define BCNF_BCNF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BCNF_API __declspec(dllexport)
#else
#define BCNF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bcnf_status {
    BCNF_OK = 0,
    BCNF_ERR_INVALID_ARGUMENT = 1,
    BCNF_ERR_CONFIG = 2,
    BCNF_ERR_IO = 3,
    BCNF_ERR_MAP = 4,                /* continuity, beta or border-collision data */
    BCNF_ERR_REGION_UNSUPPORTED = 5,
    BCNF_ERR_HYPOTHESIS = 6,
    BCNF_ERR_NUMERICAL = 7,          /* solver or construction failure */
    BCNF_ERR_INTERNAL = 8
} bcnf_status;

typedef struct bcnf_map bcnf_map;
typedef struct bcnf_analysis bcnf_analysis;

BCNF_API const char* bcnf_version(void);

/* Message and kind name of the last failure on the calling thread. */
BCNF_API const char* bcnf_last_error(void);
BCNF_API const char* bcnf_last_error_kind(void);

/* Process exit code for a status: 0 ok, 2 unsupported region,
   3 hypothesis violation, 1 otherwise. */
BCNF_API int bcnf_exit_code(bcnf_status status);

/* Strings returned through char** are owned by the caller. */
BCNF_API void bcnf_string_free(char* s);

BCNF_API bcnf_status bcnf_map_load(const char* config_path, bcnf_map** out);
BCNF_API bcnf_status bcnf_map_from_json(const char* json, bcnf_map** out);
BCNF_API void bcnf_map_free(bcnf_map* map);
BCNF_API bcnf_status bcnf_map_eval(const bcnf_map* map, double x, double mu, double* out);

BCNF_API bcnf_status bcnf_classify(double a_L, double a_R, char** json_out);
BCNF_API bcnf_status bcnf_match(const bcnf_map* map, double mu, char** json_out);

/* Normal form and conjugacies of `map` at `mu`. */
BCNF_API bcnf_status bcnf_analysis_create(const bcnf_map* map, double mu, bcnf_analysis** out);
BCNF_API void bcnf_analysis_free(bcnf_analysis* a);
BCNF_API bcnf_status bcnf_analysis_normal_form(const bcnf_analysis* a, double* nu, double* s_L,
                                               double* s_R, double* t);
BCNF_API size_t bcnf_analysis_conjugacy_count(const bcnf_analysis* a);
BCNF_API bcnf_status bcnf_conjugacy_eval(const bcnf_analysis* a, size_t k, double x, double* out);
BCNF_API bcnf_status bcnf_analysis_verify(const bcnf_analysis* a, double delta, int* pass,
                                          char** json_out);

/* Command drivers; outputs are written under out_dir. */
BCNF_API bcnf_status bcnf_run_sweep(const char* config_path, const char* out_dir, int has_seed,
                                    uint64_t seed);
BCNF_API bcnf_status bcnf_run_conjugate(const char* config_path, double mu, double delta,
                                        int samples, const char* out_dir, int* pass);
BCNF_API bcnf_status bcnf_run_verify_bounds(const char* config_path, const char* out_dir,
                                            int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
