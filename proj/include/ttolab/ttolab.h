#ifndef TTOLAB_TTOLAB_H
#define TTOLAB_TTOLAB_H

#include <stddef.h>

#if defined(TTL_BUILDING_LIBRARY)
#define TTL_API __attribute__((visibility("default")))
#else
#define TTL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* status codes double as CLI exit codes */
typedef enum {
  TTL_OK = 0,
  TTL_ERR_INTERNAL = 1,
  TTL_ERR_VALIDATION = 2,
  TTL_ERR_NO_CONVERGENCE = 3,
  TTL_ERR_DOMAIN = 4
} ttl_status;

typedef enum { TTL_MODE_AUTO = 0, TTL_MODE_EXACT = 1, TTL_MODE_TRUNCATED = 2 } ttl_mode;

typedef struct ttl_inner ttl_inner;
typedef struct ttl_space ttl_space;
typedef struct ttl_operator ttl_operator;

TTL_API const char* ttl_version(void);
/* message of the last failed call on this thread, "" if none */
TTL_API const char* ttl_last_error(void);

TTL_API int ttl_inner_from_json(const char* json, ttl_inner** out);
TTL_API void ttl_inner_free(ttl_inner* theta);
TTL_API int ttl_inner_eval(const ttl_inner* theta, double re, double im, double* out_re, double* out_im);
TTL_API int ttl_inner_zero_count(const ttl_inner* theta, int* out);

TTL_API int ttl_space_create(const ttl_inner* theta, int grid, ttl_mode mode, ttl_space** out);
TTL_API void ttl_space_free(ttl_space* space);
/* -1 in truncated mode */
TTL_API int ttl_space_dimension(const ttl_space* space, int* out);
/* coefficients of k_lambda, interleaved re/im; capacity counts doubles */
TTL_API int ttl_kernel_coeffs(const ttl_space* space, double re, double im, double* out, size_t capacity);

/* A_phi for phi = sum c_k z^k, k = idx[j], c = re[j] + i im[j] */
TTL_API int ttl_operator_build_polynomial(const ttl_space* space, const int* idx, const double* re, const double* im,
                                          size_t count, ttl_operator** out);
/* row-major, interleaved re/im, dimension x dimension */
TTL_API int ttl_operator_from_matrix(const ttl_space* space, const double* data, size_t dim, ttl_operator** out);
TTL_API void ttl_operator_free(ttl_operator* op);
TTL_API int ttl_operator_matrix(const ttl_operator* op, double* out, size_t capacity);
TTL_API int ttl_operator_norm(const ttl_operator* op, double* out);

/* run a CLI subcommand on a JSON configuration; *output is malloc'd, release with ttl_string_free */
TTL_API int ttl_run(const char* command, const char* config_json, char** output);
TTL_API void ttl_string_free(char* s);
/* number of subcommands, and the i-th name */
TTL_API size_t ttl_command_count(void);
TTL_API const char* ttl_command_name(size_t i);

#ifdef __cplusplus
}
#endif

#endif
