#ifndef TENSORCALC_H
#define TENSORCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  // Slot out of range, non-UTF-8 text or a buffer of the wrong size.
  TC_STATUS_INVALID_ARGUMENT = 2,
  // Malformed JSON document.
  TC_STATUS_PARSE = 3,
  // Shape, index or convention violation.
  TC_STATUS_SHAPE = 4,
  // Singular, indefinite or superluminal input.
  TC_STATUS_NUMERIC = 5,
  // Index expression rejected by the einsum engine.
  TC_STATUS_EINSUM = 6,
  TC_STATUS_PANIC = 7,
} TcStatus;

typedef enum TcVariance {
  TC_VARIANCE_UP = 0,
  TC_VARIANCE_DOWN = 1,
} TcVariance;

typedef enum TcDeltaKind {
  TC_DELTA_KIND_LOWER_LOWER = 0,
  TC_DELTA_KIND_UPPER_UPPER = 1,
  TC_DELTA_KIND_MIXED = 2,
} TcDeltaKind;

typedef enum TcMode {
  TC_MODE_STRICT = 0,
  TC_MODE_ORTHOGONAL = 1,
} TcMode;

// Name-to-tensor table for [`tc_einsum`].
typedef struct TcBindings TcBindings;

typedef struct TcFrame TcFrame;

typedef struct TcMetric TcMetric;

typedef struct TcTensor TcTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *tc_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void tc_string_free(char *s);

// Builds a tensor from `dim^rank` components in row-major order, slot 0
// outermost. `slots` may be null when `rank` is 0.
//
// # Safety
// `slots` must point to `rank` values and `components` to `len` doubles.
enum TcStatus tc_tensor_new(size_t dim,
                            const enum TcVariance *slots,
                            size_t rank,
                            int32_t weight,
                            const double *components,
                            size_t len,
                            struct TcTensor **out);

// # Safety
// `json` must be a NUL-terminated string.
enum TcStatus tc_tensor_from_json(const char *json, struct TcTensor **out);

// Writes a newly allocated JSON document; release it with [`tc_string_free`].
//
// # Safety
// `t` must be a live tensor handle.
enum TcStatus tc_tensor_to_json(const struct TcTensor *t, char **out);

// # Safety
// `t` must be null or a handle not yet freed.
void tc_tensor_free(struct TcTensor *t);

// # Safety
// `t` must be null or a live handle.
size_t tc_tensor_dim(const struct TcTensor *t);

// # Safety
// `t` must be null or a live handle.
size_t tc_tensor_rank(const struct TcTensor *t);

// # Safety
// `t` must be null or a live handle.
int32_t tc_tensor_weight(const struct TcTensor *t);

// Number of stored components, `dim^rank`.
//
// # Safety
// `t` must be null or a live handle.
size_t tc_tensor_len(const struct TcTensor *t);

// # Safety
// `t` must be a live handle and `out` writable.
enum TcStatus tc_tensor_slot(const struct TcTensor *t, size_t slot, enum TcVariance *out);

// Copies the components into `buf`, which must hold exactly
// [`tc_tensor_len`] doubles.
//
// # Safety
// `buf` must point to `len` writable doubles.
enum TcStatus tc_tensor_copy_components(const struct TcTensor *t, double *buf, size_t len);

// # Safety
// `out` must be writable.
enum TcStatus tc_kronecker(size_t dim, enum TcDeltaKind kind, struct TcTensor **out);

// Permutation symbol with all slots `variance`; weight +1 upper, -1 lower.
//
// # Safety
// `out` must be writable.
enum TcStatus tc_levi_civita(size_t dim, enum TcVariance variance, struct TcTensor **out);

// Determinant of any rank-2 object.
//
// # Safety
// `t` must be a live handle and `out` writable.
enum TcStatus tc_determinant(const struct TcTensor *t, double *out);

struct TcBindings *tc_bindings_new(void);

// Stores a copy of `t` under `name`, replacing any earlier entry.
//
// # Safety
// `b` and `t` must be live handles and `name` NUL-terminated.
enum TcStatus tc_bindings_insert(struct TcBindings *b, const char *name, const struct TcTensor *t);

// # Safety
// `b` must be null or a handle not yet freed.
void tc_bindings_free(struct TcBindings *b);

// Evaluates an index expression such as `y^r = a^r_s x^s`.
//
// # Safety
// `expr` must be NUL-terminated, `b` a live handle and `out` writable.
enum TcStatus tc_einsum(const char *expr,
                        const struct TcBindings *b,
                        enum TcMode mode,
                        struct TcTensor **out);

// Frame from `c^r_s` given as `dim * dim` doubles, row `r` first.
//
// # Safety
// `c` must point to `dim * dim` doubles and `out` be writable.
enum TcStatus tc_frame_new(size_t dim, const double *c, struct TcFrame **out);

// # Safety
// `json` must be NUL-terminated and `out` writable.
enum TcStatus tc_frame_from_json(const char *json, struct TcFrame **out);

// # Safety
// `f` must be null or a handle not yet freed.
void tc_frame_free(struct TcFrame *f);

// Components of `t` in the new frame, using the weight stored in `t`.
//
// # Safety
// `t` and `f` must be live handles and `out` writable.
enum TcStatus tc_transform(const struct TcTensor *t,
                           const struct TcFrame *f,
                           struct TcTensor **out);

// Metric from a symmetric positive-definite covariant tensor.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum TcStatus tc_metric_new(const struct TcTensor *g, struct TcMetric **out);

// Metric `g_rs = e_r . e_s` of `dim` basis vectors stored row by row.
//
// # Safety
// `vectors` must point to `dim * dim` doubles and `out` be writable.
enum TcStatus tc_metric_from_basis(size_t dim, const double *vectors, struct TcMetric **out);

// # Safety
// `m` must be null or a handle not yet freed.
void tc_metric_free(struct TcMetric *m);

// Scalar product of two contravariant or two covariant vectors.
//
// # Safety
// All handles must be live and `out` writable.
enum TcStatus tc_inner(const struct TcTensor *x,
                       const struct TcTensor *y,
                       const struct TcMetric *m,
                       double *out);

// Contravariant cross product in three dimensions.
//
// # Safety
// All handles must be live and `out` writable.
enum TcStatus tc_cross(const struct TcTensor *x,
                       const struct TcTensor *y,
                       const struct TcMetric *m,
                       struct TcTensor **out);

// # Safety
// All handles must be live and `out` writable.
enum TcStatus tc_triple(const struct TcTensor *x,
                        const struct TcTensor *y,
                        const struct TcTensor *z,
                        const struct TcMetric *m,
                        double *out);

// Writes the 4x4 boost matrix for velocity `beta` (units of c) row by row.
//
// # Safety
// `out` must point to 16 writable doubles.
enum TcStatus tc_boost(double beta, double *out);

// # Safety
// `out` must be writable.
enum TcStatus tc_rapidity(double beta, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TENSORCALC_H */
