#ifndef MOTIVIC_STEENROD_H
#define MOTIVIC_STEENROD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum MsStatus {
  MsStatus_Ok = 0,
  MsStatus_NullArgument = 1,
  MsStatus_InvalidUtf8 = 2,
  MsStatus_ParseError = 3,
  MsStatus_UnknownAlgebra = 4,
  /**
   * A well-formed request with no answer in range, such as an
   * unsupported algebra or a degree beyond the generator bound.
   */
  MsStatus_DomainError = 5,
  MsStatus_Panic = 6,
} MsStatus;

/**
 * A presented algebra, from [`ms_algebra_new`].
 */
typedef struct MsAlgebra MsAlgebra;

/**
 * A resolution in progress, from [`ms_resolution_new`].
 */
typedef struct MsResolution MsResolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *ms_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ms_string_free(char *s);

/**
 * Builds the algebra named `name` (`A`, `A2`, `E1`, `F`, `G`, `H_BP`, ...).
 * `stem_limit` bounds the generators of infinite algebras.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum MsStatus ms_algebra_new(const char *name, int32_t stem_limit, struct MsAlgebra **out);

/**
 * # Safety
 * `a` must come from [`ms_algebra_new`] and not have been freed. Null is ignored.
 */
void ms_algebra_free(struct MsAlgebra *a);

/**
 * Normal form of `lhs * rhs`, e.g. `t0`, `t0` gives `t*x1`.
 *
 * # Safety
 * Pointers must be valid; `out` receives a string for [`ms_string_free`].
 */
enum MsStatus ms_algebra_multiply(const struct MsAlgebra *a,
                                  const char *lhs,
                                  const char *rhs,
                                  char **out);

/**
 * Coproduct of `element` as `left|right` terms.
 *
 * # Safety
 * Pointers must be valid; `out` receives a string for [`ms_string_free`].
 */
enum MsStatus ms_algebra_coproduct(const struct MsAlgebra *a, const char *element, char **out);

/**
 * Product in the Steenrod algebra of two elements written with named
 * generators or `dual(...)`, e.g. `Sq2` and `Sq2`.
 *
 * # Safety
 * Pointers must be valid; `out` receives a string for [`ms_string_free`].
 */
enum MsStatus ms_dual_product(const char *lhs, const char *rhs, char **out);

/**
 * Starts a resolution over the finite quotient `algebra`.
 *
 * # Safety
 * `algebra` must be a NUL-terminated string; `out` must be writable.
 */
enum MsStatus ms_resolution_new(const char *algebra,
                                int32_t stem_max,
                                uint32_t f_max,
                                struct MsResolution **out);

/**
 * # Safety
 * `r` must come from [`ms_resolution_new`] and not have been freed. Null is ignored.
 */
void ms_resolution_free(struct MsResolution *r);

/**
 * Builds one more map; `done` is set once Ext through `f_max` is available.
 *
 * # Safety
 * `r` must be a live handle; `done` must be writable.
 */
enum MsStatus ms_resolution_step(struct MsResolution *r, bool *done);

/**
 * Dimension of Ext at `(s, f, w)`. The resolution must be complete.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum MsStatus ms_resolution_ext_dim(struct MsResolution *r,
                                    int32_t s,
                                    uint32_t f,
                                    int32_t w,
                                    uintptr_t *out);

/**
 * The chart as TSV with columns `s f w dim`.
 *
 * # Safety
 * `r` must be a live handle; `out` receives a string for [`ms_string_free`].
 */
enum MsStatus ms_resolution_chart_tsv(struct MsResolution *r, char **out);

/**
 * The resolution so far in checkpoint text form.
 *
 * # Safety
 * `r` must be a live handle; `out` receives a string for [`ms_string_free`].
 */
enum MsStatus ms_resolution_checkpoint(const struct MsResolution *r, char **out);

/**
 * Runs the `A//A(2)` ladder (or the `A//A(1)` one when `ko` is set) through
 * `max_stem` and reports whether every step passed.
 *
 * # Safety
 * `certified` must be writable.
 */
enum MsStatus ms_ladder_certify(int32_t max_stem, bool ko, bool *certified);

/**
 * Motivic TSV (`s f w dim tau_rank`) for a chart in the text format
 * `class <id> s=<int> f=<int>` / `d <r> <source> <target>`.
 *
 * # Safety
 * `chart` must be a NUL-terminated string; `out` receives a string for
 * [`ms_string_free`].
 */
enum MsStatus ms_motivic_tsv(const char *chart, int32_t w_min, int32_t w_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTIVIC_STEENROD_H */
