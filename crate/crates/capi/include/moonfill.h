#ifndef MOONFILL_H
#define MOONFILL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Everything except `Ok` leaves a message in
 * `moonfill_last_error`.
 */
typedef enum MoonfillStatus {
  MoonfillStatus_Ok = 0,
  MoonfillStatus_NullArgument = 1,
  MoonfillStatus_InvalidUtf8 = 2,
  MoonfillStatus_ParseError = 3,
  MoonfillStatus_InvalidShape = 4,
  MoonfillStatus_InvalidFilling = 5,
  MoonfillStatus_BadIndex = 6,
  MoonfillStatus_InfeasibleSums = 7,
  MoonfillStatus_MalformedInput = 8,
  MoonfillStatus_DomainError = 9,
  MoonfillStatus_InternalError = 10,
  MoonfillStatus_Panicked = 11,
} MoonfillStatus;

/**
 * Which mixed statistic anchors a chain.
 */
typedef enum MoonfillStat {
  MoonfillStat_Top = 0,
  MoonfillStat_Bottom = 1,
  MoonfillStat_Left = 2,
  MoonfillStat_Right = 3,
} MoonfillStat;

/**
 * Opaque handle to a filling of a shape.
 */
typedef struct MoonfillFilling MoonfillFilling;

/**
 * Opaque handle to a validated shape.
 */
typedef struct MoonfillShape MoonfillShape;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *moonfill_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `ptr` must come from a moonfill call and not have been freed before.
 */
void moonfill_string_free(char *ptr);

/**
 * Parses a shape from its text format (one `left right` interval per
 * line) and validates it.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum MoonfillStatus moonfill_shape_parse(const char *text, struct MoonfillShape **out);

/**
 * Releases a shape handle.
 *
 * # Safety
 * `shape` must come from `moonfill_shape_parse` and not be freed twice.
 */
void moonfill_shape_free(struct MoonfillShape *shape);

/**
 * Row count, column count, and the pivot column of the length split.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_shape_info(const struct MoonfillShape *shape,
                                        uintptr_t *rows,
                                        uintptr_t *cols,
                                        uintptr_t *pivot);

/**
 * The shape in its text format.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_shape_format(const struct MoonfillShape *shape, char **out);

/**
 * Parses a filling (one `row col` 1-cell per line) against a shape.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_filling_parse(const struct MoonfillShape *shape,
                                           const char *text,
                                           struct MoonfillFilling **out);

/**
 * Releases a filling handle.
 *
 * # Safety
 * `filling` must come from this library and not be freed twice.
 */
void moonfill_filling_free(struct MoonfillFilling *filling);

/**
 * The filling in its text format (cells sorted by row).
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_filling_format(const struct MoonfillFilling *filling, char **out);

/**
 * Northeast and southeast chain counts.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_chain_counts(const struct MoonfillFilling *filling,
                                          uintptr_t *ne,
                                          uintptr_t *se);

/**
 * A mixed statistic and its complement-subset companion.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_mixed_pair(const struct MoonfillFilling *filling,
                                        enum MoonfillStat stat,
                                        const uintptr_t *subset,
                                        uintptr_t subset_len,
                                        uintptr_t *value,
                                        uintptr_t *complement);

/**
 * The exact joint distribution of a mixed statistic over all fillings
 * with the given sums, as a JSON list of `{i, j, coeff}` terms.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_distribution_json(const struct MoonfillShape *shape,
                                               const uintptr_t *row_sums,
                                               uintptr_t row_len,
                                               const uintptr_t *col_sums,
                                               uintptr_t col_len,
                                               enum MoonfillStat stat,
                                               const uintptr_t *subset,
                                               uintptr_t subset_len,
                                               char **out);

/**
 * The closed-form product of Gaussian binomials for the same data, as a
 * JSON term list.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_product_formula_json(const struct MoonfillShape *shape,
                                                  const uintptr_t *row_sums,
                                                  uintptr_t row_len,
                                                  const uintptr_t *col_sums,
                                                  uintptr_t col_len,
                                                  char **out);

/**
 * Encodes a filling as its composition sequence, in the text format
 * `col: parts...`, one line per column.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_compositions_format(const struct MoonfillFilling *filling, char **out);

/**
 * Decodes a composition sequence back to its unique filling.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_compositions_parse(const struct MoonfillShape *shape,
                                                const uintptr_t *row_sums,
                                                uintptr_t row_len,
                                                const uintptr_t *col_sums,
                                                uintptr_t col_len,
                                                const char *text,
                                                struct MoonfillFilling **out);

/**
 * Applies one statistic-transporting bijection. `map` is one of
 * `phi-alpha`, `phi-alpha-inv`, `theta`, `Theta`, `Theta-inv`, `rho`,
 * `phi-gamma`, `xi`, `Sigma`, `Sigma-inv`, `h`, `h-inv`, `lambda`.
 * `index` carries the row for `theta` and the column for `xi`; `subset`
 * feeds the composite maps; `target` is required for `lambda` (a row
 * permutation of the filling's shape) and for `h-inv` (the original
 * shape).
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_bijection(const struct MoonfillFilling *filling,
                                       const char *map,
                                       const uintptr_t *subset,
                                       uintptr_t subset_len,
                                       uintptr_t index,
                                       const struct MoonfillShape *target,
                                       struct MoonfillFilling **out);

/**
 * Runs one verification suite; writes a JSON report and whether every
 * check passed.
 *
 * # Safety
 * All pointers must be valid; see the crate docs.
 */
enum MoonfillStatus moonfill_verify_json(const char *theorem,
                                         uint64_t seed,
                                         uintptr_t shapes,
                                         uintptr_t max_rows,
                                         uintptr_t max_cols,
                                         char **out,
                                         bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOONFILL_H */
