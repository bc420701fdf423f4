#ifndef MULTIMONO_H
#define MULTIMONO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MmStatus {
  MM_STATUS_OK = 0,
  MM_STATUS_PARSE_ERROR = 1,
  MM_STATUS_SHAPE_ERROR = 2,
  MM_STATUS_INVALID_ARGUMENT = 3,
  MM_STATUS_INVALID_WITNESS = 4,
  MM_STATUS_BUDGET_EXCEEDED = 5,
  MM_STATUS_NULL_POINTER = 6,
  MM_STATUS_INVALID_UTF8 = 7,
  MM_STATUS_PANIC = 8,
} MmStatus;

typedef enum MmAlgorithm {
  MM_ALGORITHM_AUTO = 0,
  MM_ALGORITHM_MATCHER = 1,
  MM_ALGORITHM_PURGER = 2,
  MM_ALGORITHM_SCC = 3,
  MM_ALGORITHM_HYBRID = 4,
  MM_ALGORITHM_CLIQUE = 5,
  MM_ALGORITHM_ORACLE = 6,
} MmAlgorithm;

// A parsed polynomial.
typedef struct MmPoly MmPoly;

// Outcome of [`mm_solve`].
typedef struct MmSolution MmSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread; do not free it.
const char *mm_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void mm_string_free(char *s);

// Parses polynomial text into a new handle stored in `*out`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum MmStatus mm_poly_parse(const char *text, struct MmPoly **out);

// # Safety
// `poly` must be NULL or a handle from this library not yet freed.
void mm_poly_free(struct MmPoly *poly);

// Number of clauses, or 0 for NULL.
//
// # Safety
// `poly` must be NULL or a live handle.
size_t mm_poly_num_clauses(const struct MmPoly *poly);

// Canonical text of `poly` into `*out`.
//
// # Safety
// `poly` must be a live handle and `out` a valid pointer.
enum MmStatus mm_poly_render(const struct MmPoly *poly, char **out);

// Sets the split point (front = clauses before `index`); a negative index
// removes it.
//
// # Safety
// `poly` must be a live handle.
enum MmStatus mm_poly_set_split(struct MmPoly *poly, int64_t index);

// Decides whether `poly` has a `c`-monomial. `algorithm` is an
// [`MmAlgorithm`] value; `budget` caps enumerating algorithms, 0 keeps the
// defaults. The new solution is stored in `*out`.
//
// # Safety
// `poly` must be a live handle and `out` a valid pointer.
enum MmStatus mm_solve(const struct MmPoly *poly,
                       uint32_t c,
                       uint32_t algorithm,
                       uint64_t budget,
                       struct MmSolution **out);

// # Safety
// `solution` must be NULL or a handle from this library not yet freed.
void mm_solution_free(struct MmSolution *solution);

// 1 if a monomial was found, 0 if not or for NULL.
//
// # Safety
// `solution` must be NULL or a live handle.
int32_t mm_solution_found(const struct MmSolution *solution);

// The algorithm that ran (never `Auto` for a live handle).
//
// # Safety
// `solution` must be a live handle.
enum MmAlgorithm mm_solution_algorithm(const struct MmSolution *solution);

// Witness length (one entry per clause), or 0 when none was found.
//
// # Safety
// `solution` must be NULL or a live handle.
size_t mm_solution_len(const struct MmSolution *solution);

// Copies the zero-based term choices into `buf`, which must hold
// [`mm_solution_len`] entries.
//
// # Safety
// `solution` must be a live handle and `buf` valid for `len` writes.
enum MmStatus mm_solution_choices(const struct MmSolution *solution, size_t *buf, size_t len);

// Text of the witness monomial, over `poly`'s variable names, into `*out`.
//
// # Safety
// `poly` and `solution` must be live handles, the solution obtained from
// `poly`, and `out` a valid pointer.
enum MmStatus mm_solution_monomial(const struct MmPoly *poly,
                                   const struct MmSolution *solution,
                                   char **out);

// Checks a zero-based witness against `poly`: writes 1 to `*is_c_monomial`
// when the chosen terms multiply to a `c`-monomial, else 0.
//
// # Safety
// `poly` must be a live handle, `choices` valid for `len` reads, and
// `is_c_monomial` a valid pointer.
enum MmStatus mm_check_witness(const struct MmPoly *poly,
                               const size_t *choices,
                               size_t len,
                               uint32_t c,
                               int32_t *is_c_monomial);

// Normalises a DIMACS formula and encodes it as a polynomial that has a
// multilinear monomial iff the formula is satisfiable.
//
// # Safety
// `dimacs` must be a NUL-terminated string and `out` a valid pointer.
enum MmStatus mm_reduce_sat3(const char *dimacs, struct MmPoly **out);

// Writes 1 to `*found` when the edge-list graph has a simple path on `k`
// vertices, else 0. `budget` caps the walks visited; 0 keeps the default.
//
// # Safety
// `graph` must be a NUL-terminated string and `found` a valid pointer.
enum MmStatus mm_kpath(const char *graph, size_t k, uint32_t c, uint64_t budget, int32_t *found);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTIMONO_H */
