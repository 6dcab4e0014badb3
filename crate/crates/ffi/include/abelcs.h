#ifndef ABELCS_H
#define ABELCS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AbelcsStatus {
  ABELCS_STATUS_OK = 0,
  ABELCS_STATUS_NULL_POINTER = 1,
  ABELCS_STATUS_INVALID_UTF8 = 2,
  ABELCS_STATUS_PARSE = 3,
  ABELCS_STATUS_ALGEBRA = 4,
  ABELCS_STATUS_OUT_OF_RANGE = 5,
  ABELCS_STATUS_BUFFER_TOO_SMALL = 6,
  ABELCS_STATUS_PANIC = 7,
} AbelcsStatus;

// A validated slice diagram.
typedef struct AbelcsDiagram AbelcsDiagram;

// A linear operator on the theta space.
typedef struct AbelcsOperator AbelcsOperator;

// An element of the cyclotomic field, possibly with a factor `N^{-1/2}`.
typedef struct AbelcsScalar AbelcsScalar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
//
// # Safety
// `buf` must be null or valid for `len` bytes; `needed` null or writable.
enum AbelcsStatus abelcs_last_error(char *buf, size_t len, size_t *needed);

// Parses `.slc` text.
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum AbelcsStatus abelcs_diagram_parse(const char *text, struct AbelcsDiagram **out);

// # Safety
// `d` must be null or a handle from `abelcs_diagram_parse` not yet freed.
void abelcs_diagram_free(struct AbelcsDiagram *d);

// Level `N` of the diagram, or 0 for a null handle.
//
// # Safety
// `d` must be null or a live diagram handle.
uint32_t abelcs_diagram_level(const struct AbelcsDiagram *d);

// The invariant of the diagram computed slice by slice.
//
// # Safety
// `d` must be a live diagram handle and `out` writable.
enum AbelcsStatus abelcs_diagram_evaluate(const struct AbelcsDiagram *d, struct AbelcsScalar **out);

// The invariant from colours, framings and linking numbers.
//
// # Safety
// `d` must be a live diagram handle and `out` writable.
enum AbelcsStatus abelcs_diagram_oracle(const struct AbelcsDiagram *d, struct AbelcsScalar **out);

// `t^e` at level `n`.
//
// # Safety
// `out` must be writable.
enum AbelcsStatus abelcs_scalar_t_power(uint32_t n, int64_t e, struct AbelcsScalar **out);

// # Safety
// `s` must be null or a live scalar handle.
void abelcs_scalar_free(struct AbelcsScalar *s);

// Writes 1 to `out` when the scalars are equal, else 0.
//
// # Safety
// `a`, `b` must be live scalar handles and `out` writable.
enum AbelcsStatus abelcs_scalar_equal(const struct AbelcsScalar *a,
                                      const struct AbelcsScalar *b,
                                      int32_t *out);

// # Safety
// `s` must be a live scalar handle; `re` and `im` writable.
enum AbelcsStatus abelcs_scalar_to_complex(const struct AbelcsScalar *s, double *re, double *im);

// Canonical text form, e.g. `N^{0} * (-1 t^2)`. Call with a null buffer to
// learn the size.
//
// # Safety
// `s` must be a live scalar handle; `buf` null or valid for `len` bytes;
// `needed` null or writable.
enum AbelcsStatus abelcs_scalar_to_string(const struct AbelcsScalar *s,
                                          char *buf,
                                          size_t len,
                                          size_t *needed);

// Checks the Hopf, quasitriangular and ribbon identities at level `n`;
// `passed` receives 1 when all hold.
//
// # Safety
// `passed` must be writable.
enum AbelcsStatus abelcs_qgroup_check(uint32_t n, int32_t *passed);

// `ρ(h)` for a twist word such as `T[a1]+ T[b1]-`, built by the coset sum.
//
// # Safety
// `word` must be a NUL-terminated string and `out` writable.
enum AbelcsStatus abelcs_fourier(uint32_t n,
                                 size_t g,
                                 const char *word,
                                 struct AbelcsOperator **out);

// `ρ(h)` for the same word built from the skein `Ω`.
//
// # Safety
// `word` must be a NUL-terminated string and `out` writable.
enum AbelcsStatus abelcs_fourier_omega(uint32_t n,
                                       size_t g,
                                       const char *word,
                                       struct AbelcsOperator **out);

// Number of entries violating the Egorov identity for `op` as `ρ(h)` of `word`.
//
// # Safety
// `op` must be a live operator handle, `word` a NUL-terminated string and
// `residual` writable.
enum AbelcsStatus abelcs_egorov_residual(const struct AbelcsOperator *op,
                                         const char *word,
                                         size_t *residual);

// # Safety
// `op` must be null or a live operator handle.
void abelcs_operator_free(struct AbelcsOperator *op);

// Dimension `N^g` of the space the operator acts on, or 0 for null.
//
// # Safety
// `op` must be null or a live operator handle.
size_t abelcs_operator_dim(const struct AbelcsOperator *op);

// Entry in row `row`, column `col` (the image of basis vector `col`).
//
// # Safety
// `op` must be a live operator handle and `out` writable.
enum AbelcsStatus abelcs_operator_entry(const struct AbelcsOperator *op,
                                        size_t row,
                                        size_t col,
                                        struct AbelcsScalar **out);

// Writes 1 when the operators agree up to a nonzero scalar.
//
// # Safety
// `a`, `b` must be live operator handles and `out` writable.
enum AbelcsStatus abelcs_operator_projectively_equal(const struct AbelcsOperator *a,
                                                     const struct AbelcsOperator *b,
                                                     int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABELCS_H */
