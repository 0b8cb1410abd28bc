#ifndef PATHIDEAL_H
#define PATHIDEAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PiStatus {
  PI_STATUS_OK = 0,
  PI_STATUS_NULL_POINTER = 1,
  PI_STATUS_INVALID_ARGUMENT = 2,
  PI_STATUS_CAP_EXCEEDED = 3,
  PI_STATUS_OVERFLOW = 4,
  PI_STATUS_UNIT_IDEAL = 5,
  PI_STATUS_BUFFER_TOO_SMALL = 6,
  PI_STATUS_PANIC = 7,
} PiStatus;

/**
 * Multigraded Betti numbers of an ideal over a prime field.
 */
typedef struct PiBettiTable PiBettiTable;

/**
 * A monomial ideal in a fixed number of variables.
 */
typedef struct PiIdeal PiIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `I_t(L_n)`: the ideal of paths on `t` consecutive vertices of the line
 * graph on `n` vertices. It is the zero ideal when `n < t`.
 */
enum PiStatus pi_path_ideal_new(size_t n, size_t t, struct PiIdeal **result);

/**
 * Ideal generated by `count` monomials whose exponent vectors are stored
 * row after row in `exponents` (`count * ambient` entries).
 */
enum PiStatus pi_ideal_from_exponents(size_t ambient,
                                      size_t count,
                                      const uint32_t *exponents,
                                      struct PiIdeal **result);

/**
 * Minimal generators of `ideal^s`, refusing to build more than
 * `max_generators` candidate products (0 selects the default cap).
 */
enum PiStatus pi_ideal_power(const struct PiIdeal *ideal,
                             uint32_t s,
                             size_t max_generators,
                             struct PiIdeal **result);

/**
 * Releases an ideal. NULL is ignored.
 */
void pi_ideal_free(struct PiIdeal *ideal);

enum PiStatus pi_ideal_ambient(const struct PiIdeal *ideal, size_t *result);

enum PiStatus pi_ideal_generator_count(const struct PiIdeal *ideal, size_t *result);

/**
 * Copies the exponent vector of generator `index` (0-based, lex order)
 * into `buf`, which must hold at least the ambient number of entries.
 */
enum PiStatus pi_ideal_generator(const struct PiIdeal *ideal,
                                 size_t index,
                                 uint32_t *buf,
                                 size_t len);

/**
 * Writes the ideal as NUL-terminated text, e.g. `(x1*x2, x2*x3)`.
 * `needed` receives the buffer size including the terminator, also when
 * the status is `BUFFER_TOO_SMALL`.
 */
enum PiStatus pi_ideal_to_string(const struct PiIdeal *ideal,
                                 char *buf,
                                 size_t len,
                                 size_t *needed);

/**
 * Computes every multigraded Betti number of `ideal` over GF(p).
 */
enum PiStatus pi_betti_table_new(const struct PiIdeal *ideal,
                                 uint32_t characteristic,
                                 struct PiBettiTable **result);

/**
 * Releases a table. NULL is ignored.
 */
void pi_betti_table_free(struct PiBettiTable *table);

/**
 * `β_i` of the ideal.
 */
enum PiStatus pi_betti_total(const struct PiBettiTable *table, size_t i, uint64_t *result);

/**
 * `β_{i,j}` of the ideal.
 */
enum PiStatus pi_betti_graded(const struct PiBettiTable *table,
                              size_t i,
                              uint64_t j,
                              uint64_t *result);

/**
 * `reg R/I`. Fails with `UNIT_IDEAL` for the unit ideal.
 */
enum PiStatus pi_regularity(const struct PiBettiTable *table, int64_t *result);

/**
 * `pd R/I`.
 */
enum PiStatus pi_projective_dimension(const struct PiBettiTable *table, size_t *result);

/**
 * Whether the ideal has a linear resolution. Ideals with generators of
 * several degrees never do.
 */
enum PiStatus pi_has_linear_resolution(const struct PiBettiTable *table, bool *result);

/**
 * `Γ(n, t)`, the regularity of `R/I_t(L_n)`.
 */
enum PiStatus pi_gamma(uint64_t n, uint64_t t, uint64_t *result);

/**
 * Closed-form `reg R/I_t(L_n)^s`.
 */
enum PiStatus pi_reg_power(uint64_t n, uint64_t t, uint64_t s, uint64_t *result);

/**
 * Closed-form `β_i(I_t(L_n)^s)` for `t <= n <= 2t`.
 */
enum PiStatus pi_betti_closed_form(uint64_t n,
                                   uint64_t t,
                                   uint64_t s,
                                   uint64_t i,
                                   uint64_t *result);

/**
 * Closed-form `pd R/I_t(L_n)^s` for `t <= n <= 2t`.
 */
enum PiStatus pi_pd_closed_form(uint64_t n, uint64_t t, uint64_t s, uint64_t *result);

/**
 * Copies the calling thread's last error message into `buf` as
 * NUL-terminated UTF-8 and returns the size it needs (0 when there is no
 * message). Nothing is written if `buf` is NULL or too small.
 */
size_t pi_last_error_message(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHIDEAL_H */
