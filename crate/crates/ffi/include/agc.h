#ifndef AGC_H
#define AGC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AgcFormat {
  AGC_FORMAT_TEXT = 0,
  AGC_FORMAT_JSON = 1,
} AgcFormat;

typedef enum AgcOp {
  AGC_OP_CONJ = 0,
  AGC_OP_DISJ = 1,
  AGC_OP_COMPOSE = 2,
  AGC_OP_MERGE = 3,
  AGC_OP_QUOTIENT = 4,
  AGC_OP_SEPARATE = 5,
  /**
   * `lhs` is the antecedent.
   */
  AGC_OP_IMPLICATION = 6,
  /**
   * `lhs` is the antecedent.
   */
  AGC_OP_COIMPLICATION = 7,
} AgcOp;

typedef enum AgcStatus {
  AGC_STATUS_OK = 0,
  AGC_STATUS_NULL_POINTER = 1,
  AGC_STATUS_INVALID_UTF8 = 2,
  AGC_STATUS_PARSE_ERROR = 3,
  AGC_STATUS_INVALID_ARGUMENT = 4,
  AGC_STATUS_MIXED_ALGEBRA = 5,
  AGC_STATUS_NOT_CANONICAL = 6,
  /**
   * A law report was produced and some law missed its expected outcome.
   */
  AGC_STATUS_LAWS_FAILED = 7,
  AGC_STATUS_PANIC = 8,
} AgcStatus;

/**
 * A finite Boolean algebra over named atoms.
 */
typedef struct AgcAlgebra AgcAlgebra;

/**
 * A canonical contract over one algebra.
 */
typedef struct AgcContract AgcContract;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *agc_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void agc_string_free(char *s);

/**
 * Builds an algebra from whitespace-separated atom names.
 *
 * # Safety
 * `atoms` must be a nul-terminated string; `out_algebra` must be writable.
 */
enum AgcStatus agc_algebra_new(const char *atoms, struct AgcAlgebra **out_algebra);

/**
 * # Safety
 * `algebra` must be null or a handle from [`agc_algebra_new`] not yet freed.
 */
void agc_algebra_free(struct AgcAlgebra *algebra);

/**
 * Number of atoms, or 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a live handle.
 */
size_t agc_algebra_atom_count(const struct AgcAlgebra *algebra);

/**
 * The canonical contract `(assume, guarantee ∨ ¬assume)` from two formulas.
 *
 * # Safety
 * Pointers must be valid; strings nul-terminated.
 */
enum AgcStatus agc_contract_new(const struct AgcAlgebra *algebra,
                                const char *assume,
                                const char *guarantee,
                                struct AgcContract **out_contract);

/**
 * A contract from assumption and guarantee bitmasks; fails with
 * `NotCanonical` unless `assume | guarantee` covers every atom.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AgcStatus agc_contract_from_masks(const struct AgcAlgebra *algebra,
                                       uint64_t assume,
                                       uint64_t guarantee,
                                       struct AgcContract **out_contract);

/**
 * Parses `contract(assume = <formula>, guarantee = <formula>)`.
 *
 * # Safety
 * Pointers must be valid; `source` nul-terminated.
 */
enum AgcStatus agc_contract_parse(const struct AgcAlgebra *algebra,
                                  const char *source,
                                  struct AgcContract **out_contract);

/**
 * # Safety
 * `contract` must be null or a live handle.
 */
void agc_contract_free(struct AgcContract *contract);

/**
 * # Safety
 * Pointers must be valid.
 */
enum AgcStatus agc_contract_masks(const struct AgcContract *contract,
                                  uint64_t *out_assume,
                                  uint64_t *out_guarantee);

/**
 * Applies a binary operation. Operands must share an algebra.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AgcStatus agc_contract_op(enum AgcOp op,
                               const struct AgcContract *lhs,
                               const struct AgcContract *rhs,
                               struct AgcContract **out_contract);

/**
 * # Safety
 * Pointers must be valid.
 */
enum AgcStatus agc_contract_reciprocal(const struct AgcContract *contract,
                                       struct AgcContract **out_contract);

/**
 * Writes whether `lhs` refines `rhs`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AgcStatus agc_contract_refines(const struct AgcContract *lhs,
                                    const struct AgcContract *rhs,
                                    bool *out_result);

/**
 * Writes whether both contracts are equal (same algebra, same pair).
 *
 * # Safety
 * Pointers must be valid.
 */
enum AgcStatus agc_contract_equal(const struct AgcContract *lhs,
                                  const struct AgcContract *rhs,
                                  bool *out_result);

/**
 * Canonical text form of a contract.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AgcStatus agc_contract_render(const struct AgcContract *contract, char **out_text);

/**
 * Evaluates a specification file's source text. Parse errors fail with
 * `ParseError` and a `line:col: message` error string.
 *
 * # Safety
 * Pointers must be valid; `source` nul-terminated.
 */
enum AgcStatus agc_eval(const char *source, enum AgcFormat format, char **out_text);

/**
 * Runs law suites. `suites` is a comma-separated list or `all` (null means
 * `all`). The report is written even when the result is `LawsFailed`.
 *
 * # Safety
 * Pointers must be valid; `suites` null or nul-terminated.
 */
enum AgcStatus agc_laws(size_t atoms,
                        const char *suites,
                        uint64_t seed,
                        enum AgcFormat format,
                        char **out_text);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* AGC_H */
