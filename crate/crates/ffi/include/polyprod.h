#ifndef POLYPROD_H
#define POLYPROD_H

#include <stdbool.h>
#include <stddef.h>

// Result codes.
typedef enum PpStatus {
  PP_STATUS_OK = 0,
  // A null pointer or a string that is not UTF-8.
  PP_STATUS_INVALID_ARGUMENT = 1,
  // Malformed text or JSON.
  PP_STATUS_PARSE = 2,
  // Well-formed input that violates a precondition.
  PP_STATUS_VALIDATION = 3,
  // A size cap was exceeded.
  PP_STATUS_SIZE_LIMIT = 4,
  // The class tag needs a fibre hypothesis that was neither given nor derivable.
  PP_STATUS_HYPOTHESIS_MISSING = 5,
  // An abstract space lacks the data the computation needs.
  PP_STATUS_INSUFFICIENT_DATA = 6,
  // An internal invariant failed.
  PP_STATUS_INTERNAL = 7,
} PpStatus;

// A simplicial complex.
typedef struct PpComplex PpComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *pp_last_error(void);

// Parses a complex in the text or JSON format.
//
// # Safety
// `text` is a nul-terminated string; `out` is writable.
enum PpStatus pp_complex_parse(const char *text, struct PpComplex **out);

// # Safety
// `k` is null or was returned by `pp_complex_parse` and not yet freed.
void pp_complex_free(struct PpComplex *k);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `k` is null or a live handle.
size_t pp_complex_vertex_count(const struct PpComplex *k);

// Minimal non-faces as a JSON array of vertex arrays.
//
// # Safety
// `k` is a live handle; `out` is writable.
enum PpStatus pp_minimal_nonfaces_json(const struct PpComplex *k, char **out);

// Reduced homology of the complex.
//
// # Safety
// `k` is a live handle; `coeff` a nul-terminated string; `out` writable.
enum PpStatus pp_reduced_homology_json(const struct PpComplex *k, const char *coeff, char **out);

// `H̃(Z_K(CX, X))` from the wedge decomposition, with its summands.
// `spaces` is a comma-separated list of space shorthands or files.
//
// # Safety
// `k` is a live handle; the strings are nul-terminated; `out` writable.
enum PpStatus pp_zk_homology_json(const struct PpComplex *k,
                                  const char *spaces,
                                  const char *coeff,
                                  char **out);

// `H̃(Z_K(CX, X))` from the cellular model.
//
// # Safety
// As for `pp_zk_homology_json`.
enum PpStatus pp_oracle_homology_json(const struct PpComplex *k,
                                      const char *spaces,
                                      const char *coeff,
                                      char **out);

// Reduced homology of the graph-product kernel for the given graph (text or
// JSON) and comma-separated cardinalities.
//
// # Safety
// The strings are nul-terminated; `out` is writable.
enum PpStatus pp_kernel_homology_json(const char *graph,
                                      const char *cards,
                                      const char *coeff,
                                      char **out);

// Classifies `Z_K(X, A)` for a class tag such as `P`, `F_3` or `E_0`.
// `fibre` is fibre JSON or a space shorthand; `hypotheses` is null or a
// comma-separated list added to the fibre.
//
// # Safety
// `k` is a live handle; the strings are nul-terminated or (for
// `hypotheses`) null; `out` is writable.
enum PpStatus pp_classify_json(const struct PpComplex *k,
                               const char *tag,
                               const char *fibre,
                               const char *hypotheses,
                               bool x_in_class,
                               char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` is null or a string returned by this library and not yet freed.
void pp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYPROD_H */
