#ifndef SQUEEZNET_H
#define SQUEEZNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result code of every fallible call.
typedef enum SqnStatus {
  SQN_STATUS_OK = 0,
  SQN_STATUS_NULL_POINTER = 1,
  // Bad dimensions, out-of-domain parameters or an invalid generator.
  SQN_STATUS_INVALID_ARGUMENT = 2,
  // The network text did not parse or elaborate.
  SQN_STATUS_PARSE = 3,
  // The system is not Hurwitz stable, or is at threshold.
  SQN_STATUS_UNSTABLE = 4,
  // Evaluation hit a pole, a singular matrix or an algebraic loop.
  SQN_STATUS_SINGULAR = 5,
  // No critical reflectivity exists for these parameters.
  SQN_STATUS_NO_CRITICAL_POINT = 6,
  // A Rust panic was caught; this is a bug.
  SQN_STATUS_INTERNAL = 7,
} SqnStatus;

// Opaque handle to a linear generator.
typedef struct SqnGenerator SqnGenerator;

// A complex number with the layout of C99 `double _Complex`.
typedef struct SqnComplex {
  double re;
  double im;
} SqnComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *sqn_version(void);

// Message for the most recent failure on this thread; empty after a
// successful call. Valid until the next call into the library.
const char *sqn_last_error_message(void);

// Builds a generator from row-major matrices: `s` is `ports×ports`,
// `c_minus`/`c_plus` are `ports×modes`, `omega_minus`/`omega_plus` are
// `modes×modes`.
//
// # Safety
// Each matrix pointer must reference the stated number of elements; `out`
// must be writable.
enum SqnStatus sqn_generator_new(size_t ports,
                                 size_t modes,
                                 const struct SqnComplex *s,
                                 const struct SqnComplex *c_minus,
                                 const struct SqnComplex *c_plus,
                                 const struct SqnComplex *omega_minus,
                                 const struct SqnComplex *omega_plus,
                                 struct SqnGenerator **out);

// Degenerate parametric amplifier, closed through a standard splitter of
// reflectivity `alpha` when `has_alpha` is true. `single_port` selects the
// lossless one-port model (requires `gamma == 0`).
//
// # Safety
// `out` must be writable.
enum SqnStatus sqn_generator_dpa(double kappa,
                                 double gamma,
                                 double epsilon,
                                 bool has_alpha,
                                 double alpha,
                                 bool single_port,
                                 struct SqnGenerator **out);

// Parses a network document and returns the elaborated generator of
// `component`, or of the only component when `component` is null.
//
// # Safety
// `text` (and `component`, if non-null) must be NUL-terminated UTF-8;
// `out` must be writable.
enum SqnStatus sqn_generator_from_network(const char *text,
                                          const char *component,
                                          struct SqnGenerator **out);

// Closes port `port` (0-based) of `g` through a standard splitter of
// reflectivity `alpha`. `g` is left unchanged.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum SqnStatus sqn_generator_feedback(const struct SqnGenerator *g,
                                      double alpha,
                                      size_t port,
                                      struct SqnGenerator **out);

// Number of field ports, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t sqn_generator_ports(const struct SqnGenerator *g);

// Number of internal modes, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t sqn_generator_modes(const struct SqnGenerator *g);

// Releases a handle. Null is ignored.
//
// # Safety
// `g` must be null or a handle not yet freed.
void sqn_generator_free(struct SqnGenerator *g);

// Hurwitz test of the drift matrix: stable iff the spectral abscissa is
// below `-margin`.
//
// # Safety
// `g` must be a live handle; the output pointers must be writable.
enum SqnStatus sqn_is_hurwitz(const struct SqnGenerator *g,
                              double margin,
                              bool *stable,
                              double *abscissa);

// `𝒮₋(ω)` and `𝒮₊(ω)`, each `ports×ports`, row-major.
//
// # Safety
// `g` must be a live handle; each output must hold `ports²` elements.
enum SqnStatus sqn_frequency_response(const struct SqnGenerator *g,
                                      double omega,
                                      struct SqnComplex *s_minus,
                                      struct SqnComplex *s_plus);

// Correlation matrices `𝒩(ω)`, `ℳ(ω)` and the PSD `𝒫(ω, θ)` (each
// `ports×ports`), plus `r(ω)` for single-port systems (NaN otherwise).
// Refuses unstable systems. Any matrix output may be null to skip it.
//
// # Safety
// `g` must be a live handle; non-null outputs must hold `ports²` elements
// and `r` must be writable.
enum SqnStatus sqn_spectral_sample(const struct SqnGenerator *g,
                                   double omega,
                                   double theta,
                                   struct SqnComplex *n,
                                   struct SqnComplex *m,
                                   struct SqnComplex *psd,
                                   double *r);

// Reflectivity at which a DPA loop reaches threshold.
//
// # Safety
// `out` must be writable.
enum SqnStatus sqn_dpa_critical_alpha(double kappa, double gamma, double epsilon, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQUEEZNET_H */
