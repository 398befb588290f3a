/* C ABI for the ncdirac library. Generated by cbindgen; do not edit. */

#ifndef NCDIRAC_H
#define NCDIRAC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Functional form of the level-wide α shift; pass as the `form` argument.
 */
typedef enum NcdiracAlphaForm {
  /**
   * Quartic coupling (Ze²)² — the default used by the CLI.
   */
  NCDIRAC_ALPHA_FORM_QUARTIC = 0,
  /**
   * Cubic coupling Z²(e²)^(3/2).
   */
  NCDIRAC_ALPHA_FORM_CUBIC = 1,
} NcdiracAlphaForm;

/**
 * Status code returned by every fallible entry point.
 */
typedef enum NcdiracStatus {
  /**
   * Success; out-pointers have been written.
   */
  NCDIRAC_STATUS_OK = 0,
  /**
   * Invalid configuration or argument: unknown level label, malformed
   * config text, inconsistent α triple, index out of range.
   */
  NCDIRAC_STATUS_CONFIG = 2,
  /**
   * Domain failure in the physics: supercritical charge, divergent or
   * non-convergent integral, non-finite intermediate.
   */
  NCDIRAC_STATUS_DOMAIN = 3,
  /**
   * A required pointer argument was NULL.
   */
  NCDIRAC_STATUS_NULL_ARG = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  NCDIRAC_STATUS_UTF8 = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  NCDIRAC_STATUS_PANIC = 6,
} NcdiracStatus;

/**
 * Table selector; pass as the `table` argument of [`ncdirac_render`].
 */
typedef enum NcdiracTable {
  /**
   * Per-sublevel level diagram.
   */
  NCDIRAC_TABLE_LEVELS = 0,
  /**
   * The five n = 2 sublevel spacings.
   */
  NCDIRAC_TABLE_SPACINGS = 1,
  /**
   * Secular matrices in natural units.
   */
  NCDIRAC_TABLE_MATRICES = 2,
} NcdiracTable;

/**
 * Opaque handle: one level's correction breakdown plus its Dirac energy.
 */
typedef struct NcdiracBreakdown NcdiracBreakdown;

/**
 * Opaque handle: the five n = 2 sublevel spacings.
 */
typedef struct NcdiracSpacings NcdiracSpacings;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * NUL-terminated library version string; static, never freed.
 */
const char *ncdirac_version(void);

/**
 * Message describing the most recent failure on the calling thread, as a
 * NUL-terminated UTF-8 string. Empty until the first failure. The pointer
 * stays valid until the next failing `ncdirac_*` call on the same thread;
 * do not free it.
 */
const char *ncdirac_last_error_message(void);

/**
 * Exact Dirac energy of one level in eV (rest mass included).
 *
 * `label` is a spectroscopic label such as `"2P3/2"`; `z` is the nuclear
 * charge. On success writes the energy to `*out_ev`.
 *
 * # Safety
 * `label` must be a NUL-terminated string valid for reads; `out_ev` must be
 * valid for writes or NULL (NULL is rejected with `NULL_ARG`).
 */
enum NcdiracStatus ncdirac_level_energy_ev(const char *label, double z, double *out_ev);

/**
 * Computes the correction breakdown of one level and returns it as an
 * opaque handle in `*out`.
 *
 * `label` is a spectroscopic level label (`"2S1/2"`, `"2P3/2"`, …), `z` the
 * nuclear charge, `theta_m2` and `thetabar` the noncommutativity magnitudes
 * along +z (θ in m², θ̄ in the mirrored area convention), `alpha` either a
 * direct value in (0, 1] or NaN for constraint mode, and `form` an
 * [`NcdiracAlphaForm`] value. Free the handle with
 * [`ncdirac_breakdown_free`].
 *
 * # Safety
 * `label` must be a NUL-terminated string valid for reads; `out` must be
 * valid for writes.
 */
enum NcdiracStatus ncdirac_breakdown_new(const char *label,
                                         double z,
                                         double theta_m2,
                                         double thetabar,
                                         double alpha,
                                         int32_t form,
                                         struct NcdiracBreakdown **out);

/**
 * Canonical level label of a breakdown, borrowed from the handle; NULL if
 * `h` is NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
 */
const char *ncdirac_breakdown_level_label(const struct NcdiracBreakdown *h);

/**
 * Dirac energy of the level in eV; NaN if `h` is NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
 */
double ncdirac_breakdown_e_dirac_ev(const struct NcdiracBreakdown *h);

/**
 * Level-wide α shift in eV; NaN if `h` is NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
 */
double ncdirac_breakdown_delta_alpha_ev(const struct NcdiracBreakdown *h);

/**
 * True when the level lies outside the closed-form-validated set and its
 * radial integrals came from quadrature alone; false if `h` is NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
 */
bool ncdirac_breakdown_beyond_validated(const struct NcdiracBreakdown *h);

/**
 * Number of sublevels (2j + 1); 0 if `h` is NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
 */
size_t ncdirac_breakdown_sublevel_count(const struct NcdiracBreakdown *h);

/**
 * Label of sublevel `index` (descending j_z, e.g. `"jz=+3/2"`), borrowed
 * from the handle; NULL if `h` is NULL or `index` is out of range.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_breakdown_new`].
 */
const char *ncdirac_breakdown_sublevel_label(const struct NcdiracBreakdown *h, size_t index);

/**
 * Correction values of sublevel `index` in eV: the θ term, the θ̄ term, and
 * their total including the level-wide α shift. The full sublevel energy is
 * `ncdirac_breakdown_e_dirac_ev(h) + *total_correction_ev`.
 *
 * # Safety
 * `h` must be a live handle from [`ncdirac_breakdown_new`]; the three out
 * pointers must each be valid for writes.
 */
enum NcdiracStatus ncdirac_breakdown_sublevel_values(const struct NcdiracBreakdown *h,
                                                     size_t index,
                                                     double *e_theta_ev,
                                                     double *e_thetabar_ev,
                                                     double *total_correction_ev);

/**
 * Releases a breakdown handle. NULL is a no-op. Label pointers obtained
 * from the handle are invalid afterwards.
 *
 * # Safety
 * `h` must be NULL or a handle from [`ncdirac_breakdown_new`] that has not
 * already been freed.
 */
void ncdirac_breakdown_free(struct NcdiracBreakdown *h);

/**
 * Computes the five n = 2 sublevel spacings and returns them as an opaque
 * handle in `*out`. Each spacing is the emission-ordered difference
 * A·|θ|/α³ + B·|θ̄|/α; the coefficients A and B depend only on `z`.
 * Parameters follow [`ncdirac_breakdown_new`]. Free the handle with
 * [`ncdirac_spacings_free`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NcdiracStatus ncdirac_spacings_new(double z,
                                        double theta_m2,
                                        double thetabar,
                                        double alpha,
                                        struct NcdiracSpacings **out);

/**
 * Number of spacings (always 5 for a live handle); 0 if `h` is NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_spacings_new`].
 */
size_t ncdirac_spacings_count(const struct NcdiracSpacings *h);

/**
 * Transition label of spacing `index` (e.g.
 * `"2P1/2[jz=-1/2] -> 2S1/2[jz=-1/2]"`), borrowed from the handle; NULL if
 * `h` is NULL or `index` is out of range.
 *
 * # Safety
 * `h` must be NULL or a live handle from [`ncdirac_spacings_new`].
 */
const char *ncdirac_spacings_label(const struct NcdiracSpacings *h, size_t index);

/**
 * Coefficients and value of spacing `index`: A in eV per m² of θ, B in eV
 * per unit of θ̄ (mirrored area convention), and the evaluated gap in eV.
 *
 * # Safety
 * `h` must be a live handle from [`ncdirac_spacings_new`]; the three out
 * pointers must each be valid for writes.
 */
enum NcdiracStatus ncdirac_spacings_values(const struct NcdiracSpacings *h,
                                           size_t index,
                                           double *a_ev_per_m2,
                                           double *b_ev_per_unit,
                                           double *value_ev);

/**
 * Releases a spacings handle. NULL is a no-op.
 *
 * # Safety
 * `h` must be NULL or a handle from [`ncdirac_spacings_new`] that has not
 * already been freed.
 */
void ncdirac_spacings_free(struct NcdiracSpacings *h);

/**
 * Renders one output table from config text and returns it as a freshly
 * allocated NUL-terminated string in `*out_text`; free it with
 * [`ncdirac_string_free`].
 *
 * `config_text` uses the same line-oriented `key = value` syntax as the
 * CLI's `--config` file (empty string = defaults; the `out` key is ignored
 * here). `table` selects the table as an [`NcdiracTable`] value; the
 * config's `format` key picks CSV or JSON.
 *
 * # Safety
 * `config_text` must be a NUL-terminated string valid for reads; `out_text`
 * must be valid for writes.
 */
enum NcdiracStatus ncdirac_render(const char *config_text, int32_t table, char **out_text);

/**
 * Frees a string returned by [`ncdirac_render`]. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a pointer from [`ncdirac_render`] that has not
 * already been freed.
 */
void ncdirac_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCDIRAC_H */
