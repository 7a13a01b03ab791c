/* ahscat - stationary scattering for radial Dirac systems on asymptotically
 * hyperbolic backgrounds: C interface.
 *
 * Conventions:
 *   - every function returns an ahs_status; outputs go through pointers
 *   - complex numbers travel as interleaved double pairs (re, im)
 *   - 2x2 matrices travel as double[8] = re11,im11,re12,im12,re21,im21,re22,im22
 *   - on AHS_OK all outputs are valid; otherwise ahs_last_error() describes
 *     the failure (thread local)
 *   - handles are created by ahs_profile_* constructors and released with
 *     ahs_profile_free; strings returned through char** are released with
 *     ahs_string_free
 */
#ifndef AHSCAT_H
#define AHSCAT_H

#include <stddef.h>

#if defined(_WIN32)
#define AHS_API __declspec(dllexport)
#else
#define AHS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ahs_status {
  AHS_OK = 0,
  AHS_ERR_INVALID = 1, /* bad arguments / preconditions */
  AHS_ERR_DOMAIN = 2,  /* evaluation outside the valid domain */
  AHS_ERR_NUMERIC = 3, /* solver, quadrature or fit failure */
  AHS_ERR_IO = 4       /* file access or parse failure */
} ahs_status;

typedef struct ahs_profile ahs_profile;

AHS_API const char* ahs_version(void);
AHS_API const char* ahs_last_error(void);
AHS_API void ahs_string_free(char* s);

/* ---- radial potentials ---------------------------------------------------- */

AHS_API ahs_status ahs_profile_sech(ahs_profile** out);
AHS_API ahs_status ahs_profile_scaled_sech(double amplitude, double rate,
                                           ahs_profile** out);
AHS_API ahs_status ahs_profile_bumped_sech(double center, double width,
                                           double height, ahs_profile** out);
AHS_API ahs_status ahs_profile_tabulated(const double* x, const double* a,
                                         size_t count, ahs_profile** out);
AHS_API ahs_status ahs_profile_load_table(const char* path, ahs_profile** out);
AHS_API ahs_status ahs_profile_blackhole(double M, double Q, double Lambda,
                                         ahs_profile** out);
AHS_API ahs_status ahs_profile_translate(const ahs_profile* p, double c,
                                         ahs_profile** out);
AHS_API ahs_status ahs_profile_reflect(const ahs_profile* p, ahs_profile** out);
AHS_API void ahs_profile_free(ahs_profile* p);

AHS_API ahs_status ahs_profile_eval(const ahs_profile* p, double x, double* a,
                                    double* a_prime);
/* constants[6] = a_minus, kappa_minus, a_plus, kappa_plus, cutoff, width A */
AHS_API ahs_status ahs_profile_constants(const ahs_profile* p,
                                         double constants[6]);
/* log-linear tail fit over [lo, hi] (right) and [-hi, -lo] (left):
 * fit[6] = a_minus, kappa_minus, a_plus, kappa_plus, rms_minus, rms_plus */
AHS_API ahs_status ahs_profile_fit_tails(const ahs_profile* p, double lo,
                                         double hi, double fit[6]);
AHS_API ahs_status ahs_profile_forward(const ahs_profile* p, double x,
                                       double* X); /* X = g(x) */
AHS_API ahs_status ahs_profile_inverse(const ahs_profile* p, double X,
                                       double* x); /* x = h(X) */
/* q(X) = lambda^2 h'(X)^2 - i lambda h''(X) on (0, A) */
AHS_API ahs_status ahs_sturm_liouville_q(const ahs_profile* p, double lambda,
                                         double X, double* re, double* im);

/* ---- black-hole geometry --------------------------------------------------- */

/* radii[4] = r_n, r_c, r_minus, r_plus; kappas[4] likewise */
AHS_API ahs_status ahs_bh_horizons(double M, double Q, double Lambda,
                                   double radii[4], double kappas[4]);
AHS_API ahs_status ahs_bh_regge_wheeler(double M, double Q, double Lambda,
                                        double r, double c, double* x);
AHS_API ahs_status ahs_bh_exterior_width(double M, double Q, double Lambda,
                                         double* A);
/* least squares over (M, Q^2, Lambda); residual is the rms mismatch */
AHS_API ahs_status ahs_bh_recover(double A, double kappa_minus,
                                  double kappa_plus, double a_minus,
                                  double a_plus, double* M, double* Q2,
                                  double* Lambda, double* residual,
                                  int* consistent);

/* ---- Jost solutions and scattering data ------------------------------------ */

/* side: 0 = left (normalized at +inf), 1 = right (normalized at -inf).
 * entries[8] as above; the true matrix is e^{log_scale} * entries. */
AHS_API ahs_status ahs_jost(const ahs_profile* p, int side, double lambda,
                            double z_re, double z_im, double x,
                            double entries[8], double* log_scale,
                            double* tail_error);
/* term-by-term iterated-integral reference solution (solver cross-check) */
AHS_API ahs_status ahs_jost_series(const ahs_profile* p, int side, double lambda,
                                   double z_re, double z_im, double x,
                                   int max_terms, double tol,
                                   double entries[8]);
AHS_API ahs_status ahs_transfer_matrix(const ahs_profile* p, double lambda,
                                       double z_re, double z_im,
                                       double entries[8], double* log_scale);
/* tlr[6] = Re T, Im T, Re L, Im L, Re R, Im R at integer angular momentum */
AHS_API ahs_status ahs_s_matrix(const ahs_profile* p, double lambda, int n,
                                double tlr[6], double* unitarity_residual);
AHS_API ahs_status ahs_star_reflection_residual(const ahs_profile* p,
                                                double lambda, int n,
                                                double* residual);

/* ---- complex-angular-momentum analysis ------------------------------------- */

/* zeros of the a3 entry inside [re_lo, re_hi] x [im_lo, im_hi]; zeros are
 * written as (re, im) pairs, residuals alongside; *count receives the number
 * found; the winding number certifies the count */
AHS_API ahs_status ahs_find_zeros(const ahs_profile* p, double lambda,
                                  double re_lo, double im_lo, double re_hi,
                                  double im_hi, size_t capacity, double* zeros,
                                  double* residuals, size_t* count,
                                  long* winding);
/* fit[4] = slope, p_estimate, spacing_residual, realpart_residual */
AHS_API ahs_status ahs_zero_lattice_fit(const double* zeros, size_t count,
                                        double A, double kappa_minus,
                                        double kappa_plus, double lambda,
                                        double fit[4]);

/* ---- large-z closed forms --------------------------------------------------- */

AHS_API ahs_status ahs_complex_gamma(double re, double im, double* out_re,
                                     double* out_im);
/* which: 0 = T, 1 = L, 2 = a1, 3 = a3 */
AHS_API ahs_status ahs_predicted(const ahs_profile* p, int which, double lambda,
                                 double z_re, double z_im, double* out_re,
                                 double* out_im);
AHS_API ahs_status ahs_fit_exponential_decay(const int* n, const double* value,
                                             size_t count, int window_lo,
                                             int window_hi, double* rate,
                                             double* intercept, double* rms);
/* slope of unwrapped arg L(lambda, n) against ln n over [n_lo, n_hi] */
AHS_API ahs_status ahs_recover_kappa_minus(const ahs_profile* p, double lambda,
                                           int n_lo, int n_hi, double* kappa);

/* ---- inverse experiments (JSON reports) ------------------------------------- */

/* side: 0 = left reflection data, 1 = right */
AHS_API ahs_status ahs_uniqueness_experiment(const ahs_profile* pa,
                                             const ahs_profile* pb,
                                             double lambda, int n_max, int side,
                                             char** json_report);
AHS_API ahs_status ahs_transmission_experiment(const ahs_profile* pa,
                                               const ahs_profile* pb,
                                               double lambda, int n_max,
                                               char** json_report);
AHS_API ahs_status ahs_hardy_trials(double B, double b_max, int trials,
                                    unsigned seed, char** json_report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AHSCAT_H */
