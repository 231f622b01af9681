#ifndef CURVMAP_H
#define CURVMAP_H

/* C interface to the curvmap library: constant-curvature model spaces,
 * azimuthal maps between them, sharp anisometry lower bounds, and the
 * numerical verification suites.
 *
 * Every fallible call returns a curvmap_status and writes results through
 * out pointers.  On failure the out values are unspecified and
 * curvmap_last_error() describes the problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CURVMAP_API __declspec(dllexport)
#else
#define CURVMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum curvmap_status {
    CURVMAP_OK = 0,
    CURVMAP_ERR_DOMAIN = 1,         /* argument outside the math domain */
    CURVMAP_ERR_RANGE = 2,          /* result outside the representable range */
    CURVMAP_ERR_INVALID = 3,        /* malformed argument or null pointer */
    CURVMAP_ERR_NO_CONVERGENCE = 4, /* iteration failed to converge */
    CURVMAP_ERR_INTERNAL = 5
} curvmap_status;

CURVMAP_API const char* curvmap_version(void);

/* Message for the most recent failing call on this thread; empty string if
 * none.  The pointer stays valid until the thread's next failing call. */
CURVMAP_API const char* curvmap_last_error(void);

/* ---- curvature trigonometry ------------------------------------------- */

CURVMAP_API curvmap_status curvmap_sin_k(double kappa, double t, double* out);
CURVMAP_API curvmap_status curvmap_cos_k(double kappa, double t, double* out);
CURVMAP_API curvmap_status curvmap_tan_k(double kappa, double t, double* out);
CURVMAP_API curvmap_status curvmap_arctan_k(double kappa, double x,
                                            double* out);
/* sin_k(2 arctan_k(x)) in rational form 2x / (1 + kappa x^2). */
CURVMAP_API curvmap_status curvmap_g_k(double kappa, double x, double* out);

/* ---- model spaces ------------------------------------------------------ */

typedef struct curvmap_space curvmap_space;

CURVMAP_API curvmap_status curvmap_space_create(int n, double kappa,
                                                curvmap_space** out);
CURVMAP_API void curvmap_space_destroy(curvmap_space* space);

CURVMAP_API curvmap_status curvmap_space_conjugate_radius(
    const curvmap_space* space, double* out);
CURVMAP_API curvmap_status curvmap_space_sphere_area(
    const curvmap_space* space, double t, double* out);
CURVMAP_API curvmap_status curvmap_space_ball_volume(
    const curvmap_space* space, double t, double* out);
CURVMAP_API curvmap_status curvmap_space_ball_volume_inverse(
    const curvmap_space* space, double v, double* out);
CURVMAP_API curvmap_status curvmap_space_full_volume(
    const curvmap_space* space, double* out);
CURVMAP_API curvmap_status curvmap_space_isoperimetric_profile(
    const curvmap_space* space, double v, double* out);

/* Normalizations, in the space's curvature and dimension:
 *   SIN, COS, TAN, ARCTAN   sin_k(t)/t, cos_k(t), tan_k(t)/t, arctan_k(x)/x
 *                           as series in t^2 (resp. x^2)
 *   SPHERE_AREA             A(t) / (omega_{n-1} t^{n-1})
 *   BALL_VOLUME             V(t) / ((omega_{n-1}/n) t^n)
 *   ISO_PROFILE             I(v) as series c0 v^{(n-1)/n} + c1 v^{(n+1)/n} */
typedef enum curvmap_series {
    CURVMAP_SERIES_SIN = 0,
    CURVMAP_SERIES_COS = 1,
    CURVMAP_SERIES_TAN = 2,
    CURVMAP_SERIES_ARCTAN = 3,
    CURVMAP_SERIES_SPHERE_AREA = 4,
    CURVMAP_SERIES_BALL_VOLUME = 5,
    CURVMAP_SERIES_ISO_PROFILE = 6
} curvmap_series;

/* Writes up to `cap` leading coefficients, lowest order first, and stores
 * the count actually available in *len (may exceed cap; only cap are
 * written). */
CURVMAP_API curvmap_status curvmap_space_taylor(const curvmap_space* space,
                                                curvmap_series kind,
                                                double* out, size_t cap,
                                                size_t* len);

/* ---- azimuthal maps ---------------------------------------------------- */

typedef struct curvmap_map curvmap_map;

typedef enum curvmap_map_family {
    CURVMAP_MAP_EQUIDISTANT = 0,
    CURVMAP_MAP_CONTRACTING = 1,
    CURVMAP_MAP_CONFORMAL = 2,
    CURVMAP_MAP_VOLUME_PRESERVING = 3,
    CURVMAP_MAP_QC_OPTIMAL = 4
} curvmap_map_family;

CURVMAP_API curvmap_status curvmap_map_equidistant(double rho, double kappa,
                                                   int n, double alpha,
                                                   curvmap_map** out);
CURVMAP_API curvmap_status curvmap_map_contracting(double rho, double kappa,
                                                   int n, double alpha,
                                                   double sigma,
                                                   curvmap_map** out);
CURVMAP_API curvmap_status curvmap_map_conformal(double rho, double kappa,
                                                 int n, double alpha,
                                                 double sigma,
                                                 curvmap_map** out);
CURVMAP_API curvmap_status curvmap_map_volume_preserving(double rho,
                                                         double kappa, int n,
                                                         double alpha,
                                                         curvmap_map** out);
/* Linear stretch sigma up to beta, then the profile that keeps the
 * tangential to radial stretch ratio exactly Q. */
CURVMAP_API curvmap_status curvmap_map_qc_optimal(double rho, double kappa,
                                                  int n, double alpha,
                                                  double Q, double sigma,
                                                  double beta,
                                                  curvmap_map** out);
CURVMAP_API void curvmap_map_destroy(curvmap_map* map);

typedef struct curvmap_map_info {
    double rho;
    double kappa;
    int n;
    double alpha;
    int family; /* curvmap_map_family */
    double sigma;
    double Q;
    double beta;
} curvmap_map_info;

CURVMAP_API curvmap_status curvmap_map_get_info(const curvmap_map* map,
                                                curvmap_map_info* out);

CURVMAP_API curvmap_status curvmap_map_distance(const curvmap_map* map,
                                                double t, double* out);
CURVMAP_API curvmap_status curvmap_map_derivative(const curvmap_map* map,
                                                  double t, double* out);
CURVMAP_API curvmap_status curvmap_map_singular_values(const curvmap_map* map,
                                                       double t,
                                                       double* radial,
                                                       double* tangential);
CURVMAP_API curvmap_status curvmap_map_jacobian(const curvmap_map* map,
                                                double t, double* out);
CURVMAP_API curvmap_status curvmap_map_image_ball_volume(
    const curvmap_map* map, double t, double* out);
/* Least source radius at which the image leaves the target chart; +inf when
 * the image stays inside through alpha. */
CURVMAP_API curvmap_status curvmap_map_chart_exit_radius(
    const curvmap_map* map, double* out);

typedef struct curvmap_anisometry_report {
    double sigma1;
    double sigma2;
    double aniso; /* |log sigma1| + |log sigma2| */
    double argmin_radius;
    double argmax_radius;
    int unbounded;
    int alpha_exceeds_convexity;
} curvmap_anisometry_report;

CURVMAP_API curvmap_status curvmap_map_anisometry(
    const curvmap_map* map, double rel_tol, curvmap_anisometry_report* out);

/* Samples a resolution x resolution polar grid, t-major; rows past the
 * chart exit radius are dropped.  Each row is 5 doubles:
 * t, u_index, R, radial stretch, tangential stretch.  `rows` must hold
 * 5 * resolution * resolution doubles; *n_rows receives the row count. */
CURVMAP_API curvmap_status curvmap_map_project_grid(const curvmap_map* map,
                                                    int resolution,
                                                    double* rows,
                                                    size_t* n_rows);

/* ---- anisometry lower bounds ------------------------------------------- */

typedef enum curvmap_bound_class {
    CURVMAP_BOUND_GENERAL = 0,
    CURVMAP_BOUND_VOLUME_PRESERVING = 1,
    CURVMAP_BOUND_CONFORMAL = 2,
    CURVMAP_BOUND_QUASICONFORMAL = 3
} curvmap_bound_class;

typedef struct curvmap_bound_query {
    double rho;   /* source curvature */
    double kappa; /* target curvature, kappa <= rho */
    int n;        /* dimension, n >= 2 */
    double alpha; /* source ball radius */
    int cls;      /* curvmap_bound_class */
    double Q;     /* quasiconformality constant, class QUASICONFORMAL only */
    double inj_m; /* source injectivity radius, +inf for the model space */
    double inj_n; /* target injectivity radius */
} curvmap_bound_query;

typedef struct curvmap_bound_result {
    double value; /* sharp lower bound for the anisometry */
    double sigma1;
    double sigma2;
    double validity_radius;
    int validity_ok; /* alpha <= validity_radius */
} curvmap_bound_result;

/* Fills a default query: cls GENERAL, Q 1, infinite injectivity radii. */
CURVMAP_API void curvmap_bound_query_init(curvmap_bound_query* q);

/* Evaluates the sharp bound for the query's class.  When `optimal_map` is
 * non-null it receives a map attaining the bound; the caller owns it. */
CURVMAP_API curvmap_status curvmap_bound(const curvmap_bound_query* q,
                                         curvmap_bound_result* out,
                                         curvmap_map** optimal_map);

/* Largest radius the query's bound is certified for. */
CURVMAP_API curvmap_status curvmap_validity_radius(
    const curvmap_bound_query* q, double* out);

/* Contraction factor in (0, 1] with sin_k(kappa, sigma0 alpha) =
 * sin_k(rho, alpha); requires kappa <= rho. */
CURVMAP_API curvmap_status curvmap_sigma0_contraction(double rho,
                                                      double kappa,
                                                      double alpha,
                                                      double* out);

/* Leading coefficient c with bound ~ c alpha^2 as alpha -> 0. */
CURVMAP_API curvmap_status curvmap_small_alpha_coefficient(int cls,
                                                           double rho,
                                                           double kappa,
                                                           int n,
                                                           double* out);

/* F with F(V_kappa(t)) = Q log tan_k(kappa, t/2). */
CURVMAP_API curvmap_status curvmap_f_kappa_q(double kappa, int n, double Q,
                                             double v, double* out);

/* Lower bound for the largest stretch of a Q-quasiconformal map sending the
 * beta-sphere to radius r_beta; +inf past the target pole. */
CURVMAP_API curvmap_status curvmap_qc_sigma2_lower(double rho, double kappa,
                                                   int n, double Q,
                                                   double alpha, double beta,
                                                   double r_beta,
                                                   double* out);

/* sigma2 >= sin_k(kappa, sigma1 alpha) / sin_k(rho, alpha). */
CURVMAP_API curvmap_status curvmap_general_sigma2_lemma(double rho,
                                                        double kappa, int n,
                                                        double sigma1,
                                                        double alpha,
                                                        double* out);

/* Conformal(sigma0) profile between unit-curvature hyperbolic spaces.
 * sigma0 <= 1: *blows_up = 0, *radius = bounded image radius.
 * sigma0 >  1: *blows_up = 1, *radius = escape radius 2 artanh(1/sigma0). */
CURVMAP_API curvmap_status curvmap_ahlfors_blowup(double sigma0, double alpha,
                                                  int* blows_up,
                                                  double* radius);

/* Kink radius of the optimal Q-quasiconformal profile with linear stretch
 * sigma; NaN when the linear profile stays Q-quasiconformal through alpha. */
CURVMAP_API curvmap_status curvmap_qc_beta(double rho, double kappa,
                                           double alpha, double Q,
                                           double sigma, double* out);

/* ---- symmetric positive definite forms --------------------------------- */

/* Forms are dense row-major dim x dim buffers, symmetrized on input. */

CURVMAP_API curvmap_status curvmap_form_eigenvalues(int dim,
                                                    const double* entries,
                                                    double* out /* dim */);
CURVMAP_API curvmap_status curvmap_form_extremes(int dim,
                                                 const double* entries,
                                                 double* sigma1,
                                                 double* sigma2);
CURVMAP_API curvmap_status curvmap_form_determinant(int dim,
                                                    const double* entries,
                                                    double* out);
/* Restriction to the hyperplane orthogonal to `normal` (dim doubles);
 * writes a (dim-1) x (dim-1) row-major buffer. */
CURVMAP_API curvmap_status curvmap_form_restrict(int dim,
                                                 const double* entries,
                                                 const double* normal,
                                                 double* out);

typedef struct curvmap_lemma_report {
    double det_full;
    double det_restricted;
    double sigma1;
    double sigma2;
    double slack_sigma1; /* det_full - det_restricted * sigma1 */
    double slack_power;  /* det_full - det_restricted^{n/(n-1)} / Q */
} curvmap_lemma_report;

CURVMAP_API curvmap_status curvmap_ellipsoid_lemma_check(
    int dim, const double* entries, const double* normal, double Q,
    curvmap_lemma_report* out);

/* Draws an SPD form with spectrum inside [lambda, Q lambda] conjugated by a
 * random rotation; advances *state deterministically. */
CURVMAP_API curvmap_status curvmap_random_spd(int dim, double lambda,
                                              double Q, uint64_t* state,
                                              double* entries_out);

/* ---- verification suites ----------------------------------------------- */

/* Comma-separated list of valid suite names; static storage. */
CURVMAP_API const char* curvmap_verify_suite_names(void);

/* Runs a suite deterministically for the seed.  *json_report receives a
 * malloc'd JSON document (release with curvmap_string_free) and
 * *all_passed is 1 iff every check passed.  Either out pointer may be
 * null. */
CURVMAP_API curvmap_status curvmap_verify_run(const char* suite,
                                              uint64_t seed,
                                              char** json_report,
                                              int* all_passed);
CURVMAP_API void curvmap_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CURVMAP_H */
