#include "curvmap/curvmap.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/azimuthal.hpp"
#include "core/bounds.hpp"
#include "core/ellipsoid.hpp"
#include "core/errors.hpp"
#include "core/model_space.hpp"
#include "core/verify.hpp"

struct curvmap_space {
    curvmap::model_space impl;
};

struct curvmap_map {
    curvmap::azimuthal_map impl;
};

namespace {

static_assert(static_cast<int>(curvmap::series_kind::sin_series) ==
              CURVMAP_SERIES_SIN);
static_assert(static_cast<int>(curvmap::series_kind::iso_profile_series) ==
              CURVMAP_SERIES_ISO_PROFILE);
static_assert(static_cast<int>(curvmap::map_family::equidistant) ==
              CURVMAP_MAP_EQUIDISTANT);
static_assert(static_cast<int>(curvmap::map_family::qc_optimal) ==
              CURVMAP_MAP_QC_OPTIMAL);
static_assert(static_cast<int>(curvmap::bound_class::general) ==
              CURVMAP_BOUND_GENERAL);
static_assert(static_cast<int>(curvmap::bound_class::quasiconformal) ==
              CURVMAP_BOUND_QUASICONFORMAL);

thread_local std::string t_last_error;

void set_error(const char* what) { t_last_error = what ? what : ""; }

curvmap_status null_argument() {
    set_error("null pointer argument");
    return CURVMAP_ERR_INVALID;
}

template <class F>
curvmap_status guarded(F&& body) noexcept {
    try {
        body();
        return CURVMAP_OK;
    } catch (const curvmap::domain_error& e) {
        set_error(e.what());
        return CURVMAP_ERR_DOMAIN;
    } catch (const curvmap::range_error& e) {
        set_error(e.what());
        return CURVMAP_ERR_RANGE;
    } catch (const curvmap::invalid_argument& e) {
        set_error(e.what());
        return CURVMAP_ERR_INVALID;
    } catch (const curvmap::convergence_error& e) {
        set_error(e.what());
        return CURVMAP_ERR_NO_CONVERGENCE;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return CURVMAP_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return CURVMAP_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown failure");
        return CURVMAP_ERR_INTERNAL;
    }
}

curvmap::bound_query to_query(const curvmap_bound_query& q) {
    if (q.cls < CURVMAP_BOUND_GENERAL || q.cls > CURVMAP_BOUND_QUASICONFORMAL)
        throw curvmap::invalid_argument("bound_query: unknown map class");
    return {q.rho,
            q.kappa,
            q.n,
            q.alpha,
            static_cast<curvmap::bound_class>(q.cls),
            q.Q,
            q.inj_m,
            q.inj_n};
}

std::vector<double> to_entries(int dim, const double* entries) {
    if (dim < 1)
        throw curvmap::invalid_argument("quadratic form: dimension < 1");
    return std::vector<double>(entries,
                               entries + static_cast<size_t>(dim) * dim);
}

curvmap_status make_map(curvmap_map** out, curvmap::azimuthal_map&& m) {
    *out = new curvmap_map{std::move(m)};
    return CURVMAP_OK;
}

} // namespace

extern "C" {

const char* curvmap_version(void) { return "1.0.0"; }

const char* curvmap_last_error(void) { return t_last_error.c_str(); }

/* ---- curvature trigonometry ------------------------------------------- */

curvmap_status curvmap_sin_k(double kappa, double t, double* out) {
    if (!out) return null_argument();
    return guarded([&] { *out = curvmap::sin_k(kappa, t); });
}

curvmap_status curvmap_cos_k(double kappa, double t, double* out) {
    if (!out) return null_argument();
    return guarded([&] { *out = curvmap::cos_k(kappa, t); });
}

curvmap_status curvmap_tan_k(double kappa, double t, double* out) {
    if (!out) return null_argument();
    return guarded([&] { *out = curvmap::tan_k(kappa, t); });
}

curvmap_status curvmap_arctan_k(double kappa, double x, double* out) {
    if (!out) return null_argument();
    return guarded([&] { *out = curvmap::arctan_k(kappa, x); });
}

curvmap_status curvmap_g_k(double kappa, double x, double* out) {
    if (!out) return null_argument();
    return guarded([&] { *out = curvmap::g_k(kappa, x); });
}

/* ---- model spaces ------------------------------------------------------ */

curvmap_status curvmap_space_create(int n, double kappa, curvmap_space** out) {
    if (!out) return null_argument();
    return guarded([&] { *out = new curvmap_space{{n, kappa}}; });
}

void curvmap_space_destroy(curvmap_space* space) { delete space; }

curvmap_status curvmap_space_conjugate_radius(const curvmap_space* space,
                                              double* out) {
    if (!space || !out) return null_argument();
    return guarded([&] { *out = space->impl.conjugate_radius(); });
}

curvmap_status curvmap_space_sphere_area(const curvmap_space* space, double t,
                                         double* out) {
    if (!space || !out) return null_argument();
    return guarded([&] { *out = space->impl.sphere_area(t); });
}

curvmap_status curvmap_space_ball_volume(const curvmap_space* space, double t,
                                         double* out) {
    if (!space || !out) return null_argument();
    return guarded([&] { *out = space->impl.ball_volume(t); });
}

curvmap_status curvmap_space_ball_volume_inverse(const curvmap_space* space,
                                                 double v, double* out) {
    if (!space || !out) return null_argument();
    return guarded([&] { *out = space->impl.ball_volume_inverse(v); });
}

curvmap_status curvmap_space_full_volume(const curvmap_space* space,
                                         double* out) {
    if (!space || !out) return null_argument();
    return guarded([&] { *out = space->impl.full_space_volume(); });
}

curvmap_status curvmap_space_isoperimetric_profile(const curvmap_space* space,
                                                   double v, double* out) {
    if (!space || !out) return null_argument();
    return guarded([&] { *out = space->impl.isoperimetric_profile(v); });
}

curvmap_status curvmap_space_taylor(const curvmap_space* space,
                                    curvmap_series kind, double* out,
                                    size_t cap, size_t* len) {
    if (!space || !len || (cap > 0 && !out)) return null_argument();
    return guarded([&] {
        if (kind < CURVMAP_SERIES_SIN || kind > CURVMAP_SERIES_ISO_PROFILE)
            throw curvmap::invalid_argument("taylor: unknown series kind");
        const std::vector<double> c = curvmap::taylor_coeffs(
            space->impl, static_cast<curvmap::series_kind>(kind));
        *len = c.size();
        std::copy_n(c.begin(), std::min(cap, c.size()), out);
    });
}

/* ---- azimuthal maps ---------------------------------------------------- */

curvmap_status curvmap_map_equidistant(double rho, double kappa, int n,
                                       double alpha, curvmap_map** out) {
    if (!out) return null_argument();
    return guarded([&] {
        make_map(out,
                 curvmap::azimuthal_map::equidistant(rho, kappa, n, alpha));
    });
}

curvmap_status curvmap_map_contracting(double rho, double kappa, int n,
                                       double alpha, double sigma,
                                       curvmap_map** out) {
    if (!out) return null_argument();
    return guarded([&] {
        make_map(out, curvmap::azimuthal_map::contracting(rho, kappa, n,
                                                          alpha, sigma));
    });
}

curvmap_status curvmap_map_conformal(double rho, double kappa, int n,
                                     double alpha, double sigma,
                                     curvmap_map** out) {
    if (!out) return null_argument();
    return guarded([&] {
        make_map(out, curvmap::azimuthal_map::conformal(rho, kappa, n, alpha,
                                                        sigma));
    });
}

curvmap_status curvmap_map_volume_preserving(double rho, double kappa, int n,
                                             double alpha,
                                             curvmap_map** out) {
    if (!out) return null_argument();
    return guarded([&] {
        make_map(out, curvmap::azimuthal_map::volume_preserving(rho, kappa, n,
                                                                alpha));
    });
}

curvmap_status curvmap_map_qc_optimal(double rho, double kappa, int n,
                                      double alpha, double Q, double sigma,
                                      double beta, curvmap_map** out) {
    if (!out) return null_argument();
    return guarded([&] {
        make_map(out, curvmap::azimuthal_map::qc_optimal(rho, kappa, n, alpha,
                                                         Q, sigma, beta));
    });
}

void curvmap_map_destroy(curvmap_map* map) { delete map; }

curvmap_status curvmap_map_get_info(const curvmap_map* map,
                                    curvmap_map_info* out) {
    if (!map || !out) return null_argument();
    return guarded([&] {
        const curvmap::azimuthal_map& m = map->impl;
        *out = {m.rho(),
                m.kappa(),
                m.dim(),
                m.alpha(),
                static_cast<int>(m.family()),
                m.sigma(),
                m.Q(),
                m.beta()};
    });
}

curvmap_status curvmap_map_distance(const curvmap_map* map, double t,
                                    double* out) {
    if (!map || !out) return null_argument();
    return guarded([&] { *out = map->impl.distance(t); });
}

curvmap_status curvmap_map_derivative(const curvmap_map* map, double t,
                                      double* out) {
    if (!map || !out) return null_argument();
    return guarded([&] { *out = map->impl.derivative(t); });
}

curvmap_status curvmap_map_singular_values(const curvmap_map* map, double t,
                                           double* radial,
                                           double* tangential) {
    if (!map || !radial || !tangential) return null_argument();
    return guarded([&] {
        const auto [r, u] = map->impl.singular_values(t);
        *radial = r;
        *tangential = u;
    });
}

curvmap_status curvmap_map_jacobian(const curvmap_map* map, double t,
                                    double* out) {
    if (!map || !out) return null_argument();
    return guarded([&] { *out = map->impl.jacobian(t); });
}

curvmap_status curvmap_map_image_ball_volume(const curvmap_map* map, double t,
                                             double* out) {
    if (!map || !out) return null_argument();
    return guarded([&] { *out = map->impl.image_ball_volume(t); });
}

curvmap_status curvmap_map_chart_exit_radius(const curvmap_map* map,
                                             double* out) {
    if (!map || !out) return null_argument();
    return guarded([&] { *out = map->impl.chart_exit_radius(); });
}

curvmap_status curvmap_map_anisometry(const curvmap_map* map, double rel_tol,
                                      curvmap_anisometry_report* out) {
    if (!map || !out) return null_argument();
    return guarded([&] {
        const curvmap::anisometry_report r = map->impl.anisometry(rel_tol);
        *out = {r.sigma1,
                r.sigma2,
                r.aniso,
                r.argmin_radius,
                r.argmax_radius,
                r.unbounded ? 1 : 0,
                r.alpha_exceeds_convexity ? 1 : 0};
    });
}

curvmap_status curvmap_map_project_grid(const curvmap_map* map,
                                        int resolution, double* rows,
                                        size_t* n_rows) {
    if (!map || !rows || !n_rows) return null_argument();
    return guarded([&] {
        const std::vector<curvmap::grid_row> grid =
            map->impl.project_grid(resolution);
        *n_rows = grid.size();
        double* p = rows;
        for (const curvmap::grid_row& row : grid) {
            *p++ = row.t;
            *p++ = static_cast<double>(row.u_index);
            *p++ = row.R;
            *p++ = row.radial;
            *p++ = row.tangential;
        }
    });
}

/* ---- anisometry lower bounds ------------------------------------------- */

void curvmap_bound_query_init(curvmap_bound_query* q) {
    if (!q) return;
    q->rho = 0.0;
    q->kappa = 0.0;
    q->n = 2;
    q->alpha = 0.0;
    q->cls = CURVMAP_BOUND_GENERAL;
    q->Q = 1.0;
    q->inj_m = curvmap::infinity;
    q->inj_n = curvmap::infinity;
}

curvmap_status curvmap_bound(const curvmap_bound_query* q,
                             curvmap_bound_result* out,
                             curvmap_map** optimal_map) {
    if (!q || !out) return null_argument();
    return guarded([&] {
        curvmap::bound_result r = curvmap::bound_for(to_query(*q));
        out->value = r.value;
        out->sigma1 = r.sigma1;
        out->sigma2 = r.sigma2;
        out->validity_radius = r.validity_radius;
        out->validity_ok = r.validity_ok ? 1 : 0;
        if (optimal_map) make_map(optimal_map, std::move(r.optimal_map));
    });
}

curvmap_status curvmap_validity_radius(const curvmap_bound_query* q,
                                       double* out) {
    if (!q || !out) return null_argument();
    return guarded([&] {
        const curvmap::bound_query cq = to_query(*q);
        switch (cq.cls) {
        case curvmap::bound_class::general:
            *out = curvmap::radius_limit_a1(cq);
            break;
        case curvmap::bound_class::volume_preserving:
            *out = cq.inj_m;
            break;
        case curvmap::bound_class::conformal:
            *out = curvmap::radius_limit_a3(cq);
            break;
        case curvmap::bound_class::quasiconformal:
            *out = curvmap::radius_limit_a4(cq);
            break;
        }
    });
}

curvmap_status curvmap_sigma0_contraction(double rho, double kappa,
                                          double alpha, double* out) {
    if (!out) return null_argument();
    return guarded(
        [&] { *out = curvmap::sigma0_contraction(rho, kappa, alpha); });
}

curvmap_status curvmap_small_alpha_coefficient(int cls, double rho,
                                               double kappa, int n,
                                               double* out) {
    if (!out) return null_argument();
    return guarded([&] {
        if (cls < CURVMAP_BOUND_GENERAL || cls > CURVMAP_BOUND_QUASICONFORMAL)
            throw curvmap::invalid_argument(
                "small_alpha_coefficient: unknown map class");
        *out = curvmap::small_alpha_coefficient(
            static_cast<curvmap::bound_class>(cls), rho, kappa, n);
    });
}

curvmap_status curvmap_f_kappa_q(double kappa, int n, double Q, double v,
                                 double* out) {
    if (!out) return null_argument();
    return guarded([&] { *out = curvmap::f_kappa_q(kappa, n, Q, v); });
}

curvmap_status curvmap_qc_sigma2_lower(double rho, double kappa, int n,
                                       double Q, double alpha, double beta,
                                       double r_beta, double* out) {
    if (!out) return null_argument();
    return guarded([&] {
        *out = curvmap::qc_sigma2_lower(rho, kappa, n, Q, alpha, beta, r_beta);
    });
}

curvmap_status curvmap_general_sigma2_lemma(double rho, double kappa, int n,
                                            double sigma1, double alpha,
                                            double* out) {
    if (!out) return null_argument();
    return guarded([&] {
        *out = curvmap::general_sigma2_lemma(rho, kappa, n, sigma1, alpha);
    });
}

curvmap_status curvmap_ahlfors_blowup(double sigma0, double alpha,
                                      int* blows_up, double* radius) {
    if (!blows_up || !radius) return null_argument();
    return guarded([&] {
        const curvmap::blowup_outcome r =
            curvmap::ahlfors_blowup(sigma0, alpha);
        *blows_up = r.blows_up ? 1 : 0;
        *radius = r.radius;
    });
}

curvmap_status curvmap_qc_beta(double rho, double kappa, double alpha,
                               double Q, double sigma, double* out) {
    if (!out) return null_argument();
    return guarded(
        [&] { *out = curvmap::qc_beta(rho, kappa, alpha, Q, sigma); });
}

/* ---- symmetric positive definite forms --------------------------------- */

curvmap_status curvmap_form_eigenvalues(int dim, const double* entries,
                                        double* out) {
    if (!entries || !out) return null_argument();
    return guarded([&] {
        const curvmap::quadratic_form q(dim, to_entries(dim, entries));
        const std::vector<double> ev = q.eigenvalues();
        std::copy(ev.begin(), ev.end(), out);
    });
}

curvmap_status curvmap_form_extremes(int dim, const double* entries,
                                     double* sigma1, double* sigma2) {
    if (!entries || !sigma1 || !sigma2) return null_argument();
    return guarded([&] {
        const curvmap::quadratic_form q(dim, to_entries(dim, entries));
        const auto [lo, hi] = q.extremes();
        *sigma1 = lo;
        *sigma2 = hi;
    });
}

curvmap_status curvmap_form_determinant(int dim, const double* entries,
                                        double* out) {
    if (!entries || !out) return null_argument();
    return guarded([&] {
        *out = curvmap::quadratic_form(dim, to_entries(dim, entries))
                   .determinant();
    });
}

curvmap_status curvmap_form_restrict(int dim, const double* entries,
                                     const double* normal, double* out) {
    if (!entries || !normal || !out) return null_argument();
    return guarded([&] {
        const curvmap::quadratic_form q(dim, to_entries(dim, entries));
        const curvmap::quadratic_form r = q.restrict_to_hyperplane(
            std::vector<double>(normal, normal + dim));
        std::copy(r.entries().begin(), r.entries().end(), out);
    });
}

curvmap_status curvmap_ellipsoid_lemma_check(int dim, const double* entries,
                                             const double* normal, double Q,
                                             curvmap_lemma_report* out) {
    if (!entries || !normal || !out) return null_argument();
    return guarded([&] {
        const curvmap::quadratic_form q(dim, to_entries(dim, entries));
        const curvmap::lemma_report r = curvmap::ellipsoid_lemma_check(
            q, std::vector<double>(normal, normal + dim), Q);
        *out = {r.det_full, r.det_restricted, r.sigma1,
                r.sigma2,   r.slack_sigma1,  r.slack_power};
    });
}

curvmap_status curvmap_random_spd(int dim, double lambda, double Q,
                                  uint64_t* state, double* entries_out) {
    if (!state || !entries_out) return null_argument();
    return guarded([&] {
        const curvmap::quadratic_form q =
            curvmap::random_spd(dim, lambda, Q, *state);
        std::copy(q.entries().begin(), q.entries().end(), entries_out);
    });
}

/* ---- verification suites ----------------------------------------------- */

const char* curvmap_verify_suite_names(void) {
    return "identities,sharpness,taylor,ellipsoid,all";
}

curvmap_status curvmap_verify_run(const char* suite, uint64_t seed,
                                  char** json_report, int* all_passed) {
    if (!suite) return null_argument();
    return guarded([&] {
        const curvmap::suite_report report = curvmap::run_suite(suite, seed);
        if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
        if (json_report) {
            const std::string text = report.to_json();
            char* buf = static_cast<char*>(std::malloc(text.size() + 1));
            if (!buf) throw std::bad_alloc();
            std::memcpy(buf, text.c_str(), text.size() + 1);
            *json_report = buf;
        }
    });
}

void curvmap_string_free(char* s) { std::free(s); }

} // extern "C"
