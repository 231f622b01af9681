#include "verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include <json.hpp>

#include "bounds.hpp"
#include "ellipsoid.hpp"

namespace curvmap {

namespace {

constexpr double pi = std::numbers::pi;

double conj_radius(double k) {
    return k > 0.0 ? pi / std::sqrt(k) : infinity;
}

check_result make_check(std::string name, double observed, double limit,
                        std::string detail = {}) {
    return {std::move(name), observed <= limit, observed, limit,
            std::move(detail)};
}

// (rho, kappa) samples with kappa <= rho covering sign combinations.
const std::vector<std::pair<double, double>>& curvature_pairs() {
    static const std::vector<std::pair<double, double>> pairs{
        {1.0, 1.0},  {1.0, 0.0},   {1.0, -1.0},
        {0.0, -1.0}, {0.0, 0.0},   {2.0, 0.5},
        {0.5, -2.0}, {-0.5, -2.0}, {-1.0, -1.0}};
    return pairs;
}

const std::vector<double>& kappa_grid() {
    static const std::vector<double> ks{-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 2.5};
    return ks;
}

double cap_alpha(double rho) {
    return rho > 0.0 ? 0.95 * conj_radius(rho) : 3.0;
}

// Shrink alpha until the source ball fits strictly inside half the target.
double vp_safe_alpha(double rho, double kappa, int n, double alpha) {
    if (kappa <= 0.0) return alpha;
    const model_space src(n, rho), tgt(n, kappa);
    const double half = 0.49 * tgt.full_space_volume();
    while (src.ball_volume(alpha) > half) alpha *= 0.85;
    return alpha;
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------- identities

suite_report identities_suite(std::uint64_t seed) {
    suite_report rep{"identities", seed, {}};
    std::uint64_t st = seed;

    double pyth = 0.0, dbl = 0.0, chord = 0.0, round_trip = 0.0;
    for (double k : kappa_grid()) {
        const double span = k > 0.0 ? conj_radius(k) : 3.2;
        for (int i = 1; i <= 48; ++i) {
            const double t = 0.95 * span * i / 48.0;
            const double s = sin_k(k, t), c = cos_k(k, t);
            pyth = std::max(pyth, std::abs(c * c + k * s * s - 1.0));
            if (2.0 * t < 0.99 * span)
                dbl = std::max(dbl, rel_diff(sin_k(k, 2.0 * t),
                                             2.0 * s * c));
            chord = std::max(chord,
                             rel_diff(g_k(k, tan_k(k, 0.5 * t)), s));
            if (t < 0.45 * span)
                round_trip = std::max(
                    round_trip,
                    std::abs(arctan_k(k, tan_k(k, t)) - t) /
                        std::max(1.0, t));
        }
    }
    rep.checks.push_back(make_check("pythagorean_identity", pyth, 1e-12));
    rep.checks.push_back(make_check("double_angle", dbl, 1e-12));
    rep.checks.push_back(make_check("half_angle_chord", chord, 1e-12));
    rep.checks.push_back(make_check("arctan_roundtrip", round_trip, 1e-12));

    double area_fd = 0.0, inv_rt = 0.0, iso = 0.0;
    for (int n : {2, 3, 4, 5}) {
        for (double k : kappa_grid()) {
            const model_space space(n, k);
            const double span = k > 0.0 ? conj_radius(k) : 2.0;
            for (double frac : {0.25, 0.6}) {
                const double t = frac * span;
                auto vol = [&](double x) { return space.ball_volume(x); };
                const double d = derivative_fd(vol, t, 1e-3 * t);
                area_fd = std::max(area_fd,
                                   rel_diff(d, space.sphere_area(t)));
                const double back =
                    space.ball_volume_inverse(space.ball_volume(t));
                inv_rt = std::max(inv_rt, std::abs(back - t) / t);
                const double ti = std::min(t, 0.5 * span);
                iso = std::max(
                    iso, rel_diff(space.isoperimetric_profile(
                                      space.ball_volume(ti)),
                                  space.sphere_area(ti)));
            }
        }
    }
    rep.checks.push_back(
        make_check("sphere_area_is_volume_derivative", area_fd, 1e-7));
    rep.checks.push_back(
        make_check("ball_volume_inverse_roundtrip", inv_rt, 1e-9));
    rep.checks.push_back(
        make_check("isoperimetric_profile_consistency", iso, 1e-10));

    // Conformal profiles against the defining ODE R' = sin_k(kappa, R) /
    // sin_k(rho, t), integrated independently.
    double ode_err = 0.0;
    for (const auto& [rho, kappa] : curvature_pairs()) {
        const double alpha = 0.7 * cap_alpha(rho);
        double sigma = 0.55 + 0.5 * u01(st);
        if (kappa < 0.0) {
            const double pole =
                1.0 / (tan_k(rho, 0.5 * alpha) * std::sqrt(-kappa));
            sigma = std::min(sigma, 0.85 * pole);
        }
        const auto map =
            azimuthal_map::conformal(rho, kappa, 2, alpha, sigma);
        const double eps = 1e-6 * alpha;
        const double y0 =
            sigma * eps +
            sigma * (rho - kappa * sigma * sigma) * eps * eps * eps / 12.0;
        auto f = [&](double t, double y) {
            return sin_k(kappa, y) / sin_k(rho, t);
        };
        const auto path = solve_ode(f, eps, y0, alpha, {1e-12, 0.0, 400});
        ode_err = std::max(ode_err,
                           rel_diff(path.end_value(), map.distance(alpha)));
        ode_err = std::max(
            ode_err, rel_diff(path(0.6 * alpha), map.distance(0.6 * alpha)));
    }
    rep.checks.push_back(make_check("conformal_profile_ode", ode_err, 1e-8));

    // Volume matching really is pointwise: finite-difference Jacobian of the
    // volume-matching profile is 1.
    double vp_jac = 0.0;
    for (const auto& [rho, kappa] : curvature_pairs()) {
        for (int n : {2, 3}) {
            const double alpha =
                vp_safe_alpha(rho, kappa, n, 0.7 * cap_alpha(rho));
            const auto map =
                azimuthal_map::volume_preserving(rho, kappa, n, alpha);
            auto R = [&](double t) { return map.distance(t); };
            for (int i = 1; i <= 10; ++i) {
                const double t = alpha * i / 11.0;
                const double rp = derivative_fd(R, t, 1e-3 * alpha);
                const double tang =
                    sin_k(kappa, map.distance(t)) / sin_k(rho, t);
                vp_jac = std::max(
                    vp_jac, std::abs(rp * std::pow(tang, n - 1) - 1.0));
            }
        }
    }
    rep.checks.push_back(make_check("volume_matching_jacobian", vp_jac, 1e-8));

    // Glued quasiconformal profiles: C^1 at the kink, stretch ratio never
    // above Q.
    double glue = 0.0, ratio_excess = 0.0;
    for (const auto& [rho, kappa] : curvature_pairs()) {
        for (double Q : {1.6, 3.0}) {
            bound_query q{rho,  kappa,    2,       0.75 * cap_alpha(rho),
                          bound_class::quasiconformal, Q, infinity, infinity};
            const auto res = qc_bound(q);
            const auto& map = res.optimal_map;
            for (int i = 1; i <= 512; ++i) {
                const double t = q.alpha * i / 512.0;
                const auto [r, tg] = map.singular_values(t);
                ratio_excess =
                    std::max(ratio_excess,
                             std::max(r, tg) / std::min(r, tg) - Q);
            }
            if (map.family() != map_family::qc_optimal) continue;
            const double beta = map.beta();
            const double h = 3e-5 * std::max(1.0, beta);
            if (beta < 10.0 * h || beta > q.alpha - 10.0 * h) continue;
            auto R = [&](double t) { return map.distance(t); };
            const double left =
                (3.0 * R(beta) - 4.0 * R(beta - h) + R(beta - 2.0 * h)) /
                (2.0 * h);
            const double right =
                (-3.0 * R(beta) + 4.0 * R(beta + h) - R(beta + 2.0 * h)) /
                (2.0 * h);
            glue = std::max(glue, std::abs(left - right) /
                                      std::max(1.0, std::abs(left)));
        }
    }
    rep.checks.push_back(make_check("qc_gluing_c1", glue, 1e-7));
    rep.checks.push_back(
        make_check("qc_pointwise_ratio", ratio_excess, 1e-10));

    // Lower curvature spreads geodesics: sin_k decreases in kappa.
    double mono = 0.0;
    for (const auto& [rho, kappa] : curvature_pairs()) {
        if (kappa == rho) continue;
        const double span = std::min(cap_alpha(rho), 3.0);
        for (int i = 1; i <= 64; ++i) {
            const double t = span * i / 64.0;
            mono = std::max(mono, sin_k(rho, t) - sin_k(kappa, t));
        }
    }
    rep.checks.push_back(make_check("curvature_monotonicity", mono, 1e-12));
    return rep;
}

// ----------------------------------------------------------------- sharpness

suite_report sharpness_suite(std::uint64_t seed) {
    suite_report rep{"sharpness", seed, {}};
    std::uint64_t st = seed;

    auto attained = [&](bound_class cls, double Q, const char* name) {
        double worst = 0.0;
        for (const auto& [rho, kappa] : curvature_pairs()) {
            for (int n : {2, 3}) {
                for (double frac : {0.35, 0.75}) {
                    double alpha = frac * cap_alpha(rho);
                    if (cls == bound_class::volume_preserving)
                        alpha = vp_safe_alpha(rho, kappa, n, alpha);
                    bound_query q{rho, kappa, n,       alpha,
                                  cls, Q,     infinity, infinity};
                    const auto res = bound_for(q);
                    const auto r = res.optimal_map.anisometry(1e-11);
                    worst = std::max(worst, std::abs(r.aniso - res.value));
                }
            }
        }
        rep.checks.push_back(make_check(name, worst, 1e-8));
    };
    attained(bound_class::general, 1.0, "general_bound_attained");
    attained(bound_class::volume_preserving, 1.0, "vp_bound_attained");
    attained(bound_class::conformal, 1.0, "conformal_bound_attained");
    attained(bound_class::quasiconformal, 1.7, "qc_bound_attained");

    double q1 = 0.0, qbig = 0.0, order = 0.0;
    for (const auto& [rho, kappa] : curvature_pairs()) {
        const double alpha = 0.6 * cap_alpha(rho);
        bound_query q{rho,  kappa, 3,        alpha,
                      bound_class::quasiconformal, 1.0, infinity, infinity};
        const auto conf = conformal_bound(q);
        q1 = std::max(q1, std::abs(qc_bound(q).value - conf.value));
        bound_query qb = q;
        qb.Q = 1e6;
        qbig = std::max(qbig,
                        std::abs(qc_bound(qb).value - general_bound(q).value));
        const double gen = general_bound(q).value;
        double prev = infinity;
        for (double Q : {1.0, 1.5, 2.5, 6.0}) {
            bound_query qq = q;
            qq.Q = Q;
            const double v = qc_bound(qq).value;
            order = std::max({order, v - prev, gen - v, v - conf.value});
            prev = v;
        }
    }
    rep.checks.push_back(make_check("qc_equals_conformal_at_q1", q1, 1e-10));
    rep.checks.push_back(make_check("qc_floor_is_general_bound", qbig, 1e-12));
    rep.checks.push_back(make_check("class_ordering", order, 1e-7));

    auto perturbed = [&](bound_class cls, const char* name) {
        const auto& pairs = curvature_pairs();
        double worst = -infinity;
        for (int i = 0; i < 25; ++i) {
            const auto& [rho, kappa] =
                pairs[std::min(pairs.size() - 1,
                               size_t(u01(st) * pairs.size()))];
            const int n = 2 + int(u01(st) * 2.0);
            double alpha = (0.3 + 0.45 * u01(st)) * cap_alpha(rho);
            perturbation_sample s{};
            switch (cls) {
            case bound_class::general:
                s = perturb_general(rho, kappa, n, alpha, st);
                break;
            case bound_class::conformal:
                s = perturb_conformal(rho, kappa, n, alpha, st);
                break;
            case bound_class::volume_preserving:
                alpha = vp_safe_alpha(rho, kappa, n, alpha);
                s = perturb_volume_preserving(rho, kappa, n, alpha, st);
                break;
            case bound_class::quasiconformal:
                s = perturb_quasiconformal(rho, kappa, n, alpha,
                                           1.0 + 3.0 * u01(st), st);
                break;
            }
            worst = std::max(worst, -s.margin);
        }
        rep.checks.push_back(make_check(name, worst, 1e-9));
    };
    perturbed(bound_class::general, "perturbed_general_respects_bound");
    perturbed(bound_class::conformal, "perturbed_conformal_respects_bound");
    perturbed(bound_class::volume_preserving, "perturbed_vp_respects_bound");
    perturbed(bound_class::quasiconformal, "perturbed_qc_respects_bound");

    // Hyperbolic-to-hyperbolic conformal stretches: image radius when the
    // stretch is subcritical, finite escape radius otherwise; both against
    // the integrated ODE.
    double ahl = 0.0;
    for (double s0 : {0.7, 1.0, 1.3, 2.0, 5.0}) {
        const double alpha = 3.0;
        const auto predicted = ahlfors_blowup(s0, alpha);
        const double eps = 1e-6 * alpha;
        const double y0 =
            s0 * eps + s0 * (s0 * s0 - 1.0) * eps * eps * eps / 12.0;
        auto f = [&](double t, double y) {
            return std::sinh(y) / std::sinh(t);
        };
        const auto path = solve_ode(f, eps, y0, alpha, {1e-12, 0.0, 400},
                                    40.0);
        if (predicted.blows_up)
            ahl = std::max(ahl, std::abs(path.blowup_t - predicted.radius));
        else
            ahl = std::max(ahl,
                           std::abs(path.end_value() - predicted.radius));
    }
    rep.checks.push_back(make_check("hyperbolic_stretch_escape", ahl, 1e-6));

    double lemma = 0.0, qcl = 0.0, fpot = 0.0;
    for (const auto& [rho, kappa] : curvature_pairs()) {
        const double alpha = 0.6 * cap_alpha(rho);
        bound_query q{rho, kappa, 3, alpha, bound_class::general,
                      1.0, infinity, infinity};
        const auto gb = general_bound(q);
        lemma = std::max(
            lemma, rel_diff(general_sigma2_lemma(rho, kappa, 3, gb.sigma1,
                                                 alpha),
                            gb.sigma2));

        bound_query qq = q;
        qq.cls = bound_class::quasiconformal;
        qq.Q = 1.8;
        const auto res = qc_bound(qq);
        if (res.optimal_map.family() == map_family::qc_optimal) {
            const auto& m = res.optimal_map;
            const double floor = qc_sigma2_lower(
                rho, kappa, 3, m.Q(), alpha, m.beta(), m.distance(m.beta()));
            qcl = std::max(qcl, (floor - res.sigma2) /
                                    std::max(1.0, res.sigma2));
        }
    }
    for (double k : kappa_grid()) {
        const model_space space(3, k);
        const double span = k > 0.0 ? conj_radius(k) : 2.0;
        for (double frac : {0.2, 0.45}) {
            const double t = frac * span;
            fpot = std::max(
                fpot, rel_diff(f_kappa_q(k, 3, 1.7, space.ball_volume(t)),
                               1.7 * std::log(tan_k(k, 0.5 * t))));
        }
    }
    rep.checks.push_back(make_check("stretch_tradeoff_lemma", lemma, 1e-10));
    rep.checks.push_back(make_check("qc_sigma2_floor", qcl, 1e-8));
    rep.checks.push_back(make_check("volume_potential_roundtrip", fpot, 1e-10));
    return rep;
}

// -------------------------------------------------------------------- taylor

// Numeric c0, c1, c2 of g(t) = c0 + c1 t^2 + c2 t^4 + ..., probing near 0
// at scale s.
std::array<double, 3> even_series_probe(
    const std::function<double(double)>& g, double s) {
    const double c0 = g(1e-6 * s);
    const double t1 = 1e-2 * s;
    auto A = [&](double t) { return (g(t) - c0) / (t * t); };
    const double c1 = (4.0 * A(0.5 * t1) - A(t1)) / 3.0;
    const double t2 = 0.1 * s;
    auto B = [&](double t) {
        return ((g(t) - c0) / (t * t) - c1) / (t * t);
    };
    const double c2 = (4.0 * B(0.5 * t2) - B(t2)) / 3.0;
    return {c0, c1, c2};
}

suite_report taylor_suite(std::uint64_t seed) {
    suite_report rep{"taylor", seed, {}};

    struct probe_err {
        double c0 = 0.0, c1 = 0.0, c2 = 0.0;
        void note(const std::array<double, 3>& num,
                  const std::vector<double>& coeffs) {
            c0 = std::max(c0, std::abs(num[0] - coeffs[0]) /
                                  std::max(1.0, std::abs(coeffs[0])));
            if (coeffs.size() > 1)
                c1 = std::max(c1, std::abs(num[1] - coeffs[1]) /
                                      std::max(1.0, std::abs(coeffs[1])));
            if (coeffs.size() > 2)
                c2 = std::max(c2, std::abs(num[2] - coeffs[2]) /
                                      std::max(1.0, std::abs(coeffs[2])));
        }
    } err;

    for (double k : kappa_grid()) {
        const double conj = conj_radius(k);
        const double s_t = k > 0.0 ? std::min(1.0, 0.3 * conj) : 1.0;
        const double s_x =
            k < 0.0 ? std::min(1.0, 0.3 / std::sqrt(-k)) : s_t;
        for (int n : {2, 3, 4}) {
            const model_space space(n, k);
            err.note(even_series_probe(
                         [&](double t) { return sin_k(k, t) / t; }, s_t),
                     taylor_coeffs(space, series_kind::sin_series));
            err.note(even_series_probe(
                         [&](double t) { return cos_k(k, t); }, s_t),
                     taylor_coeffs(space, series_kind::cos_series));
            err.note(even_series_probe(
                         [&](double t) { return tan_k(k, t) / t; }, s_t),
                     taylor_coeffs(space, series_kind::tan_series));
            err.note(even_series_probe(
                         [&](double x) { return arctan_k(k, x) / x; }, s_x),
                     taylor_coeffs(space, series_kind::arctan_series));
            const double omega = unit_sphere_area(n);
            err.note(
                even_series_probe(
                    [&](double t) {
                        return space.sphere_area(t) /
                               (omega * std::pow(t, n - 1));
                    },
                    s_t),
                taylor_coeffs(space, series_kind::sphere_area_series));
            err.note(even_series_probe(
                         [&](double t) {
                             return space.ball_volume(t) /
                                    (omega / n * std::pow(t, n));
                         },
                         s_t),
                     taylor_coeffs(space, series_kind::ball_volume_series));

            // Isoperimetric profile: series in v^{2/n} after dividing the
            // leading power.
            const auto iso =
                taylor_coeffs(space, series_kind::iso_profile_series);
            auto giso = [&](double w) {
                const double v = std::pow(w, 0.5 * n);
                return space.isoperimetric_profile(v) /
                       std::pow(v, (n - 1.0) / n);
            };
            const double c0n = giso(1e-9);
            auto A = [&](double w) { return (giso(w) - c0n) / w; };
            const double w0 = 1e-3;
            const double c1n = 2.0 * A(0.5 * w0) - A(w0);
            err.note({c0n, c1n, 0.0}, {iso[0], iso[1]});
        }
    }
    rep.checks.push_back(make_check("series_constant_terms", err.c0, 1e-8));
    rep.checks.push_back(make_check("series_quadratic_terms", err.c1, 1e-4));
    rep.checks.push_back(make_check("series_quartic_terms", err.c2, 1e-3));

    // Leading small-radius behaviour of the bounds themselves.
    double lead = 0.0;
    const std::vector<std::pair<double, double>> lead_pairs{
        {1.0, 0.0}, {1.0, -1.0}, {0.0, -1.0},
        {0.5, 0.2}, {-1.0, -2.0}, {1.0, 1.0}};
    for (const auto& [rho, kappa] : lead_pairs) {
        for (int n : {2, 3}) {
            for (bound_class cls :
                 {bound_class::general, bound_class::conformal,
                  bound_class::volume_preserving}) {
                auto c = [&](double a) {
                    bound_query q{rho, kappa, n,       a,
                                  cls, 1.0,   infinity, infinity};
                    return bound_for(q).value / (a * a);
                };
                const double coeff =
                    small_alpha_coefficient(cls, rho, kappa, n);
                const double extr = richardson_h2_2(c, 1e-2);
                lead = std::max(lead, std::abs(extr - coeff) /
                                          std::max(1e-3, std::abs(coeff)));
            }
        }
    }
    rep.checks.push_back(
        make_check("bound_leading_coefficients", lead, 1e-3));
    return rep;
}

// ----------------------------------------------------------------- ellipsoid

void givens_conjugate(std::vector<double>& a, std::vector<double>& v, int d,
                      int i, int j, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    for (int k = 0; k < d; ++k) {
        const double ai = a[i * d + k], aj = a[j * d + k];
        a[i * d + k] = c * ai - s * aj;
        a[j * d + k] = s * ai + c * aj;
    }
    for (int k = 0; k < d; ++k) {
        const double ai = a[k * d + i], aj = a[k * d + j];
        a[k * d + i] = c * ai - s * aj;
        a[k * d + j] = s * ai + c * aj;
    }
    const double vi = v[i], vj = v[j];
    v[i] = c * vi - s * vj;
    v[j] = s * vi + c * vj;
}

std::vector<double> random_unit(int d, std::uint64_t& st) {
    std::vector<double> v(d);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : v) {
            x = 2.0 * u01(st) - 1.0;
            norm += x * x;
        }
    } while (norm < 0.05);
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
}

suite_report ellipsoid_suite(std::uint64_t seed) {
    suite_report rep{"ellipsoid", seed, {}};
    std::uint64_t st = seed;

    double eig2 = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto m = random_spd(2, 0.5 + u01(st), 1.0 + 4.0 * u01(st), st);
        const double a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 1);
        const double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
        const double lo = 0.5 * (a + c - disc), hi = 0.5 * (a + c + disc);
        const auto ev = m.eigenvalues();
        eig2 = std::max({eig2, rel_diff(ev[0], lo), rel_diff(ev[1], hi)});
    }
    rep.checks.push_back(make_check("eigenvalues_2x2_closed_form", eig2,
                                    1e-12));

    double det3 = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto m = random_spd(3, 0.3 + u01(st), 1.0 + 5.0 * u01(st), st);
        const double direct =
            m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
            m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
            m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
        det3 = std::max(det3, rel_diff(m.determinant(), direct));
    }
    rep.checks.push_back(
        make_check("determinant_minor_expansion", det3, 1e-10));

    double interlace = 0.0, covar = 0.0;
    for (int d : {3, 4, 5, 6}) {
        for (int i = 0; i < 60; ++i) {
            const auto m =
                random_spd(d, 0.2 + 2.0 * u01(st), 1.0 + 5.0 * u01(st), st);
            const auto lam = m.eigenvalues();
            const auto mu =
                m.restrict_to_hyperplane(random_unit(d, st)).eigenvalues();
            for (int j = 0; j + 1 < d; ++j)
                interlace = std::max({interlace,
                                      (lam[j] - mu[j]) / lam.back(),
                                      (mu[j] - lam[j + 1]) / lam.back()});
            const double scale = std::pow(10.0, 6.0 * u01(st) - 3.0);
            auto entries = m.entries();
            for (auto& e : entries) e *= scale;
            const auto lam2 = quadratic_form(d, entries).eigenvalues();
            for (int j = 0; j < d; ++j)
                covar = std::max(covar, rel_diff(lam2[j], scale * lam[j]));
        }
    }
    rep.checks.push_back(
        make_check("restriction_interlacing", interlace, 1e-10));
    rep.checks.push_back(make_check("eigenvalue_scale_covariance", covar,
                                    1e-11));

    double slack = -infinity;
    for (int i = 0; i < 2000; ++i) {
        const int d = 2 + int(u01(st) * 4.0);
        const double Q = 1.0 + 5.0 * u01(st);
        const auto m = random_spd(d, 0.2 + 2.0 * u01(st), Q, st);
        const auto r = ellipsoid_lemma_check(m, random_unit(d, st), Q);
        slack = std::max({slack, -r.slack_sigma1 / r.det_full,
                          -r.slack_power / r.det_full});
    }
    rep.checks.push_back(
        make_check("determinant_restriction_slacks", slack, 1e-10));

    // Equality witness: spectrum (lambda, Q lambda, ..., Q lambda) with the
    // hyperplane normal along the lambda axis, conjugated by a random
    // rotation.
    double witness = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int d = 2 + int(u01(st) * 3.0);
        const double lambda = 0.4 + 2.0 * u01(st);
        const double Q = 1.0 + 4.0 * u01(st);
        std::vector<double> a(d * d, 0.0), normal(d, 0.0);
        a[0] = lambda;
        for (int j = 1; j < d; ++j) a[j * d + j] = Q * lambda;
        normal[0] = 1.0;
        for (int p = 0; p < d; ++p)
            for (int q2 = p + 1; q2 < d; ++q2)
                givens_conjugate(a, normal, d, p, q2, 2.0 * pi * u01(st));
        const auto r =
            ellipsoid_lemma_check(quadratic_form(d, a), normal, Q);
        witness = std::max(witness, std::abs(r.slack_power) / r.det_full);
    }
    rep.checks.push_back(make_check("equality_witness", witness, 1e-9));
    return rep;
}

} // namespace

// ------------------------------------------------------------- perturbations

perturbation_sample perturb_general(double rho, double kappa, int n,
                                    double alpha, std::uint64_t& state) {
    bound_query q{rho, kappa, n, alpha, bound_class::general,
                  1.0, infinity, infinity};
    const auto res = general_bound(q);
    const double s0 =
        res.optimal_map.family() == map_family::contracting
            ? res.optimal_map.sigma()
            : 1.0;
    std::array<double, 3> a{};
    for (int j = 0; j < 3; ++j) {
        const double mag = 0.03 + 0.22 * u01(state);
        a[j] = (u01(state) < 0.5 ? -1.0 : 1.0) * mag / (j + 1);
    }
    auto psi = [&](double t) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) s += a[j] * std::sin((j + 1) * pi * t / alpha);
        return s;
    };
    auto psip = [&](double t) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
            s += a[j] * (j + 1) * pi / alpha * std::cos((j + 1) * pi * t / alpha);
        return s;
    };
    auto R = [&](double t) { return s0 * t * (1.0 + psi(t)); };
    auto Rp = [&](double t) {
        return s0 * (1.0 + psi(t)) + s0 * t * psip(t);
    };
    const double conj_t = conj_radius(kappa);
    for (int tries = 0; tries < 80; ++tries) {
        bool ok = true;
        for (int i = 0; i <= 512 && ok; ++i) {
            const double t = alpha * i / 512.0;
            ok = Rp(t) > 1e-9 && R(t) < 0.999 * conj_t;
        }
        if (ok) break;
        for (auto& x : a) x *= 0.5;
    }
    const auto rep = profile_anisometry(R, Rp, s0, rho, kappa, n, alpha);
    return {rep.aniso, res.value, rep.aniso - res.value};
}

perturbation_sample perturb_conformal(double rho, double kappa, int n,
                                      double alpha, std::uint64_t& state) {
    bound_query q{rho, kappa, n, alpha, bound_class::conformal,
                  1.0, infinity, infinity};
    const auto res = conformal_bound(q);
    const double sstar = res.optimal_map.sigma();
    const double u =
        (u01(state) < 0.5 ? -1.0 : 1.0) * (0.03 + 0.4 * u01(state));
    double sigma = sstar * std::exp(u);
    if (kappa < 0.0) {
        const double pole =
            1.0 / (tan_k(rho, 0.5 * alpha) * std::sqrt(-kappa));
        sigma = std::min(sigma, 0.95 * pole);
    }
    const auto map = azimuthal_map::conformal(rho, kappa, n, alpha, sigma);
    const auto rep = map.anisometry();
    return {rep.aniso, res.value, rep.aniso - res.value};
}

perturbation_sample perturb_volume_preserving(double rho, double kappa, int n,
                                              double alpha,
                                              std::uint64_t& state) {
    bound_query q{rho,
                  kappa,
                  n,
                  alpha,
                  bound_class::volume_preserving,
                  1.0,
                  infinity,
                  infinity};
    const auto res = vp_bound(q);
    const auto& map = res.optimal_map;
    const double b1 =
        (u01(state) < 0.5 ? -1.0 : 1.0) * (0.08 + 0.5 * u01(state));
    const double b2 =
        (u01(state) < 0.5 ? -1.0 : 1.0) * (0.04 + 0.25 * u01(state));
    auto gp = [&](double t) {
        return b1 * pi / alpha * std::cos(pi * t / alpha) +
               b2 * 2.0 * pi / alpha * std::cos(2.0 * pi * t / alpha);
    };
    // Rotating the angular factor by a radius-dependent angle keeps the map
    // volume-preserving: the differential gains one shear column and its
    // determinant is unchanged.
    double s1 = 1.0, s2 = 1.0;
    for (int i = 1; i <= 400; ++i) {
        const double t = alpha * i / 400.0;
        const auto [rp, tau] = map.singular_values(t);
        const double h = sin_k(kappa, map.distance(t)) * gp(t);
        const double det = rp * tau;
        const double T = rp * rp + tau * tau + h * h;
        const double top =
            std::sqrt(0.5 * (T + std::sqrt(std::max(0.0, T * T - 4.0 * det * det))));
        s2 = std::max(s2, top);
        s1 = std::min(s1, det / top);
    }
    const double aniso = std::abs(std::log(s1)) + std::abs(std::log(s2));
    return {aniso, res.value, aniso - res.value};
}

perturbation_sample perturb_quasiconformal(double rho, double kappa, int n,
                                           double alpha, double Q,
                                           std::uint64_t& state) {
    bound_query q{rho,
                  kappa,
                  n,
                  alpha,
                  bound_class::quasiconformal,
                  Q,
                  infinity,
                  infinity};
    const auto res = qc_bound(q);
    const double center =
        res.optimal_map.family() == map_family::equidistant
            ? 1.0
            : res.optimal_map.sigma();
    for (int tries = 0; tries < 60; ++tries) {
        const double Qp = 1.0 + (Q - 1.0) * u01(state);
        const double jitter =
            std::exp(0.12 / (1.0 + tries) * (2.0 * u01(state) - 1.0));
        try {
            double sigma = center * jitter;
            if (kappa > 0.0)
                sigma = std::min(sigma, 0.9 * conj_radius(kappa) / alpha);
            const double beta = qc_beta(rho, kappa, alpha, Qp, sigma);
            const auto cand =
                std::isnan(beta)
                    ? azimuthal_map::contracting(rho, kappa, n, alpha, sigma)
                    : azimuthal_map::qc_optimal(rho, kappa, n, alpha, Qp,
                                                sigma, beta);
            bool member = true;
            for (int i = 1; i <= 384 && member; ++i) {
                const double t = alpha * i / 384.0;
                const auto [r, tg] = cand.singular_values(t);
                member = std::max(r, tg) / std::min(r, tg) <=
                         Q * (1.0 + 1e-12);
            }
            if (!member) continue;
            const auto rep = cand.anisometry();
            return {rep.aniso, res.value, rep.aniso - res.value};
        } catch (const std::exception&) {
            continue;
        }
    }
    const auto rep = res.optimal_map.anisometry(1e-11);
    return {rep.aniso, res.value, rep.aniso - res.value};
}

// -------------------------------------------------------------------- driver

bool suite_report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const check_result& c) { return c.passed; });
}

std::string suite_report::to_json() const {
    using nlohmann::json;
    auto num = [](double v) -> json {
        if (std::isfinite(v)) return v;
        if (std::isnan(v)) return "nan";
        return v > 0.0 ? "inf" : "-inf";
    };
    json arr = json::array();
    for (const auto& c : checks) {
        json jc{{"name", c.name},
                {"passed", c.passed},
                {"observed", num(c.observed)},
                {"limit", num(c.limit)}};
        if (!c.detail.empty()) jc["detail"] = c.detail;
        arr.push_back(std::move(jc));
    }
    json j{{"suite", suite},
           {"seed", seed},
           {"passed", all_passed()},
           {"checks", std::move(arr)}};
    return j.dump(2);
}

std::vector<std::string> suite_names() {
    return {"identities", "sharpness", "taylor", "ellipsoid", "all"};
}

suite_report run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "identities") return identities_suite(seed);
    if (name == "sharpness") return sharpness_suite(seed);
    if (name == "taylor") return taylor_suite(seed);
    if (name == "ellipsoid") return ellipsoid_suite(seed);
    if (name != "all")
        throw invalid_argument("run_suite: unknown suite '" + name + "'");
    suite_report rep{"all", seed, {}};
    std::uint64_t k = 0;
    for (const auto& sub :
         {"identities", "sharpness", "taylor", "ellipsoid"}) {
        auto part = run_suite(sub, seed + k++);
        for (auto& c : part.checks)
            c.name = part.suite + "." + c.name;
        rep.checks.insert(rep.checks.end(),
                          std::make_move_iterator(part.checks.begin()),
                          std::make_move_iterator(part.checks.end()));
    }
    return rep;
}

} // namespace curvmap
