// Acceptance gate: ten end-to-end checks, one [PASS]/[FAIL] line each with
// the observed worst case against a pinned limit.  Exits nonzero when any
// check fails.  All randomness is seeded, so reruns are byte-identical.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "core/azimuthal.hpp"
#include "core/bounds.hpp"
#include "core/ellipsoid.hpp"
#include "core/model_space.hpp"
#include "core/numerics.hpp"
#include "core/verify.hpp"

using namespace curvmap;

namespace {

const double pi = std::acos(-1.0);

int failures = 0;

void line(int k, bool ok, const std::string& text) {
    std::printf("[%s] %d: %s\n", ok ? "PASS" : "FAIL", k, text.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// 1. Half-angle identity sin_k(2*arctan_k(x)) = 2x/(1 + kappa x^2) on random
// curvature/argument pairs, including near the kappa < 0 pole.
void criterion_1() {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double kappa = -4.0 + 8.0 * u01(state);
        const double xmax =
            kappa < 0.0 ? std::min(3.0, 0.97 / std::sqrt(-kappa)) : 3.0;
        const double x = (2.0 * u01(state) - 1.0) * xmax;
        const double folded = sin_k(kappa, 2.0 * arctan_k(kappa, x));
        worst = std::max(worst, std::abs(folded - g_k(kappa, x)));
    }
    line(1, worst < 1e-12,
         fmt("half-angle identity on 1000 random curvature/argument pairs "
             "(max err %.2e, limit 1e-12)",
             worst));
}

// 2. The conformal profile's closed form solves R' = sin_k(kappa, R) /
// sin_k(rho, t): integrate the ODE from a series seed and compare at the
// endpoint, staying inside the target chart.
void criterion_2() {
    std::uint64_t state = 0x2545f4914f6cdd1dull;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double rho = -2.0 + 4.0 * u01(state);
        const double kappa = rho - (0.1 + 2.4 * u01(state));
        const double sigma = 0.4 + 1.2 * u01(state);
        const double cap =
            rho > 0.0 ? std::min(0.95 * pi / std::sqrt(rho), 3.0) : 2.2;
        double alpha = (0.3 + 0.65 * u01(state)) * cap;
        if (kappa < 0.0) {
            // image pole sits where sigma * tan_k(rho, t/2) sqrt(-kappa) = 1
            const double px = 1.0 / (sigma * std::sqrt(-kappa));
            if (!(rho < 0.0 && px * std::sqrt(-rho) >= 1.0))
                alpha = std::min(alpha, 0.9 * 2.0 * arctan_k(rho, px));
        }
        const double eps = 1e-6 * alpha;
        const double seed =
            sigma * eps +
            sigma * (rho - kappa * sigma * sigma) * eps * eps * eps / 12.0;
        const ode_path path = solve_ode(
            [rho, kappa](double t, double y) {
                return sin_k(kappa, y) / sin_k(rho, t);
            },
            eps, seed, alpha, {1e-12, 0.0, 5000});
        const double closed =
            2.0 * arctan_k(kappa, sigma * tan_k(rho, alpha / 2.0));
        worst = std::max(worst, std::abs(path.end_value() - closed));
    }
    line(2, worst < 1e-8,
         fmt("conformal profile solves its ODE, 50 random charts "
             "(max endpoint err %.2e, limit 1e-8)",
             worst));
}

double cap_radius(double rho) {
    return rho > 0.0 ? pi / std::sqrt(rho) : 2.4;
}

// 3. The unconstrained bound is attained: equidistant profile for
// kappa >= 0, contraction by sigma0 for kappa < 0, over a curvature/radius
// grid.
void criterion_3() {
    const double rhos[] = {-1.0, 0.0, 0.5, 1.0, 2.0};
    const double gaps[] = {0.0, 0.4, 1.0, 2.0, 3.0};
    const double fracs[] = {0.15, 0.35, 0.55, 0.75, 0.92};
    double worst = 0.0;
    for (double rho : rhos)
        for (double gap : gaps)
            for (double frac : fracs) {
                const double kappa = rho - gap;
                const double alpha = frac * cap_radius(rho);
                double err;
                if (kappa >= 0.0) {
                    const auto m =
                        azimuthal_map::equidistant(rho, kappa, 3, alpha);
                    const double expect =
                        std::log(sin_k(kappa, alpha) / sin_k(rho, alpha));
                    err = std::abs(m.anisometry().aniso - expect);
                } else {
                    const double s0 = sigma0_contraction(rho, kappa, alpha);
                    const auto m =
                        azimuthal_map::contracting(rho, kappa, 3, alpha, s0);
                    err = std::abs(m.anisometry().aniso + std::log(s0));
                }
                worst = std::max(worst, err);
            }
    line(3, worst < 1e-7,
         fmt("optimal profiles attain the unconstrained bound on a 5x5x5 "
             "grid (max err %.2e, limit 1e-7)",
             worst));
}

// Hemisphere-safe ball radius for the volume-matching profile.
double vp_cap(double rho, double kappa, int n) {
    double cap = rho > 0.0 ? 0.98 * pi / std::sqrt(rho) : 2.4;
    if (kappa > 0.0) {
        const model_space source(n, rho), target(n, kappa);
        const double vmax = 0.45 * target.full_space_volume();
        if (source.ball_volume(cap) > vmax)
            cap = source.ball_volume_inverse(vmax);
    }
    return cap;
}

// 4. The volume-matching profile attains the volume-preserving bound
// (n/(n-1)) log(I_kappa(V_rho(alpha)) / A_rho(alpha)) and has unit Jacobian
// pointwise.
void criterion_4() {
    const double rhos[] = {-1.0, 0.0, 0.5, 1.0, 2.0};
    const double gaps[] = {0.0, 0.4, 1.0, 2.0, 3.0};
    const double fracs[] = {0.15, 0.35, 0.55, 0.75, 0.92};
    double worst = 0.0;
    for (int n : {2, 3, 4})
        for (double rho : rhos)
            for (double gap : gaps)
                for (double frac : fracs) {
                    const double kappa = rho - gap;
                    const double alpha = frac * vp_cap(rho, kappa, n);
                    const auto m =
                        azimuthal_map::volume_preserving(rho, kappa, n, alpha);
                    const model_space source(n, rho), target(n, kappa);
                    const double ratio =
                        target.isoperimetric_profile(
                            source.ball_volume(alpha)) /
                        source.sphere_area(alpha);
                    const double expect =
                        double(n) / (n - 1) * std::log(ratio);
                    worst =
                        std::max(worst, std::abs(m.anisometry().aniso - expect));
                }
    double jac_worst = 0.0;
    const double jac_pairs[][2] = {{1.0, -1.0}, {2.0, 0.5}, {0.0, -2.0}};
    for (int n : {2, 3, 4})
        for (const auto& pr : jac_pairs) {
            const double alpha = 0.6 * vp_cap(pr[0], pr[1], n);
            const auto m =
                azimuthal_map::volume_preserving(pr[0], pr[1], n, alpha);
            for (int i = 1; i <= 32; ++i) {
                const double t = alpha * i / 32.0;
                jac_worst = std::max(jac_worst, std::abs(m.jacobian(t) - 1.0));
            }
        }
    line(4, worst < 1e-7 && jac_worst < 1e-9,
         fmt("volume-matching profile attains its bound, n=2..4 "
             "(max aniso err %.2e/1e-7, max |jacobian-1| %.2e/1e-9)",
             worst, jac_worst));
}

// 5. Conformal bound closed form, one branch per curvature sign, and the
// optimal stretch: sigma* = 1 for kappa >= 0, the boundary-isometric root
// for kappa < 0; a golden-section sweep over sigma confirms the minimizer
// (for kappa = 0 the minimum is a plateau, so the value is compared there).
void criterion_5() {
    struct pair_case {
        double rho, kappa;
    };
    const pair_case pairs[] = {{1.0, 0.5},  {2.0, 0.3},   {1.0, 0.0},
                               {0.5, 0.0},  {1.0, -1.0},  {0.0, -1.0},
                               {-0.5, -2.0}, {2.0, -0.25}};
    const double fracs[] = {0.3, 0.6, 0.85};
    double worst_formula = 0.0, worst_argmin = 0.0, worst_plateau = 0.0;
    for (const auto& pc : pairs)
        for (double frac : fracs) {
            const double rho = pc.rho, kappa = pc.kappa;
            const double cap =
                rho > 0.0 ? 0.95 * pi / std::sqrt(rho) : 2.2;
            const double alpha = frac * cap;
            const double x = tan_k(rho, alpha / 2.0);
            const double s = sin_k(rho, alpha);
            double expect, sstar;
            if (kappa > 0.0) {
                expect = std::log(1.0 + (rho - kappa) * x * x /
                                            (1.0 + kappa * x * x));
                sstar = 1.0;
            } else if (kappa == 0.0) {
                expect = std::log(1.0 + rho * x * x);
                sstar = 1.0;
            } else {
                const double s2 = sin_k(rho, alpha / 2.0);
                expect = std::log(-2.0 * kappa * s2 * s2 /
                                  (std::sqrt(1.0 - kappa * s * s) - 1.0));
                // boundary isometry: g_k(kappa, sigma x) = sin_k(rho, alpha)
                const double pole = 1.0 / (x * std::sqrt(-kappa));
                const double hi =
                    pole < 1.0 ? pole * (1.0 - 1e-12) : 1.0;
                sstar = find_root(
                    [kappa, x, s](double sg) { return g_k(kappa, sg * x) - s; },
                    1e-9, hi, {1e-14, 0.0, 300});
            }
            const auto m = azimuthal_map::conformal(rho, kappa, 3, alpha, sstar);
            worst_formula =
                std::max(worst_formula, std::abs(m.anisometry().aniso - expect));

            const auto objective = [rho, kappa, alpha](double sg) {
                return azimuthal_map::conformal(rho, kappa, 3, alpha, sg)
                    .anisometry()
                    .aniso;
            };
            double lo = 0.4 * sstar, hi = 1.7 * sstar;
            if (kappa < 0.0) {
                const double pole = 1.0 / (x * std::sqrt(-kappa));
                hi = sstar + 0.6 * (pole - sstar);
            }
            const double found =
                minimize_golden(objective, lo, hi, {1e-10, 0.0, 500});
            if (kappa == 0.0)
                worst_plateau =
                    std::max(worst_plateau, std::abs(objective(found) - expect));
            else
                worst_argmin = std::max(worst_argmin, std::abs(found - sstar));
        }
    line(5,
         worst_formula < 1e-7 && worst_argmin < 1e-6 && worst_plateau < 1e-7,
         fmt("conformal bound closed form per curvature sign "
             "(formula err %.2e/1e-7, argmin err %.2e/1e-6, "
             "flat plateau value err %.2e/1e-7)",
             worst_formula, worst_argmin, worst_plateau));
}

// 6. Quasiconformal optimum: stretch ratio capped by Q everywhere and
// saturated past the kink, the profile is C^1 but not C^2 there, the bound
// is non-increasing in Q, and Q = 1 recovers the conformal bound.  The
// profile checks run at the full radius; the ordering claims only hold where
// the profile is certified optimal, so those run inside the validity radius
// (shared across the Q grid since validity grows with Q).
void criterion_6() {
    struct qc_case {
        double rho, kappa, alpha;
    };
    const qc_case cases[] = {{1.0, 0.0, 2.8},
                             {2.0, 0.3, 2.09},
                             {1.0, -1.0, 2.6},
                             {0.5, -1.5, 2.4}};
    double worst_ratio = 0.0, worst_c1 = 0.0, min_c2_gap = infinity;
    double worst_monotone = 0.0, worst_q1 = 0.0;
    int active = 0;
    for (const auto& c : cases) {
        for (double Q : {1.3, 2.0, 3.5}) {
            bound_query q{c.rho, c.kappa, 3, c.alpha,
                          bound_class::quasiconformal, Q};
            const bound_result r = qc_bound(q);
            const azimuthal_map& m = r.optimal_map;
            if (m.family() != map_family::qc_optimal)
                continue; // linear profile already Q-quasiconformal
            ++active;
            const double beta = m.beta();
            for (int i = 1; i <= 256; ++i) {
                const double t = c.alpha * i / 256.0;
                const auto sv = m.singular_values(t);
                const double ratio = std::max(sv.second / sv.first,
                                              sv.first / sv.second);
                worst_ratio = std::max(worst_ratio, ratio - Q);
                if (t > beta * (1.0 + 1e-9))
                    worst_ratio = std::max(worst_ratio, std::abs(ratio - Q));
            }
            const double h = 1e-5 * std::min(beta, c.alpha - beta);
            const auto R = [&m](double t) { return m.distance(t); };
            const double left =
                (3.0 * R(beta) - 4.0 * R(beta - h) + R(beta - 2.0 * h)) /
                (2.0 * h);
            const double right =
                (-3.0 * R(beta) + 4.0 * R(beta + h) - R(beta + 2.0 * h)) /
                (2.0 * h);
            worst_c1 = std::max(worst_c1, std::abs(left - right));
            const double h2 = 1e-4 * std::min(beta, (c.alpha - beta) / 2.0);
            const double d2l =
                (R(beta) - 2.0 * R(beta - h2) + R(beta - 2.0 * h2)) / (h2 * h2);
            const double d2r =
                (R(beta + 2.0 * h2) - 2.0 * R(beta + h2) + R(beta)) / (h2 * h2);
            min_c2_gap = std::min(min_c2_gap, std::abs(d2r - d2l));
        }
        bound_query probe{c.rho, c.kappa, 3, c.alpha,
                          bound_class::quasiconformal, 1.0};
        const double certified =
            std::min(c.alpha, 0.9 * radius_limit_a4(probe));
        double prev = infinity;
        for (double Q : {1.0, 1.3, 2.0, 3.5, 8.0}) {
            bound_query q{c.rho, c.kappa, 3, certified,
                          bound_class::quasiconformal, Q};
            const double v = qc_bound(q).value;
            worst_monotone = std::max(worst_monotone, v - prev);
            prev = v;
        }
        bound_query q1{c.rho, c.kappa, 3, certified,
                       bound_class::quasiconformal, 1.0};
        bound_query qc{c.rho, c.kappa, 3, certified, bound_class::conformal};
        worst_q1 = std::max(
            worst_q1, std::abs(qc_bound(q1).value - conformal_bound(qc).value));
    }
    line(6,
         active >= 10 && worst_ratio < 1e-8 && worst_c1 < 1e-8 &&
             min_c2_gap > 1e-3 && worst_monotone < 1e-10 && worst_q1 < 1e-8,
         fmt("quasiconformal optimum: ratio cap and kink regularity, %d "
             "active windows (ratio excess %.2e/1e-8, R' jump %.2e/1e-8, "
             "min R'' jump %.2e>1e-3, certified Q-monotone slack %.2e/1e-10, "
             "Q=1 vs conformal %.2e/1e-8)",
             active, worst_ratio, worst_c1, min_c2_gap, worst_monotone,
             worst_q1));
}

// 7. Small-radius expansion: bound(alpha)/alpha^2 extrapolates to the stated
// leading coefficient for the unconstrained, conformal, and volume-
// preserving classes.
void criterion_7() {
    const double pairs[][2] = {
        {1.0, 0.0}, {1.0, -1.0}, {0.0, -1.0}, {0.5, 0.2}, {-1.0, -2.0}};
    const bound_class classes[] = {bound_class::general, bound_class::conformal,
                                   bound_class::volume_preserving};
    double worst = 0.0;
    for (const auto& pr : pairs)
        for (bound_class cls : classes)
            for (int n : {2, 3}) {
                const auto ratio = [&pr, cls, n](double h) {
                    bound_query q{pr[0], pr[1], n, h, cls};
                    return bound_for(q).value / (h * h);
                };
                const double limit = richardson_h2_2(ratio, 1e-2);
                const double expect =
                    small_alpha_coefficient(cls, pr[0], pr[1], n);
                worst = std::max(worst,
                                 std::abs(limit - expect) / std::abs(expect));
            }
    line(7, worst < 1e-3,
         fmt("small-radius coefficients across classes and dimensions "
             "(max rel err %.2e, limit 1e-3)",
             worst));
}

// 8. Determinant lemma for pinched forms: both slacks stay nonnegative on
// random SPD forms, and the pinched-spectrum witness attains equality.
void criterion_8() {
    std::uint64_t state = 0x0123456789abcdefull;
    double min_slack = infinity;
    for (int i = 0; i < 10000; ++i) {
        const int dim = 2 + i % 4;
        const double lambda = 0.3 + 0.9 * u01(state);
        const double Q = 1.0 + 3.0 * u01(state);
        const quadratic_form q = random_spd(dim, lambda, Q, state);
        std::vector<double> normal(dim);
        double nrm = 0.0;
        do {
            nrm = 0.0;
            for (double& c : normal) {
                c = 2.0 * u01(state) - 1.0;
                nrm += c * c;
            }
            nrm = std::sqrt(nrm);
        } while (nrm < 1e-3);
        for (double& c : normal) c /= nrm;
        const lemma_report rep = ellipsoid_lemma_check(q, normal, Q);
        const double scale = std::max(1.0, rep.det_full);
        min_slack = std::min(min_slack, rep.slack_sigma1 / scale);
        min_slack = std::min(min_slack, rep.slack_power / scale);
    }
    const quadratic_form witness(
        4, {0.7, 0, 0, 0, 0, 2.1, 0, 0, 0, 0, 2.1, 0, 0, 0, 0, 2.1});
    const lemma_report wrep =
        ellipsoid_lemma_check(witness, {1.0, 0.0, 0.0, 0.0}, 3.0);
    const double weq = std::abs(wrep.slack_power);
    line(8, min_slack > -1e-10 && weq < 1e-9,
         fmt("determinant lemma on 10000 random pinched forms "
             "(min normalized slack %.2e > -1e-10, witness equality "
             "%.2e/1e-9)",
             min_slack, weq));
}

// 9. Hyperbolic expansion blow-up: the conformal profile between unit
// hyperbolic spaces escapes at 2 atanh(1/sigma0) when sigma0 > 1 and stays
// below the closed-form image radius bound when sigma0 <= 1.
void criterion_9() {
    double worst_blow = 0.0;
    for (double s0 : {1.1, 2.0, 5.0}) {
        const double expect = 2.0 * std::atanh(1.0 / s0);
        const double eps = 1e-7;
        const double seed =
            s0 * eps + s0 * (s0 * s0 - 1.0) * eps * eps * eps / 12.0;
        const ode_path path = solve_ode(
            [](double t, double y) { return std::sinh(y) / std::sinh(t); },
            eps, seed, 2.0 * expect + 1.0, {1e-12, 0.0, 20000}, 1e9);
        worst_blow = path.blew_up
                         ? std::max(worst_blow, std::abs(path.blowup_t - expect))
                         : infinity;
    }
    double worst_bounded = 0.0, worst_identity = 0.0;
    for (double s0 : {0.5, 1.0})
        for (double alpha : {1.0, 2.5}) {
            const double eps = 1e-7;
            const double seed =
                s0 * eps + s0 * (s0 * s0 - 1.0) * eps * eps * eps / 12.0;
            const ode_path path = solve_ode(
                [](double t, double y) { return std::sinh(y) / std::sinh(t); },
                eps, seed, alpha, {1e-12, 0.0, 20000});
            const double closed = 2.0 * std::atanh(s0 * std::tanh(alpha / 2.0));
            worst_bounded =
                std::max(worst_bounded, closed - path.end_value());
            if (s0 == 1.0)
                worst_identity = std::max(worst_identity,
                                          std::abs(path.end_value() - alpha));
        }
    line(9, worst_blow < 1e-6 && worst_bounded < 1e-8 && worst_identity < 1e-8,
         fmt("hyperbolic expansion blow-up radius and bounded-image law "
             "(blow-up err %.2e/1e-6, image-radius deficit %.2e/1e-8, "
             "isometry err %.2e/1e-8)",
             worst_blow, worst_bounded, worst_identity));
}

// 10. Perturbation optimality: random class-respecting perturbations of the
// optimal profiles never beat the class bound.
void criterion_10() {
    double min_margin = infinity;
    std::uint64_t state = 0x7f4a7c159e3779b9ull;
    for (int i = 0; i < 100; ++i)
        min_margin = std::min(
            min_margin, perturb_general(1.0, -0.5, 3, 1.8, state).margin);
    bound_query a3q{1.0, 0.4, 3, 0.5, bound_class::conformal};
    const double a3 = conformal_bound(a3q).validity_radius;
    const double conf_alpha = std::min(1.2, 0.9 * a3);
    for (int i = 0; i < 100; ++i)
        min_margin = std::min(
            min_margin,
            perturb_conformal(1.0, 0.4, 3, conf_alpha, state).margin);
    for (int i = 0; i < 100; ++i)
        min_margin = std::min(
            min_margin,
            perturb_volume_preserving(1.0, 0.3, 3, 1.7, state).margin);
    for (int i = 0; i < 100; ++i)
        min_margin = std::min(
            min_margin,
            perturb_quasiconformal(1.0, -1.0, 3, 2.6, 2.0, state).margin);
    line(10, min_margin > -1e-9,
         fmt("400 class-respecting perturbations never beat their bound "
             "(min margin %.2e, limit -1e-9)",
             min_margin));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0)
        std::printf("%d criterion check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
