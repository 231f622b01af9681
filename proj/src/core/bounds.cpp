#include "bounds.hpp"

#include <cmath>
#include <numbers>

namespace curvmap {

namespace {

constexpr double pi = std::numbers::pi;

double conjugate_radius(double kappa) {
    return kappa > 0.0 ? pi / std::sqrt(kappa) : infinity;
}

void validate_query(const bound_query& q) {
    if (q.n < 2) throw invalid_argument("bound_query: requires n >= 2");
    if (!(q.kappa <= q.rho))
        throw invalid_argument("bound_query: requires kappa <= rho");
    if (!(q.alpha > 0.0 && q.alpha < conjugate_radius(q.rho)))
        throw invalid_argument(
            "bound_query: alpha outside (0, source conjugate radius)");
    if (!(q.Q >= 1.0)) throw invalid_argument("bound_query: requires Q >= 1");
    if (!(q.inj_m > 0.0 && q.inj_n > 0.0))
        throw invalid_argument("bound_query: injectivity radii must be > 0");
}

bool within(double alpha, double radius) {
    return alpha <= radius * (1.0 + 1e-12);
}

// Inverse of sin_k for kappa <= 0 (monotone on the whole half-line).
double sin_k_inverse_nonpos(double kappa, double y) {
    if (kappa == 0.0) return y;
    const double s = std::sqrt(-kappa);
    return std::asinh(s * y) / s;
}

// Shared shape of the optimal quasiconformal data, without validity radii.
struct qc_profile {
    azimuthal_map map;
    double value;
    double sigma1, sigma2;
};

qc_profile qc_profile_and_value(double rho, double kappa, int n, double alpha,
                                double Q);

} // namespace

double sigma0_contraction(double rho, double kappa, double alpha) {
    if (!(kappa <= rho))
        throw invalid_argument("sigma0_contraction: requires kappa <= rho");
    if (!(alpha > 0.0 && alpha < conjugate_radius(rho)))
        throw invalid_argument("sigma0_contraction: alpha out of range");
    if (kappa == rho) return 1.0;
    const double target = sin_k(rho, alpha);
    auto f = [&](double s) { return sin_k(kappa, s * alpha) - target; };
    if (f(1.0) <= 0.0) return 1.0;
    return find_root(f, 1e-12, 1.0, {1e-14, 0.0, 300});
}

double radius_limit_a1(const bound_query& q) {
    const double cap = std::min(q.inj_m, conjugate_radius(q.rho));
    double threshold;
    std::function<double(double)> c;
    if (q.kappa > 0.0) {
        threshold = std::min(q.inj_n, 0.5 * pi / std::sqrt(q.kappa));
        c = [&](double a) {
            return a * sin_k(q.kappa, a) / sin_k(q.rho, a);
        };
    } else {
        threshold = q.inj_n;
        c = [&](double a) {
            return a * a / sin_k_inverse_nonpos(q.kappa, sin_k(q.rho, a));
        };
    }
    if (threshold == infinity) return cap;

    double scan_end = cap * (1.0 - 1e-14);
    if (cap == infinity) {
        // Unbounded source, so rho <= 0 and the scan needs a finite horizon.
        if (q.kappa > 0.0) {
            // c oscillates under the envelope (1/sqrt(kappa)) * a/sin_rho(a),
            // which is non-increasing; no crossing can sit past the point
            // where the envelope drops below the threshold.
            const double peak = 1.0 / std::sqrt(q.kappa);
            if (peak < threshold) return cap;
            if (q.rho == 0.0) {
                scan_end = 0.5 * pi / std::sqrt(q.kappa);
            } else {
                double hi = 1.0;
                while (peak * hi / sin_k(q.rho, hi) >= threshold) hi *= 2.0;
                scan_end = hi;
            }
        } else {
            // c grows without bound: expand until the comparison image
            // clears the target cap.
            double hi = 1.0;
            while (c(hi) < threshold) {
                hi *= 2.0;
                if (hi > 1e290) return cap;
            }
            scan_end = hi;
        }
    }

    // First crossing below the horizon, if any.
    const int grid = 4096;
    double prev = scan_end * 1e-14;
    for (int i = 1; i <= grid; ++i) {
        const double a = scan_end * i / grid;
        if (c(a) >= threshold)
            return find_root([&](double x) { return c(x) - threshold; }, prev,
                             a, {1e-12, 0.0, 300});
        prev = a;
    }
    return cap;
}

bound_result general_bound(const bound_query& q) {
    validate_query(q);
    const double a1 = radius_limit_a1(q);
    if (q.kappa >= 0.0) {
        const double ratio = sin_k(q.kappa, q.alpha) / sin_k(q.rho, q.alpha);
        return {std::log(ratio),
                azimuthal_map::equidistant(q.rho, q.kappa, q.n, q.alpha),
                1.0,
                ratio,
                a1,
                within(q.alpha, a1)};
    }
    const double s0 = sigma0_contraction(q.rho, q.kappa, q.alpha);
    return {-std::log(s0),
            azimuthal_map::contracting(q.rho, q.kappa, q.n, q.alpha, s0),
            s0,
            1.0,
            a1,
            within(q.alpha, a1)};
}

bound_result vp_bound(const bound_query& q) {
    validate_query(q);
    const model_space source(q.n, q.rho), target(q.n, q.kappa);
    const double v = source.ball_volume(q.alpha);
    if (q.kappa > 0.0) {
        const double half = 0.5 * target.full_space_volume();
        if (v > half * (1.0 + 1e-12))
            throw range_error(
                "vp_bound: image volume exceeds half the target space");
    }
    const double ratio =
        target.isoperimetric_profile(v) / source.sphere_area(q.alpha);
    const double value = double(q.n) / (q.n - 1) * std::log(ratio);
    return {value,
            azimuthal_map::volume_preserving(q.rho, q.kappa, q.n, q.alpha),
            1.0 / ratio,
            std::pow(ratio, 1.0 / (q.n - 1)),
            q.inj_m,
            within(q.alpha, q.inj_m)};
}

bound_result conformal_bound(const bound_query& q) {
    validate_query(q);
    const double x = tan_k(q.rho, 0.5 * q.alpha);
    const double a3 = radius_limit_a3(q);
    if (q.kappa >= 0.0) {
        const double value =
            std::log1p((q.rho - q.kappa) * x * x /
                       (1.0 + q.kappa * x * x));
        return {value,
                azimuthal_map::conformal(q.rho, q.kappa, q.n, q.alpha, 1.0),
                1.0,
                std::exp(value),
                a3,
                within(q.alpha, a3)};
    }
    const double s = sin_k(q.rho, q.alpha);
    const double xstar = s / (1.0 + std::sqrt(1.0 - q.kappa * s * s));
    const double sstar = xstar / x;
    return {-std::log(sstar),
            azimuthal_map::conformal(q.rho, q.kappa, q.n, q.alpha, sstar),
            sstar,
            1.0,
            a3,
            within(q.alpha, a3)};
}

double radius_limit_a3(const bound_query& q) {
    if (q.kappa <= 0.0) return q.inj_m;
    const model_space source(q.n, q.rho), target(q.n, q.kappa);
    const double vmax = target.full_space_volume();
    auto cond = [&](double a) {
        const double x = tan_k(q.rho, 0.5 * a);
        const double lhs =
            std::pow(vmax / (2.0 * source.ball_volume(a)), 1.0 / q.n);
        const double rhs =
            1.0 + (q.rho - q.kappa) * x * x / (1.0 + q.kappa * x * x);
        return lhs - rhs;
    };
    const double conj = conjugate_radius(q.rho);
    const double crossing = find_root(cond, conj * 1e-9, conj * (1.0 - 1e-12),
                                      {1e-12, 0.0, 300});
    return std::min(q.inj_m, crossing);
}

double qc_beta(double rho, double kappa, double alpha, double Q,
               double sigma) {
    if (!(Q > 1.0)) return std::numeric_limits<double>::quiet_NaN();
    auto g = [&](double b) {
        return sin_k(kappa, sigma * b) - Q * sigma * sin_k(rho, b);
    };
    if (g(alpha) <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return find_root(g, alpha * 1e-12, alpha, {1e-14, 0.0, 300});
}

namespace {

qc_profile qc_profile_and_value(double rho, double kappa, int n, double alpha,
                                double Q) {
    if (Q <= 1.0 + 1e-12) {
        // At Q = 1 the optimum is the best conformal map.
        const double x = tan_k(rho, 0.5 * alpha);
        if (kappa >= 0.0) {
            const double value = std::log1p(
                (rho - kappa) * x * x / (1.0 + kappa * x * x));
            return {azimuthal_map::conformal(rho, kappa, n, alpha, 1.0),
                    value, 1.0, std::exp(value)};
        }
        const double s = sin_k(rho, alpha);
        const double xstar = s / (1.0 + std::sqrt(1.0 - kappa * s * s));
        const double sstar = xstar / x;
        return {azimuthal_map::conformal(rho, kappa, n, alpha, sstar),
                -std::log(sstar), sstar, 1.0};
    }

    if (kappa >= 0.0) {
        const double ratio = sin_k(kappa, alpha) / sin_k(rho, alpha);
        if (ratio <= Q) {
            // The linear optimum is already Q-quasiconformal.
            return {azimuthal_map::equidistant(rho, kappa, n, alpha),
                    std::log(ratio), 1.0, ratio};
        }
        const double beta = qc_beta(rho, kappa, alpha, Q, 1.0);
        auto map = azimuthal_map::qc_optimal(rho, kappa, n, alpha, Q, 1.0,
                                             beta);
        const auto rep = map.anisometry(1e-11);
        return {map, rep.aniso, rep.sigma1, rep.sigma2};
    }

    const double s0 = sigma0_contraction(rho, kappa, alpha);
    if (1.0 / s0 <= Q) {
        return {azimuthal_map::contracting(rho, kappa, n, alpha, s0),
                -std::log(s0), s0, 1.0};
    }

    // Pick the linear stretch so the largest stretch of the glued profile
    // is exactly 1; the anisometry is then -log(sigma).
    auto sigma2_of = [&](double sigma) {
        const double beta = qc_beta(rho, kappa, alpha, Q, sigma);
        if (std::isnan(beta)) {
            const double tang =
                sin_k(kappa, sigma * alpha) / sin_k(rho, alpha);
            return std::max(sigma, tang);
        }
        auto map =
            azimuthal_map::qc_optimal(rho, kappa, n, alpha, Q, sigma, beta);
        return map.anisometry(1e-9).sigma2;
    };
    double lo = s0, hi = 1.0;
    if (sigma2_of(hi) <= 1.0) {
        // Already balanced at sigma = 1 (only at the active-window edge).
        const double beta = qc_beta(rho, kappa, alpha, Q, 1.0);
        auto map = std::isnan(beta)
                       ? azimuthal_map::contracting(rho, kappa, n, alpha, s0)
                       : azimuthal_map::qc_optimal(rho, kappa, n, alpha, Q,
                                                   1.0, beta);
        const auto rep = map.anisometry(1e-11);
        return {map, rep.aniso, rep.sigma1, rep.sigma2};
    }
    while (sigma2_of(lo) > 1.0) {
        lo *= 0.5;
        if (lo < 1e-8)
            throw convergence_error("qc_bound: no balanced linear stretch");
    }
    const double sigma = find_root(
        [&](double s) { return sigma2_of(s) - 1.0; }, lo, hi,
        {1e-13, 0.0, 300});
    const double beta = qc_beta(rho, kappa, alpha, Q, sigma);
    auto map = azimuthal_map::qc_optimal(rho, kappa, n, alpha, Q, sigma, beta);
    const auto rep = map.anisometry(1e-11);
    return {map, rep.aniso, rep.sigma1, rep.sigma2};
}

} // namespace

bound_result qc_bound(const bound_query& q) {
    validate_query(q);
    const auto prof =
        qc_profile_and_value(q.rho, q.kappa, q.n, q.alpha, q.Q);
    const double a4 = radius_limit_a4(q);
    return {prof.value, prof.map,       prof.sigma1,
            prof.sigma2, a4, within(q.alpha, a4)};
}

double radius_limit_a4(const bound_query& q) {
    if (q.kappa <= 0.0) return q.inj_m;
    const model_space source(q.n, q.rho), target(q.n, q.kappa);
    const double vmax = target.full_space_volume();
    auto cond = [&](double a) {
        const double lhs =
            std::pow(vmax / (2.0 * source.ball_volume(a)), 1.0 / q.n);
        const double rhs = std::exp(
            qc_profile_and_value(q.rho, q.kappa, q.n, a, q.Q).value);
        return lhs - rhs;
    };
    const double conj = conjugate_radius(q.rho);
    const double crossing = find_root(cond, conj * 1e-9, conj * (1.0 - 1e-9),
                                      {1e-10, 0.0, 200});
    return std::min(q.inj_m, crossing);
}

bound_result bound_for(const bound_query& q) {
    switch (q.cls) {
    case bound_class::general:
        return general_bound(q);
    case bound_class::volume_preserving:
        return vp_bound(q);
    case bound_class::conformal:
        return conformal_bound(q);
    case bound_class::quasiconformal:
        return qc_bound(q);
    }
    throw invalid_argument("bound_for: unknown class");
}

double f_kappa_q(double kappa, int n, double Q, double v) {
    if (n < 2) throw invalid_argument("f_kappa_q: requires n >= 2");
    if (!(Q >= 1.0)) throw invalid_argument("f_kappa_q: requires Q >= 1");
    if (!(v > 0.0)) throw domain_error("f_kappa_q: requires v > 0");
    const model_space space(n, kappa);
    if (kappa > 0.0) {
        const double half = 0.5 * space.full_space_volume();
        if (v > half * (1.0 + 1e-12))
            throw range_error("f_kappa_q: volume beyond the hemisphere");
    }
    const double t = space.ball_volume_inverse(v);
    return Q * std::log(tan_k(kappa, 0.5 * t));
}

double qc_sigma2_lower(double rho, double kappa, int n, double Q,
                       double alpha, double beta, double r_beta) {
    if (n < 2) throw invalid_argument("qc_sigma2_lower: requires n >= 2");
    if (!(Q >= 1.0))
        throw invalid_argument("qc_sigma2_lower: requires Q >= 1");
    if (!(0.0 < beta && beta < alpha && alpha < conjugate_radius(rho)))
        throw invalid_argument("qc_sigma2_lower: requires 0 < beta < alpha");
    if (!(r_beta >= 0.0) ||
        (kappa > 0.0 && r_beta >= conjugate_radius(kappa)))
        throw domain_error("qc_sigma2_lower: image radius out of range");
    const double arg =
        tan_k(kappa, 0.5 * r_beta) *
        std::pow(tan_k(rho, 0.5 * alpha) / tan_k(rho, 0.5 * beta), 1.0 / Q);
    if (kappa < 0.0 && arg * std::sqrt(-kappa) >= 1.0) return infinity;
    return g_k(kappa, arg) / sin_k(rho, alpha);
}

double small_alpha_coefficient(bound_class cls, double rho, double kappa,
                               int n) {
    if (n < 2)
        throw invalid_argument("small_alpha_coefficient: requires n >= 2");
    switch (cls) {
    case bound_class::general:
        return (rho - kappa) / 6.0;
    case bound_class::conformal:
        return (rho - kappa) / 4.0;
    case bound_class::volume_preserving:
        return n * (rho - kappa) / (2.0 * (n + 2));
    case bound_class::quasiconformal:
        throw invalid_argument(
            "small_alpha_coefficient: no quadratic leading term for the "
            "quasiconformal class");
    }
    throw invalid_argument("small_alpha_coefficient: unknown class");
}

blowup_outcome ahlfors_blowup(double sigma0, double alpha) {
    if (!(sigma0 > 0.0))
        throw invalid_argument("ahlfors_blowup: requires sigma0 > 0");
    if (!(alpha > 0.0))
        throw invalid_argument("ahlfors_blowup: requires alpha > 0");
    if (sigma0 > 1.0) return {true, 2.0 * std::atanh(1.0 / sigma0)};
    return {false, 2.0 * std::atanh(sigma0 * std::tanh(0.5 * alpha))};
}

double general_sigma2_lemma(double rho, double kappa, int n, double sigma1,
                            double alpha) {
    if (n < 2)
        throw invalid_argument("general_sigma2_lemma: requires n >= 2");
    if (!(sigma1 > 0.0))
        throw invalid_argument("general_sigma2_lemma: requires sigma1 > 0");
    if (!(alpha > 0.0 && alpha < conjugate_radius(rho)))
        throw invalid_argument("general_sigma2_lemma: alpha out of range");
    if (kappa > 0.0 && sigma1 * alpha >= conjugate_radius(kappa))
        throw domain_error(
            "general_sigma2_lemma: comparison radius past the conjugate "
            "locus");
    return sin_k(kappa, sigma1 * alpha) / sin_k(rho, alpha);
}

} // namespace curvmap
