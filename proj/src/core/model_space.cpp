#include "model_space.hpp"

#include <cmath>
#include <numbers>

namespace curvmap {

namespace {

constexpr double pi = std::numbers::pi;

// |kappa * t^2| below this goes through the series branch; the truncation
// error of the quartic tail is ~u^4/40000, far below machine epsilon here.
constexpr double series_cut = 1e-6;

// (1 - cos_k(t)) / kappa, stable across kappa = 0.
double one_minus_cos_over_kappa(double kappa, double t) {
    // 1 - cos_k(t) = 2*kappa*sin_k(t/2)^2 exactly, in every curvature sign.
    const double h = sin_k(kappa, 0.5 * t);
    return 2.0 * h * h;
}

// (t - sin_k(t) * cos_k(t)) / kappa, stable across kappa = 0.
double t_minus_sincos_over_kappa(double kappa, double t) {
    // Direct evaluation cancels catastrophically while kappa*t^2 is small;
    // the series keeps full precision up to the crossover near 0.03.
    const double u = kappa * t * t;
    if (std::abs(u) < 0.03)
        return (2.0 / 3.0) * t * t * t *
               (1.0 - u / 5.0 + 2.0 * u * u / 105.0 - u * u * u / 945.0 +
                2.0 * u * u * u * u / 51975.0);
    return (t - sin_k(kappa, t) * cos_k(kappa, t)) / kappa;
}

} // namespace

double sin_k(double kappa, double t) {
    const double u = kappa * t * t;
    if (std::abs(u) < series_cut)
        return t * (1.0 - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0);
    if (kappa > 0.0) {
        const double s = std::sqrt(kappa);
        return std::sin(s * t) / s;
    }
    const double s = std::sqrt(-kappa);
    return std::sinh(s * t) / s;
}

double cos_k(double kappa, double t) {
    const double u = kappa * t * t;
    if (std::abs(u) < series_cut)
        return 1.0 - u / 2.0 + u * u / 24.0 - u * u * u / 720.0;
    if (kappa > 0.0) return std::cos(std::sqrt(kappa) * t);
    return std::cosh(std::sqrt(-kappa) * t);
}

double tan_k(double kappa, double t) {
    if (kappa > 0.0 && std::abs(t) * std::sqrt(kappa) >= 0.5 * pi)
        throw domain_error("tan_k: radius at or beyond the pole");
    return sin_k(kappa, t) / cos_k(kappa, t);
}

double arctan_k(double kappa, double x) {
    const double v = kappa * x * x;
    if (std::abs(v) < series_cut)
        return x * (1.0 - v / 3.0 + v * v / 5.0 - v * v * v / 7.0);
    if (kappa > 0.0) {
        const double s = std::sqrt(kappa);
        return std::atan(s * x) / s;
    }
    const double s = std::sqrt(-kappa);
    if (std::abs(x) * s >= 1.0)
        throw domain_error("arctan_k: argument at or beyond the pole");
    return std::atanh(s * x) / s;
}

double g_k(double kappa, double x) {
    const double denom = 1.0 + kappa * x * x;
    if (denom == 0.0) throw domain_error("g_k: pole of the rational form");
    return 2.0 * x / denom;
}

double unit_sphere_area(int n) {
    if (n < 2) throw invalid_argument("unit_sphere_area: requires n >= 2");
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

model_space::model_space(int n, double kappa) : n_(n), kappa_(kappa) {
    if (n < 2) throw invalid_argument("model_space: requires n >= 2");
    if (!std::isfinite(kappa))
        throw invalid_argument("model_space: curvature must be finite");
}

double model_space::conjugate_radius() const {
    return kappa_ > 0.0 ? pi / std::sqrt(kappa_) : infinity;
}

double model_space::sphere_area(double t) const {
    if (!(t >= 0.0) || t >= conjugate_radius())
        throw domain_error("sphere_area: radius outside [0, conjugate)");
    return unit_sphere_area(n_) * std::pow(sin_k(kappa_, t), n_ - 1);
}

double model_space::ball_volume(double t) const {
    if (!(t >= 0.0) || t > conjugate_radius())
        throw domain_error("ball_volume: radius outside [0, conjugate]");
    const double omega = unit_sphere_area(n_);
    if (kappa_ == 0.0) return omega * std::pow(t, n_) / n_;
    if (n_ == 2) return 2.0 * pi * one_minus_cos_over_kappa(kappa_, t);
    if (n_ == 3) return 2.0 * pi * t_minus_sincos_over_kappa(kappa_, t);
    const double kappa = kappa_;
    const int m = n_ - 1;
    return omega * integrate(
                       [kappa, m](double s) {
                           return std::pow(sin_k(kappa, s), m);
                       },
                       0.0, t);
}

double model_space::ball_volume_inverse(double v) const {
    if (!(v >= 0.0)) throw range_error("ball_volume_inverse: negative volume");
    if (v == 0.0) return 0.0;

    double hi;
    if (kappa_ > 0.0) {
        const double vmax = full_space_volume();
        if (v > vmax * (1.0 + 1e-12))
            throw range_error("ball_volume_inverse: volume exceeds the space");
        if (v >= vmax) return conjugate_radius();
        hi = conjugate_radius();
    } else {
        hi = std::pow(n_ * v / unit_sphere_area(n_), 1.0 / n_);
        hi = std::max(hi, 1e-30);
        while (ball_volume(hi) < v) hi *= 2.0;
    }

    // Newton with bisection safeguard; V' = sphere_area is exact.
    double lo = 0.0;
    double t = std::min(0.99 * hi,
                        std::pow(n_ * v / unit_sphere_area(n_), 1.0 / n_));
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
    double ft = ball_volume(t) - v;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(ft) <= 1e-15 * v) break;
        if (ft > 0.0)
            hi = t;
        else
            lo = t;
        double tn = t;
        const double dv = sin_k(kappa_, t);
        if (dv > 0.0) {
            // Newton on log V; plain Newton inches down in half-steps when
            // hyperbolic growth puts the iterate far above the root.
            const double area =
                unit_sphere_area(n_) * std::pow(dv, n_ - 1);
            const double vt = ft + v;
            tn = t + std::log1p(-ft / vt) * vt / area;
        }
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (tn == t) break;
        t = tn;
        ft = ball_volume(t) - v;
        if (hi - lo <= 4e-16 * std::max(1.0, t)) break;
    }
    return t;
}

double model_space::full_space_volume() const {
    if (!(kappa_ > 0.0))
        throw domain_error("full_space_volume: infinite for kappa <= 0");
    return ball_volume(conjugate_radius());
}

double model_space::isoperimetric_profile(double v) const {
    if (!(v >= 0.0))
        throw range_error("isoperimetric_profile: negative volume");
    if (kappa_ > 0.0) {
        const double half = 0.5 * full_space_volume();
        if (v > half * (1.0 + 1e-12))
            throw range_error(
                "isoperimetric_profile: only the increasing branch (volumes "
                "up to half the space) is defined");
        if (v > half) v = half;
    }
    const double t = ball_volume_inverse(v);
    return unit_sphere_area(n_) * std::pow(sin_k(kappa_, t), n_ - 1);
}

std::vector<double> taylor_coeffs(const model_space& space, series_kind kind) {
    const double k = space.kappa();
    const int n = space.dim();
    const double omega = unit_sphere_area(n);
    switch (kind) {
    case series_kind::sin_series:
        return {1.0, -k / 6.0, k * k / 120.0};
    case series_kind::cos_series:
        return {1.0, -k / 2.0, k * k / 24.0};
    case series_kind::tan_series:
        return {1.0, k / 3.0, 2.0 * k * k / 15.0};
    case series_kind::arctan_series:
        return {1.0, -k / 3.0, k * k / 5.0};
    case series_kind::sphere_area_series:
        return {1.0, -(n - 1) * k / 6.0};
    case series_kind::ball_volume_series:
        return {1.0, -n * (n - 1) * k / (6.0 * (n + 2))};
    case series_kind::iso_profile_series: {
        const double c0 =
            std::pow(double(n), double(n - 1) / n) * std::pow(omega, 1.0 / n);
        const double c1 = -(n - 1) * k / (2.0 * (n + 2)) *
                          std::pow(double(n), double(n + 1) / n) /
                          std::pow(omega, 1.0 / n);
        return {c0, c1};
    }
    }
    throw invalid_argument("taylor_coeffs: unknown series kind");
}

} // namespace curvmap
