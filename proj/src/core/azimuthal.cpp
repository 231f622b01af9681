#include "azimuthal.hpp"

#include <cmath>
#include <numbers>

namespace curvmap {

namespace {

constexpr double pi = std::numbers::pi;

// Least t with tan_k(rho, t/2) = x, or +inf when the half-angle tangent
// never reaches x (possible only for rho < 0).
double half_angle_radius(double rho, double x) {
    if (rho < 0.0 && x * std::sqrt(-rho) >= 1.0) return infinity;
    return 2.0 * arctan_k(rho, x);
}

} // namespace

azimuthal_map::azimuthal_map(double rho, double kappa, int n, double alpha,
                             map_family family, double sigma, double Q,
                             double beta)
    : rho_(rho), kappa_(kappa), n_(n), alpha_(alpha), family_(family),
      sigma_(sigma), Q_(Q), beta_(beta) {
    if (n < 2) throw invalid_argument("azimuthal_map: requires n >= 2");
    if (!(alpha > 0.0))
        throw invalid_argument("azimuthal_map: requires alpha > 0");
    if (rho > 0.0 && alpha >= pi / std::sqrt(rho))
        throw invalid_argument(
            "azimuthal_map: ball radius reaches the source conjugate locus");
    if (!(sigma > 0.0))
        throw invalid_argument("azimuthal_map: requires sigma > 0");
    if (family == map_family::qc_optimal) {
        if (!(Q >= 1.0))
            throw invalid_argument("azimuthal_map: requires Q >= 1");
        if (!(beta > 0.0 && beta < alpha))
            throw invalid_argument(
                "azimuthal_map: requires 0 < beta < alpha");
        qc_coeff_ = tan_k(kappa, 0.5 * sigma * beta) /
                    std::pow(tan_k(rho, 0.5 * beta), 1.0 / Q);
    }
}

azimuthal_map azimuthal_map::equidistant(double rho, double kappa, int n,
                                         double alpha) {
    return {rho, kappa, n, alpha, map_family::equidistant, 1.0, 1.0, 0.0};
}

azimuthal_map azimuthal_map::contracting(double rho, double kappa, int n,
                                         double alpha, double sigma) {
    return {rho, kappa, n, alpha, map_family::contracting, sigma, 1.0, 0.0};
}

azimuthal_map azimuthal_map::conformal(double rho, double kappa, int n,
                                       double alpha, double sigma) {
    return {rho, kappa, n, alpha, map_family::conformal, sigma, 1.0, 0.0};
}

azimuthal_map azimuthal_map::volume_preserving(double rho, double kappa,
                                               int n, double alpha) {
    return {rho, kappa, n, alpha, map_family::volume_preserving, 1.0, 1.0,
            0.0};
}

azimuthal_map azimuthal_map::qc_optimal(double rho, double kappa, int n,
                                        double alpha, double Q, double sigma,
                                        double beta) {
    return {rho, kappa, n, alpha, map_family::qc_optimal, sigma, Q, beta};
}

double azimuthal_map::distance(double t) const {
    if (!(t >= 0.0 && t <= alpha_ * (1.0 + 1e-12)))
        throw domain_error("azimuthal_map: t outside [0, alpha]");
    t = std::min(t, alpha_);
    switch (family_) {
    case map_family::equidistant:
        return t;
    case map_family::contracting:
        return sigma_ * t;
    case map_family::conformal:
        return 2.0 * arctan_k(kappa_, sigma_ * tan_k(rho_, 0.5 * t));
    case map_family::volume_preserving: {
        const model_space source(n_, rho_), target(n_, kappa_);
        return target.ball_volume_inverse(source.ball_volume(t));
    }
    case map_family::qc_optimal:
        if (t <= beta_) return sigma_ * t;
        return 2.0 * arctan_k(kappa_,
                              qc_coeff_ *
                                  std::pow(tan_k(rho_, 0.5 * t), 1.0 / Q_));
    }
    throw invalid_argument("azimuthal_map: unknown family");
}

double azimuthal_map::initial_stretch() const {
    switch (family_) {
    case map_family::equidistant:
    case map_family::volume_preserving:
        return 1.0;
    default:
        return sigma_;
    }
}

std::pair<double, double> azimuthal_map::singular_values(double t) const {
    if (!(t >= 0.0 && t <= alpha_ * (1.0 + 1e-12)))
        throw domain_error("azimuthal_map: t outside [0, alpha]");
    t = std::min(t, alpha_);
    const double s0 = initial_stretch();
    if (t == 0.0) return {s0, s0};

    const double R = distance(t);
    const double st = sin_k(rho_, t);
    const double tangential = sin_k(kappa_, R) / st;
    double radial;
    switch (family_) {
    case map_family::equidistant:
        radial = 1.0;
        break;
    case map_family::contracting:
        radial = sigma_;
        break;
    case map_family::conformal: {
        const double x = tan_k(rho_, 0.5 * t);
        const double denom = 1.0 + kappa_ * sigma_ * sigma_ * x * x;
        if (denom <= 0.0)
            throw domain_error("azimuthal_map: image past the chart edge");
        radial = sigma_ * (1.0 + rho_ * x * x) / denom;
        break;
    }
    case map_family::volume_preserving:
        radial = std::pow(st / sin_k(kappa_, R), n_ - 1);
        break;
    case map_family::qc_optimal:
        radial = t <= beta_ ? sigma_ : tangential / Q_;
        break;
    default:
        throw invalid_argument("azimuthal_map: unknown family");
    }
    return {radial, tangential};
}

double azimuthal_map::derivative(double t) const {
    if (t == 0.0) return initial_stretch();
    return singular_values(t).first;
}

double azimuthal_map::jacobian(double t) const {
    const auto [radial, tangential] = singular_values(t);
    return radial * std::pow(tangential, n_ - 1);
}

double azimuthal_map::image_ball_volume(double t) const {
    return model_space(n_, kappa_).ball_volume(distance(t));
}

double azimuthal_map::chart_exit_radius() const {
    const double conj_target =
        kappa_ > 0.0 ? pi / std::sqrt(kappa_) : infinity;
    double exit = infinity;
    switch (family_) {
    case map_family::equidistant:
        exit = conj_target;
        break;
    case map_family::contracting:
        exit = conj_target / sigma_;
        break;
    case map_family::conformal:
        if (kappa_ < 0.0)
            exit = half_angle_radius(rho_,
                                     1.0 / (sigma_ * std::sqrt(-kappa_)));
        break;
    case map_family::volume_preserving:
        if (kappa_ > 0.0) {
            const model_space source(n_, rho_), target(n_, kappa_);
            const double vmax = target.full_space_volume();
            if (source.ball_volume(alpha_) >= vmax) {
                exit = find_root(
                    [&](double t) { return source.ball_volume(t) - vmax; },
                    0.0, alpha_, {1e-14, 0.0, 300});
            }
        }
        break;
    case map_family::qc_optimal:
        if (kappa_ > 0.0) {
            exit = conj_target / sigma_; // on the linear part only
            if (exit > beta_) exit = infinity;
        } else if (kappa_ < 0.0) {
            const double xq =
                std::pow(1.0 / (qc_coeff_ * std::sqrt(-kappa_)), Q_);
            exit = half_angle_radius(rho_, xq);
            if (exit <= beta_) exit = infinity; // linear part is inside
        }
        break;
    }
    return exit <= alpha_ ? exit : infinity;
}

namespace {

anisometry_report sv_extremes(
    const std::function<std::pair<double, double>(double)>& sv,
    double initial_stretch, double rho, double alpha, double rel_tol) {
    constexpr int N = 2048;
    anisometry_report rep;
    rep.alpha_exceeds_convexity =
        rho > 0.0 && alpha > 0.5 * pi / std::sqrt(rho) * (1.0 + 1e-15);

    std::vector<double> lo(N + 1), hi(N + 1);
    lo[0] = hi[0] = initial_stretch;
    for (int i = 1; i <= N; ++i) {
        const double t = alpha * i / N;
        double radial, tangential;
        bool ok = true;
        try {
            const auto v = sv(t);
            radial = v.first;
            tangential = v.second;
            ok = std::isfinite(radial) && std::isfinite(tangential) &&
                 radial > 0.0 && tangential > 0.0;
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) {
            // The map escapes the chart inside the ball.
            rep.unbounded = true;
            rep.sigma2 = infinity;
            rep.aniso = infinity;
            rep.argmax_radius = t;
            double smin = infinity;
            for (int j = 0; j < i; ++j)
                if (lo[j] < smin) {
                    smin = lo[j];
                    rep.argmin_radius = alpha * j / N;
                }
            rep.sigma1 = smin;
            return rep;
        }
        lo[i] = std::min(radial, tangential);
        hi[i] = std::max(radial, tangential);
    }

    auto eval_lo = [&](double t) -> double {
        try {
            const auto v = sv(t);
            return std::min(v.first, v.second);
        } catch (const std::exception&) {
            return infinity;
        }
    };
    auto eval_hi = [&](double t) -> double {
        try {
            const auto v = sv(t);
            return std::max(v.first, v.second);
        } catch (const std::exception&) {
            return -infinity;
        }
    };

    double s1 = infinity, s2 = -infinity;
    for (int i = 0; i <= N; ++i) {
        if (lo[i] < s1) {
            s1 = lo[i];
            rep.argmin_radius = alpha * i / N;
        }
        if (hi[i] > s2) {
            s2 = hi[i];
            rep.argmax_radius = alpha * i / N;
        }
    }

    // Interior extrema can sit between grid nodes; refine each candidate.
    const double xtol = std::max(rel_tol, 1e-13) * alpha;
    const tolerance gt{0.0, xtol, 200};
    for (int i = 1; i < N; ++i) {
        if (lo[i] <= lo[i - 1] && lo[i] <= lo[i + 1]) {
            const double a = alpha * (i - 1) / N, b = alpha * (i + 1) / N;
            const double t = minimize_golden(eval_lo, a, b, gt);
            const double v = eval_lo(t);
            if (v < s1) {
                s1 = v;
                rep.argmin_radius = t;
            }
        }
        if (hi[i] >= hi[i - 1] && hi[i] >= hi[i + 1]) {
            const double a = alpha * (i - 1) / N, b = alpha * (i + 1) / N;
            const double t = minimize_golden(
                [&](double u) { return -eval_hi(u); }, a, b, gt);
            const double v = eval_hi(t);
            if (v > s2) {
                s2 = v;
                rep.argmax_radius = t;
            }
        }
    }

    rep.sigma1 = s1;
    rep.sigma2 = s2;
    rep.aniso = std::abs(std::log(s1)) + std::abs(std::log(s2));
    return rep;
}

} // namespace

anisometry_report azimuthal_map::anisometry(double rel_tol) const {
    return sv_extremes([this](double t) { return singular_values(t); },
                       initial_stretch(), rho_, alpha_, rel_tol);
}

anisometry_report profile_anisometry(
    const std::function<double(double)>& R,
    const std::function<double(double)>& Rprime, double initial_stretch,
    double rho, double kappa, int /*n*/, double alpha, double rel_tol) {
    auto sv = [&](double t) -> std::pair<double, double> {
        const double r = R(t);
        return {Rprime(t), sin_k(kappa, r) / sin_k(rho, t)};
    };
    return sv_extremes(sv, initial_stretch, rho, alpha, rel_tol);
}

std::vector<grid_row> azimuthal_map::project_grid(int resolution) const {
    if (resolution < 2)
        throw invalid_argument("project_grid: requires resolution >= 2");
    const double exit = chart_exit_radius();
    std::vector<grid_row> rows;
    rows.reserve(static_cast<size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i) {
        const double t = alpha_ * i / (resolution - 1);
        if (t >= exit) break;
        const double R = distance(t);
        const auto [radial, tangential] = singular_values(t);
        for (int j = 0; j < resolution; ++j)
            rows.push_back({t, j, R, radial, tangential});
    }
    return rows;
}

} // namespace curvmap
