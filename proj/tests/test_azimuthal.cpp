#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <utility>

#include "core/azimuthal.hpp"
#include "core/bounds.hpp"
#include "core/model_space.hpp"
#include "core/numerics.hpp"

using namespace curvmap;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("equidistant profile is the identity in the radius") {
    const azimuthal_map map = azimuthal_map::equidistant(1.0, 0.0, 3, 1.4);
    for (double t : {0.0, 0.3, 0.9, 1.4}) {
        CHECK(map.distance(t) == t);
        CHECK(map.derivative(t) == 1.0);
    }
}

TEST_CASE("equidistant between equal curvatures is an isometry") {
    const azimuthal_map map = azimuthal_map::equidistant(-1.0, -1.0, 3, 2.0);
    const anisometry_report rep = map.anisometry();
    CHECK(std::abs(rep.sigma1 - 1.0) < 1e-12);
    CHECK(std::abs(rep.sigma2 - 1.0) < 1e-12);
    CHECK(rep.aniso < 1e-12);
}

TEST_CASE("conformal profile degenerates to a linear map in flat space") {
    const azimuthal_map map = azimuthal_map::conformal(0.0, 0.0, 2, 2.0, 0.7);
    for (double t : {0.1, 1.0, 2.0})
        CHECK(std::abs(map.distance(t) - 0.7 * t) < 1e-15);
}

TEST_CASE("conformal closed form matches the defining flow") {
    const double rho = 1.0, kappa = -1.0, sigma = 0.8, alpha = 0.5;
    const azimuthal_map map =
        azimuthal_map::conformal(rho, kappa, 2, alpha, sigma);

    const double eps = 1e-6 * alpha;
    const double seed = sigma * eps +
                        sigma * (rho - kappa * sigma * sigma) / 12.0 *
                            eps * eps * eps;
    const ode_path path = solve_ode(
        [&](double t, double y) { return sin_k(kappa, y) / sin_k(rho, t); },
        eps, seed, alpha, {1e-12, 0.0, 400});
    CHECK(std::abs(path.end_value() - map.distance(alpha)) < 1e-8);
}

TEST_CASE("conformal maps stretch equally in every direction") {
    for (auto [rho, kappa] : {std::pair{1.0, 0.0}, std::pair{1.0, -1.0},
                              std::pair{0.0, -1.0}, std::pair{2.0, 0.5}}) {
        const double cap = rho > 0.0 ? 0.9 * pi / std::sqrt(rho) : 2.0;
        const azimuthal_map map =
            azimuthal_map::conformal(rho, kappa, 3, cap, 0.9);
        const double reach = std::min(cap, 0.95 * map.chart_exit_radius());
        for (int i = 1; i <= 16; ++i) {
            const auto [radial, tangential] =
                map.singular_values(reach * i / 16);
            CHECK(std::abs(radial - tangential) <
                  1e-10 * std::max(1.0, tangential));
        }
    }
}

TEST_CASE("volume preservation holds pointwise and in the profile") {
    for (int n : {2, 3, 4}) {
        const azimuthal_map map =
            azimuthal_map::volume_preserving(1.0, -0.5, n, 1.9);
        const model_space source(n, 1.0);
        for (int i = 1; i <= 12; ++i) {
            const double t = 1.9 * i / 12;
            CHECK(std::abs(map.jacobian(t) - 1.0) < 1e-12);
            CHECK(std::abs(map.image_ball_volume(t) -
                           source.ball_volume(t)) <
                  1e-9 * std::max(1.0, source.ball_volume(t)));
        }
    }
}

TEST_CASE("volume preserving radial stretch matches a finite difference") {
    const azimuthal_map map =
        azimuthal_map::volume_preserving(0.5, -1.0, 3, 2.0);
    for (double t : {0.4, 1.0, 1.7}) {
        const double fd = derivative_fd(
            [&](double s) { return map.distance(s); }, t, 1e-3);
        CHECK(std::abs(fd - map.derivative(t)) < 1e-9);
    }
}

TEST_CASE("jacobians of the elementary families") {
    const azimuthal_map eq = azimuthal_map::equidistant(1.0, 0.0, 2, 1.5);
    for (double t : {0.2, 0.8, 1.5})
        CHECK(std::abs(eq.jacobian(t) - t / std::sin(t)) < 1e-13);

    const azimuthal_map lin =
        azimuthal_map::contracting(0.0, 0.0, 4, 1.0, 0.6);
    for (double t : {0.3, 1.0})
        CHECK(std::abs(lin.jacobian(t) - std::pow(0.6, 4)) < 1e-15);
}

TEST_CASE("anisometry of the equidistant map into flat space") {
    const double alpha = 1.2;
    const azimuthal_map map = azimuthal_map::equidistant(1.0, 0.0, 2, alpha);
    const anisometry_report rep = map.anisometry();
    CHECK(std::abs(rep.sigma1 - 1.0) < 1e-10);
    CHECK(std::abs(rep.sigma2 - alpha / std::sin(alpha)) < 1e-10);
    CHECK(std::abs(rep.aniso - std::log(alpha / std::sin(alpha))) < 1e-10);
    CHECK(std::abs(rep.argmax_radius - alpha) < 1e-9);
}

TEST_CASE("anisometry of the boundary-matching contraction") {
    // sinh(sigma0 alpha) = alpha picks the contraction with sigma2 = 1.
    const double alpha = 1.0;
    const double sigma0 = find_root(
        [&](double s) { return std::sinh(s * alpha) - alpha; }, 1e-6, 1.0,
        {1e-14, 0.0, 300});
    const azimuthal_map map =
        azimuthal_map::contracting(0.0, -1.0, 2, alpha, sigma0);
    const anisometry_report rep = map.anisometry();
    CHECK(std::abs(rep.sigma2 - 1.0) < 1e-10);
    CHECK(std::abs(rep.sigma1 - sigma0) < 1e-10);
    CHECK(std::abs(rep.aniso + std::log(sigma0)) < 1e-10);
}

TEST_CASE("image volumes of the equidistant map") {
    const azimuthal_map map = azimuthal_map::equidistant(0.5, -1.0, 3, 1.5);
    const model_space target(3, -1.0);
    for (double t : {0.4, 1.5})
        CHECK(std::abs(map.image_ball_volume(t) - target.ball_volume(t)) <
              1e-12 * target.ball_volume(t));
}

TEST_CASE("conformal maps saturate the quasiconformal potential identity") {
    // F(V(alpha)) - F(V(beta)) = log(tan_rho(alpha/2) / tan_rho(beta/2))
    // along any conformal profile, with the Q = 1 potential.
    for (auto [rho, kappa] : {std::pair{1.0, -1.0}, std::pair{0.0, -0.5},
                              std::pair{1.5, 0.5}}) {
        const double alpha = rho > 0.0 ? 0.55 * pi / std::sqrt(rho) : 2.0;
        const double beta = 0.3 * alpha;
        const double x = tan_k(rho, 0.5 * alpha);
        const double sigma =
            kappa < 0.0 ? 0.8 / (std::sqrt(-kappa) * x) : 0.85;
        const azimuthal_map map =
            azimuthal_map::conformal(rho, kappa, 3, alpha, sigma);
        const double lhs =
            f_kappa_q(kappa, 3, 1.0, map.image_ball_volume(alpha)) -
            f_kappa_q(kappa, 3, 1.0, map.image_ball_volume(beta));
        const double rhs = std::log(tan_k(rho, 0.5 * alpha) /
                                    tan_k(rho, 0.5 * beta));
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("optimal quasiconformal profile: gluing and saturation") {
    const double rho = 1.0, kappa = 0.0, alpha = 2.8, Q = 2.0;
    const double beta = qc_beta(rho, kappa, alpha, Q, 1.0);
    REQUIRE(std::isfinite(beta));
    REQUIRE(beta > 0.0);
    REQUIRE(beta < alpha);
    const azimuthal_map map =
        azimuthal_map::qc_optimal(rho, kappa, 3, alpha, Q, 1.0, beta);

    // Continuous and C^1 at the kink.
    const double h = 3e-5;
    const double left = map.distance(beta - 1e-12);
    CHECK(std::abs(left - beta) < 1e-10);
    const double right_deriv =
        (-3.0 * map.distance(beta) + 4.0 * map.distance(beta + h) -
         map.distance(beta + 2.0 * h)) /
        (2.0 * h);
    CHECK(std::abs(right_deriv - 1.0) < 1e-8);

    // Second derivative jumps: linear part is flat, the continuation bends.
    const double h2 = 1e-4;
    const double right_curv =
        (map.distance(beta) - 2.0 * map.distance(beta + h2) +
         map.distance(beta + 2.0 * h2)) /
        (h2 * h2);
    CHECK(std::abs(right_curv) > 0.05);

    // Ratio at most Q everywhere, exactly Q past the kink.
    for (int i = 1; i <= 64; ++i) {
        const double t = alpha * i / 64;
        const auto [radial, tangential] = map.singular_values(t);
        const double ratio = std::max(radial / tangential,
                                      tangential / radial);
        CHECK(ratio <= Q * (1.0 + 1e-8));
        if (t > beta * (1.0 + 1e-9))
            CHECK(std::abs(tangential / radial - Q) < 1e-12);
    }
}

TEST_CASE("flat-target conformal profiles compose with homotheties") {
    const double rho = 1.0, alpha = 2.0, sigma = 0.7, lambda = 1.9;
    const azimuthal_map base =
        azimuthal_map::conformal(rho, 0.0, 2, alpha, sigma);
    const azimuthal_map scaled =
        azimuthal_map::conformal(rho, 0.0, 2, alpha, lambda * sigma);
    for (double t : {0.3, 1.1, 2.0})
        CHECK(std::abs(scaled.distance(t) - lambda * base.distance(t)) <
              1e-12 * std::max(1.0, scaled.distance(t)));
}

TEST_CASE("stretch extremes of optimal families sit on the boundary") {
    const azimuthal_map eq = azimuthal_map::equidistant(1.0, -1.0, 3, 1.3);
    CHECK(std::abs(eq.anisometry().argmax_radius - 1.3) < 1e-9);

    const azimuthal_map vp =
        azimuthal_map::volume_preserving(1.0, 0.0, 3, 1.3);
    const anisometry_report rep = vp.anisometry();
    CHECK(std::abs(rep.argmax_radius - 1.3) < 1e-9);
    CHECK(std::abs(rep.argmin_radius - 1.3) < 1e-9);
}

TEST_CASE("escape inside the ball is reported as unbounded anisometry") {
    const azimuthal_map map =
        azimuthal_map::conformal(-1.0, -1.0, 2, 3.0, 1.5);
    const double exit = map.chart_exit_radius();
    CHECK(std::abs(exit - 2.0 * std::atanh(1.0 / 1.5)) < 1e-12);

    const anisometry_report rep = map.anisometry();
    CHECK(rep.unbounded);
    CHECK(rep.sigma2 == infinity);
    CHECK(rep.aniso == infinity);
}

TEST_CASE("profile grids are monotone and family-consistent") {
    const azimuthal_map eq = azimuthal_map::equidistant(1.0, 0.5, 2, 1.0);
    for (const grid_row& row : eq.project_grid(9)) CHECK(row.R == row.t);

    const azimuthal_map vp =
        azimuthal_map::volume_preserving(1.0, -1.0, 3, 1.5);
    double prev_t = -1.0, prev_R = -1.0;
    for (const grid_row& row : vp.project_grid(9)) {
        if (row.u_index == 0) {
            CHECK(row.t > prev_t);
            CHECK(row.R > prev_R);
            prev_t = row.t;
            prev_R = row.R;
        }
        CHECK(std::abs(row.radial * std::pow(row.tangential, 2) - 1.0) <
              1e-12);
    }
    CHECK(vp.project_grid(9).size() == 81);
}

TEST_CASE("grids truncate at the chart exit") {
    const azimuthal_map map =
        azimuthal_map::conformal(-1.0, -1.0, 2, 3.0, 1.5);
    const double exit = map.chart_exit_radius();
    const auto grid = map.project_grid(33);
    CHECK(grid.size() < 33u * 33u);
    CHECK(!grid.empty());
    for (const grid_row& row : grid) CHECK(row.t < exit);
}

TEST_CASE("construction and evaluation reject invalid input") {
    CHECK_THROWS_AS(azimuthal_map::equidistant(1.0, 0.0, 1, 1.0),
                    invalid_argument);
    CHECK_THROWS_AS(azimuthal_map::equidistant(1.0, 0.0, 2, 3.2),
                    invalid_argument);
    CHECK_THROWS_AS(azimuthal_map::equidistant(1.0, 0.0, 2, -1.0),
                    invalid_argument);
    CHECK_THROWS_AS(azimuthal_map::contracting(1.0, 0.0, 2, 1.0, 0.0),
                    invalid_argument);
    CHECK_THROWS_AS(
        azimuthal_map::qc_optimal(1.0, 0.0, 2, 1.0, 0.5, 1.0, 0.5),
        invalid_argument);
    CHECK_THROWS_AS(
        azimuthal_map::qc_optimal(1.0, 0.0, 2, 1.0, 2.0, 1.0, 1.5),
        invalid_argument);

    const azimuthal_map map = azimuthal_map::equidistant(1.0, 0.0, 2, 1.0);
    CHECK_THROWS_AS(map.distance(1.1), domain_error);
    CHECK_THROWS_AS(map.singular_values(-0.1), domain_error);
}

TEST_CASE("free profile anisometry agrees with the map engine") {
    const double rho = 1.0, kappa = -1.0, alpha = 1.2;
    const azimuthal_map map =
        azimuthal_map::volume_preserving(rho, kappa, 3, alpha);
    const anisometry_report direct = map.anisometry();
    const anisometry_report via_profile = profile_anisometry(
        [&](double t) { return map.distance(t); },
        [&](double t) { return map.derivative(t); }, map.initial_stretch(),
        rho, kappa, 3, alpha);
    CHECK(std::abs(direct.sigma1 - via_profile.sigma1) < 1e-9);
    CHECK(std::abs(direct.sigma2 - via_profile.sigma2) < 1e-9);
}
