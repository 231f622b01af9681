#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "core/ellipsoid.hpp"
#include "core/model_space.hpp"
#include "core/numerics.hpp"

using namespace curvmap;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("sin_k branches by curvature sign") {
    CHECK(sin_k(0.0, 1.7) == 1.7);
    CHECK(std::abs(sin_k(1.0, 0.5 * pi) - 1.0) < 1e-15);

    // 15-term Taylor sum of sinh as an independent oracle.
    double series = 0.0, term = 1.0;
    for (int k = 0; k < 15; ++k) {
        series += term;
        term /= (2.0 * k + 2.0) * (2.0 * k + 3.0);
    }
    CHECK(std::abs(sin_k(-1.0, 1.0) - series) < 1e-15);
}

TEST_CASE("cos_k, tan_k, arctan_k satisfy the defining relations") {
    for (double t : {0.1, 0.7, 2.0}) CHECK(cos_k(0.0, t) == 1.0);

    for (double kappa : {-1.5, -0.2, 0.0, 0.4, 2.0})
        for (double t : {0.05, 0.3, 0.8}) {
            const double roundtrip = arctan_k(kappa, tan_k(kappa, t));
            CHECK(std::abs(roundtrip - t) < 1e-13);
        }

    CHECK(std::abs(tan_k(-1.0, 0.5) - std::tanh(0.5)) < 1e-15);
    CHECK(std::abs(tan_k(-1.0, 0.5) -
                   sin_k(-1.0, 0.5) / cos_k(-1.0, 0.5)) < 1e-15);
}

TEST_CASE("tan_k and arctan_k refuse their poles") {
    CHECK_THROWS_AS(tan_k(1.0, 0.5 * pi), domain_error);
    CHECK_THROWS_AS(arctan_k(-1.0, 1.0), domain_error);
    CHECK_THROWS_AS(arctan_k(-4.0, 0.7), domain_error);
}

TEST_CASE("g_k agrees with the composed form") {
    for (double x : {0.0, 0.3, 1.9}) CHECK(g_k(0.0, x) == 2.0 * x);
    CHECK(g_k(1.0, 1.0) == 1.0);

    uint64_t state = 12345;
    for (int i = 0; i < 200; ++i) {
        const double kappa = -2.0 + 4.0 * u01(state);
        const double cap = kappa < 0.0 ? 0.99 / std::sqrt(-kappa) : 3.0;
        const double x = cap * u01(state);
        CHECK(std::abs(g_k(kappa, x) -
                       sin_k(kappa, 2.0 * arctan_k(kappa, x))) < 1e-12);
    }

    CHECK_THROWS_AS(g_k(-1.0, 1.0), domain_error);
}

TEST_CASE("unit sphere areas match the closed form") {
    CHECK(std::abs(unit_sphere_area(2) - 2.0 * pi) < 1e-14);
    CHECK(std::abs(unit_sphere_area(3) - 4.0 * pi) < 1e-14);
    CHECK(std::abs(unit_sphere_area(4) - 2.0 * pi * pi) < 1e-14);
    CHECK_THROWS_AS(unit_sphere_area(1), invalid_argument);
}

TEST_CASE("sphere areas across curvature signs") {
    CHECK(std::abs(model_space(3, 0.0).sphere_area(2.0) - 16.0 * pi) <
          1e-12);
    CHECK(std::abs(model_space(2, 1.0).sphere_area(0.5 * pi) - 2.0 * pi) <
          1e-13);
    const double sh = std::sinh(1.0);
    CHECK(std::abs(model_space(3, -1.0).sphere_area(1.0) -
                   4.0 * pi * sh * sh) < 1e-12);
    CHECK_THROWS_AS(model_space(2, 1.0).sphere_area(3.2), domain_error);
}

TEST_CASE("ball volumes: flat closed form and the full sphere") {
    for (int n : {2, 3, 4, 5})
        for (double t : {0.4, 1.1}) {
            const double v = model_space(n, 0.0).ball_volume(t);
            const double closed = unit_sphere_area(n) * std::pow(t, n) / n;
            CHECK(std::abs(v - closed) < 1e-12 * closed);
        }
    CHECK(std::abs(model_space(2, 1.0).ball_volume(pi) - 4.0 * pi) < 1e-12);
}

TEST_CASE("ball volume inverse round-trips") {
    for (double kappa : {-2.0, -1.0, 0.0, 0.5, 1.0})
        for (int n : {2, 3, 4})
            for (double frac : {0.2, 0.5, 0.9}) {
                const model_space space(n, kappa);
                const double cap =
                    kappa > 0.0 ? 0.999 * pi / std::sqrt(kappa) : 3.0;
                const double t = frac * cap;
                const double v = space.ball_volume(t);
                CHECK(std::abs(space.ball_volume_inverse(v) - t) <
                      1e-10 * std::max(1.0, t));
            }
    CHECK_THROWS_AS(model_space(2, 0.0).ball_volume_inverse(-1.0),
                    range_error);
    CHECK_THROWS_AS(model_space(2, 1.0).ball_volume_inverse(13.0),
                    range_error);
}

TEST_CASE("ball volume grows strictly with the radius") {
    for (double kappa : {-1.0, 0.0, 1.0}) {
        const model_space space(3, kappa);
        const double cap = kappa > 0.0 ? pi / std::sqrt(kappa) : 3.0;
        double prev = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const double v = space.ball_volume(0.999 * cap * i / 40);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("full space volume and the curvature scaling law") {
    CHECK(std::abs(model_space(2, 1.0).full_space_volume() - 4.0 * pi) <
          1e-12);
    CHECK(std::abs(model_space(3, 1.0).full_space_volume() - 2.0 * pi * pi) <
          1e-11);
    CHECK(std::abs(model_space(2, 4.0).full_space_volume() - pi) < 1e-13);
    CHECK_THROWS_AS(model_space(2, 0.0).full_space_volume(), domain_error);
    CHECK_THROWS_AS(model_space(2, -1.0).full_space_volume(), domain_error);
}

TEST_CASE("isoperimetric profile: flat closed form and defining identity") {
    for (int n : {2, 3, 4})
        for (double v : {0.3, 2.0, 11.0}) {
            const double profile =
                model_space(n, 0.0).isoperimetric_profile(v);
            const double closed = std::pow(n, (n - 1.0) / n) *
                                  std::pow(unit_sphere_area(n), 1.0 / n) *
                                  std::pow(v, (n - 1.0) / n);
            CHECK(std::abs(profile - closed) < 1e-10 * closed);
        }

    for (double kappa : {-1.5, -0.5, 0.0, 0.7, 1.0})
        for (int n : {2, 3}) {
            const model_space space(n, kappa);
            const double cap =
                kappa > 0.0 ? 0.5 * pi / std::sqrt(kappa) : 2.5;
            for (double frac : {0.3, 0.6, 0.95}) {
                const double t = frac * cap;
                const double lhs =
                    space.isoperimetric_profile(space.ball_volume(t));
                CHECK(std::abs(lhs - space.sphere_area(t)) <
                      1e-9 * std::max(1.0, space.sphere_area(t)));
            }
        }
}

TEST_CASE("hemisphere is the isoperimetric endpoint for positive curvature") {
    const model_space sphere(2, 1.0);
    CHECK(std::abs(sphere.isoperimetric_profile(2.0 * pi) - 2.0 * pi) <
          1e-10);
    CHECK_THROWS_AS(sphere.isoperimetric_profile(2.5 * pi), range_error);
    CHECK_THROWS_AS(sphere.isoperimetric_profile(-0.1), range_error);
}

TEST_CASE("isoperimetric profile is concave and decreasing in curvature") {
    uint64_t state = 99;
    for (double kappa : {-1.0, 0.0, 1.0}) {
        const model_space space(3, kappa);
        const double vmax = kappa > 0.0
                                ? 0.5 * space.full_space_volume()
                                : space.ball_volume(2.0);
        for (int i = 0; i < 50; ++i) {
            double a = vmax * u01(state), b = vmax * u01(state);
            const double mid = space.isoperimetric_profile(0.5 * (a + b));
            const double chord =
                0.5 * (space.isoperimetric_profile(a) +
                       space.isoperimetric_profile(b));
            CHECK(mid >= chord - 1e-9 * std::max(1.0, chord));
        }
    }

    for (double v : {0.5, 2.0, 5.0}) {
        double prev = infinity;
        for (double kappa : {-2.0, -1.0, 0.0, 0.5, 1.0}) {
            const double profile =
                model_space(3, kappa).isoperimetric_profile(v);
            CHECK(profile <= prev + 1e-11 * prev);
            prev = profile;
        }
    }
}

TEST_CASE("scalar functions glue smoothly across zero curvature") {
    for (double t : {0.2, 1.0, 2.4})
        for (double kappa : {-1e-8, 1e-8}) {
            CHECK(std::abs(sin_k(kappa, t) - t) < 1e-6);
            CHECK(std::abs(cos_k(kappa, t) - 1.0) < 1e-6);
            CHECK(std::abs(tan_k(kappa, t) - t) < 1e-6);
            CHECK(std::abs(arctan_k(kappa, t) - t) < 1e-6);
        }
}

TEST_CASE("derivative identities hold numerically") {
    const double h = 1e-5;
    for (double kappa : {-1.5, -0.3, 0.0, 0.6, 1.8})
        for (double t : {0.2, 0.7, 1.2}) {
            const double ds =
                (sin_k(kappa, t + h) - sin_k(kappa, t - h)) / (2.0 * h);
            CHECK(std::abs(ds - cos_k(kappa, t)) <
                  1e-6 * std::max(1.0, std::abs(cos_k(kappa, t))));

            if (kappa > 0.0 && t > 0.45 * pi / std::sqrt(kappa)) continue;
            const double dt =
                (tan_k(kappa, t + h) - tan_k(kappa, t - h)) / (2.0 * h);
            const double tk = tan_k(kappa, t);
            CHECK(std::abs(dt - (1.0 + kappa * tk * tk)) <
                  1e-6 * std::max(1.0, std::abs(dt)));

            const double x = 0.5 * t;
            if (kappa < 0.0 && x * std::sqrt(-kappa) >= 0.95) continue;
            const double da =
                (arctan_k(kappa, x + h) - arctan_k(kappa, x - h)) /
                (2.0 * h);
            CHECK(std::abs(da - 1.0 / (1.0 + kappa * x * x)) < 1e-6);
        }
}

TEST_CASE("sphere area is the derivative of ball volume") {
    for (double kappa : {-1.0, 0.0, 1.0})
        for (int n : {2, 3, 4}) {
            const model_space space(n, kappa);
            const double t = kappa > 0.0 ? 1.2 : 1.7;
            const double dv = derivative_fd(
                [&](double s) { return space.ball_volume(s); }, t, 1e-3);
            CHECK(std::abs(dv - space.sphere_area(t)) <
                  1e-7 * std::max(1.0, space.sphere_area(t)));
        }
}

TEST_CASE("series coefficients match the expansions") {
    for (double kappa : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
        const model_space space(3, kappa);
        const std::vector<double> s =
            taylor_coeffs(space, series_kind::sin_series);
        REQUIRE(s.size() >= 3);
        CHECK(s[0] == 1.0);
        CHECK(std::abs(s[1] - (-kappa / 6.0)) < 1e-15);
        CHECK(std::abs(s[2] - kappa * kappa / 120.0) < 1e-15);

        const std::vector<double> c =
            taylor_coeffs(space, series_kind::cos_series);
        CHECK(std::abs(c[1] - (-kappa / 2.0)) < 1e-15);
    }

    for (int n : {2, 3, 5}) {
        const model_space space(n, 0.8);
        const std::vector<double> v =
            taylor_coeffs(space, series_kind::ball_volume_series);
        REQUIRE(v.size() >= 2);
        CHECK(v[0] == 1.0);
        const double expected = -n * (n - 1.0) * 0.8 / (6.0 * (n + 2.0));
        CHECK(std::abs(v[1] - expected) < 1e-15);
    }
}

TEST_CASE("volume series coefficient agrees with a numeric limit") {
    // (V(t) n / (omega t^n) - 1) / t^2 tends to the quadratic coefficient.
    for (double kappa : {-1.0, 1.0})
        for (int n : {2, 3, 4}) {
            const model_space space(n, kappa);
            auto f = [&](double t) {
                const double lead = unit_sphere_area(n) * std::pow(t, n) / n;
                return (space.ball_volume(t) / lead - 1.0) / (t * t);
            };
            const double limit = richardson_h2_2(f, 1e-2);
            const double expected =
                -n * (n - 1.0) * kappa / (6.0 * (n + 2.0));
            CHECK(std::abs(limit - expected) <
                  1e-4 * std::max(1e-3, std::abs(expected)));
        }
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(model_space(1, 0.0), invalid_argument);
    CHECK_THROWS_AS(model_space(3, infinity), invalid_argument);
    CHECK(model_space(2, 1.0).conjugate_radius() == pi);
    CHECK(model_space(2, 0.0).conjugate_radius() == infinity);
    CHECK(model_space(2, -1.0).conjugate_radius() == infinity);
}
