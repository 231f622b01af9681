#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace curvmap {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct tolerance {
    double rel = 1e-12;
    double abs = 0.0;
    int max_iter = 200;
};

// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [a, b].
// The per-panel error estimate |K15 - G7| is conservative for smooth
// integrands, so the reported value is usually well inside the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 tolerance tol = {});

// Brent root finding on a bracketing interval [lo, hi] with f(lo)*f(hi) <= 0.
// An affine f is solved exactly by the first secant step.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 tolerance tol = {});

// Golden-section minimization of a unimodal f on [lo, hi]; returns the argmin.
double minimize_golden(const std::function<double(double)>& f, double lo,
                       double hi, tolerance tol = {});

// Solution path of a scalar ODE y' = f(t, y) produced by an adaptive
// Dormand-Prince 5(4) integrator.  Accepted steps are recorded and evaluation
// between nodes uses cubic Hermite interpolation, so the path doubles as a
// dense-output object.  The maximum step is capped at (t1 - t0)/16 to keep the
// interpolant's error far below the step-control tolerance.
struct ode_path {
    struct node {
        double t, y, yp;
    };
    std::vector<node> nodes;
    bool blew_up = false;
    double blowup_t = infinity; // escape time when blew_up is set

    double operator()(double t) const;
    double end_value() const { return nodes.back().y; }
    double end_time() const { return nodes.back().t; }
};

// Integrate y' = f(t, y) from (t0, y0) to t1.  Integration stops early when
// |y| exceeds ceiling or the step size underflows; the escape time is then
// refined inside the last step and reported via ode_path::blowup_t.
ode_path solve_ode(const std::function<double(double, double)>& f, double t0,
                   double y0, double t1, tolerance tol = {},
                   double ceiling = 1e100);

// One Richardson extrapolation level for f(h) = L + c*h^2 + O(h^4).
double richardson_h2(const std::function<double(double)>& f, double h);

// Two levels, using f at h, h/2, h/4; error O(h^6) for even expansions.
double richardson_h2_2(const std::function<double(double)>& f, double h);

// Derivative by Richardson-extrapolated central differences, accurate to
// roughly 1e-11 for well-scaled f; used where an independent derivative
// check is needed.
double derivative_fd(const std::function<double(double)>& f, double x,
                     double h = 1e-3);

} // namespace curvmap
