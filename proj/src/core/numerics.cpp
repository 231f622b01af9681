#include "numerics.hpp"

#include <algorithm>
#include <cmath>

namespace curvmap {

namespace {

// 15-point Kronrod extension of 7-point Gauss, positive abscissae.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct panel_estimate {
    double integral;
    double error;
};

panel_estimate gk15(const std::function<double(double)>& f, double a,
                    double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double v = f(c - h * xgk[i]) + f(c + h * xgk[i]);
        kron += wgk[i] * v;
        if (i % 2 == 1) gauss += wg[i / 2] * v;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 tolerance tol) {
    if (!(a <= b)) throw invalid_argument("integrate: requires a <= b");
    if (a == b) return 0.0;

    const panel_estimate whole = gk15(f, a, b);
    const double target =
        std::max({tol.abs, tol.rel * std::abs(whole.integral), 1e-305});
    if (whole.error <= target) return whole.integral;

    struct segment {
        double a, b;
        int depth;
    };
    std::vector<segment> stack{{a, b, 0}};
    const long max_panels = std::max(4096L, 64L * tol.max_iter);
    long panels = 0;
    double total = 0.0;

    while (!stack.empty()) {
        const segment s = stack.back();
        stack.pop_back();
        if (++panels > max_panels)
            throw convergence_error("integrate: panel budget exhausted");
        const panel_estimate e = gk15(f, s.a, s.b);
        const double budget = target * (s.b - s.a) / (b - a);
        if (e.error <= budget || s.depth >= 52) {
            total += e.integral;
            continue;
        }
        const double mid = 0.5 * (s.a + s.b);
        stack.push_back({mid, s.b, s.depth + 1});
        stack.push_back({s.a, mid, s.depth + 1});
    }
    return total;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 tolerance tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw invalid_argument("find_root: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    const int iters = std::max(tol.max_iter, 100);
    for (int it = 0; it < iters; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double xtol =
            std::max(tol.abs, tol.rel * std::max(1.0, std::abs(b)));
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
            0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) { // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else { // inverse quadratic
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > tol1)
            b += d;
        else
            b += (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (fb == 0.0) return b;
    }
    throw convergence_error("find_root: iteration budget exhausted");
}

double minimize_golden(const std::function<double(double)>& f, double lo,
                       double hi, tolerance tol) {
    if (!(lo < hi)) throw invalid_argument("minimize_golden: requires lo < hi");
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    const double xtol = std::max(
        {tol.abs, tol.rel * (std::abs(lo) + std::abs(hi)), 4e-16 * (hi - lo)});
    const int iters = std::max(tol.max_iter, 100);
    for (int it = 0; it < iters && (b - a) > xtol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

namespace {

double hermite(double t0, double y0, double yp0, double t1, double y1,
               double yp1, double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * yp0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * yp1;
}

} // namespace

double ode_path::operator()(double t) const {
    if (nodes.empty()) throw invalid_argument("ode_path: empty path");
    if (t <= nodes.front().t) return nodes.front().y;
    if (t >= nodes.back().t) return nodes.back().y;
    auto it = std::upper_bound(
        nodes.begin(), nodes.end(), t,
        [](double v, const node& n) { return v < n.t; });
    const node& n1 = *it;
    const node& n0 = *(it - 1);
    return hermite(n0.t, n0.y, n0.yp, n1.t, n1.y, n1.yp, t);
}

ode_path solve_ode(const std::function<double(double, double)>& f, double t0,
                   double y0, double t1, tolerance tol, double ceiling) {
    if (!(t0 < t1)) throw invalid_argument("solve_ode: requires t0 < t1");
    // Dormand-Prince 5(4) tableau.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                     a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                     e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640,
                     e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

    const double rtol = tol.rel > 0 ? tol.rel : 1e-12;
    const double atol = tol.abs > 0 ? tol.abs : 1e-14;
    const double span = t1 - t0;
    const double hmax = span / 16.0;
    const double hmin =
        64.0 * std::numeric_limits<double>::epsilon() *
        std::max({std::abs(t0), std::abs(t1), 1.0});
    const long max_steps = std::max(200000L, 2000L * tol.max_iter);

    ode_path path;
    double t = t0, y = y0;
    double k1 = f(t, y);
    path.nodes.push_back({t, y, k1});
    double h = std::min(hmax, span / 100.0);
    long steps = 0;

    while (t < t1) {
        if (++steps > max_steps)
            throw convergence_error("solve_ode: step budget exhausted");
        h = std::min(h, t1 - t);
        const double k2 = f(t + c2 * h, y + h * a21 * k1);
        const double k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const double k4 =
            f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(
            t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 =
            f(t + h,
              y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double ynew =
            y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        double k7 = std::numeric_limits<double>::quiet_NaN();
        double errnorm = infinity;
        if (std::isfinite(ynew)) {
            k7 = f(t + h, ynew);
            const double errterm =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double sc =
                atol + rtol * std::max(std::abs(y), std::abs(ynew));
            errnorm = std::abs(errterm) / sc;
        }

        if (errnorm <= 1.0) {
            if (std::abs(ynew) > ceiling) {
                // Escape: refine the ceiling crossing inside this step.
                const double target = ynew > 0 ? ceiling : -ceiling;
                double tc;
                if (std::isfinite(k7)) {
                    double s_lo = 0.0, s_hi = 1.0;
                    for (int i = 0; i < 80; ++i) {
                        const double sm = 0.5 * (s_lo + s_hi);
                        const double ym = hermite(t, y, k1, t + h, ynew, k7,
                                                  t + sm * h);
                        if (std::abs(ym) < std::abs(target))
                            s_lo = sm;
                        else
                            s_hi = sm;
                    }
                    tc = t + 0.5 * (s_lo + s_hi) * h;
                } else {
                    tc = t + h * (target - y) / (ynew - y);
                }
                path.nodes.push_back(
                    {tc, target, std::isfinite(k7) ? k7 : k1});
                path.blew_up = true;
                path.blowup_t = tc;
                return path;
            }
            t += h;
            y = ynew;
            k1 = k7; // first-same-as-last
            path.nodes.push_back({t, y, k1});
            const double factor =
                errnorm == 0.0
                    ? 5.0
                    : std::clamp(0.9 * std::pow(errnorm, -0.2), 0.2, 5.0);
            h = std::min(h * factor, hmax);
        } else {
            const double factor =
                std::isfinite(errnorm)
                    ? std::clamp(0.9 * std::pow(errnorm, -0.2), 0.1, 0.9)
                    : 0.25;
            h *= factor;
        }
        if (h < hmin) {
            // Escape faster than the step can resolve: past half the
            // ceiling, or once the slope dwarfs the state (exponential
            // growth saturates step control long before any ceiling), the
            // remaining distance to the asymptote is below resolution.
            if (std::abs(y) > 1e6 * (1.0 + std::abs(y0)) ||
                std::abs(y) > 0.5 * ceiling ||
                std::abs(k1) > 1e8 * (1.0 + std::abs(y))) {
                path.blew_up = true;
                path.blowup_t = t;
                return path;
            }
            throw convergence_error("solve_ode: step size underflow");
        }
    }
    return path;
}

double richardson_h2(const std::function<double(double)>& f, double h) {
    return (4.0 * f(0.5 * h) - f(h)) / 3.0;
}

double richardson_h2_2(const std::function<double(double)>& f, double h) {
    const double f0 = f(h), f1 = f(0.5 * h), f2 = f(0.25 * h);
    const double e1a = (4.0 * f1 - f0) / 3.0;
    const double e1b = (4.0 * f2 - f1) / 3.0;
    return (16.0 * e1b - e1a) / 15.0;
}

double derivative_fd(const std::function<double(double)>& f, double x,
                     double h) {
    auto central = [&](double hh) {
        return (f(x + hh) - f(x - hh)) / (2.0 * hh);
    };
    return richardson_h2_2(central, h);
}

} // namespace curvmap
