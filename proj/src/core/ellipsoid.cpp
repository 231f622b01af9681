#include "ellipsoid.hpp"

#include <algorithm>
#include <cmath>

namespace curvmap {

quadratic_form::quadratic_form(int dim, const std::vector<double>& entries)
    : dim_(dim) {
    if (dim < 1) throw invalid_argument("quadratic_form: requires dim >= 1");
    if (entries.size() != static_cast<size_t>(dim) * dim)
        throw invalid_argument("quadratic_form: entry count mismatch");
    a_.resize(entries.size());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a_[i * dim + j] =
                0.5 * (entries[i * dim + j] + entries[j * dim + i]);
}

std::vector<double> quadratic_form::eigenvalues() const {
    const int n = dim_;
    std::vector<double> a = a_;
    auto at = [&](int i, int j) -> double& { return a[i * n + j]; };

    // Cyclic Jacobi; plenty for symmetric forms of this size.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < n; ++i) {
            diag += at(i, i) * at(i, i);
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        }
        if (off <= 1e-28 * std::max(diag, 1e-300)) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::pair<double, double> quadratic_form::extremes() const {
    const auto ev = eigenvalues();
    if (!(ev.front() > 0.0))
        throw range_error("quadratic_form: not positive definite");
    return {ev.front(), ev.back()};
}

double quadratic_form::determinant() const {
    double det = 1.0;
    for (double ev : eigenvalues()) det *= ev;
    return det;
}

quadratic_form quadratic_form::restrict_to_hyperplane(
    const std::vector<double>& normal) const {
    const int n = dim_;
    if (normal.size() != static_cast<size_t>(n))
        throw invalid_argument("restrict_to_hyperplane: size mismatch");
    double norm2 = 0.0;
    for (double v : normal) norm2 += v * v;
    if (!(norm2 > 0.0))
        throw invalid_argument("restrict_to_hyperplane: zero normal");
    const double inv = 1.0 / std::sqrt(norm2);

    // Orthonormal basis of the hyperplane: seed with the standard basis
    // minus the axis most parallel to the normal, then Gram-Schmidt.
    std::vector<std::vector<double>> basis;
    basis.reserve(n - 1);
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = normal[i] * inv;
    int skip = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(u[i]) > std::abs(u[skip])) skip = i;
    for (int axis = 0; axis < n; ++axis) {
        if (axis == skip) continue;
        std::vector<double> v(n, 0.0);
        v[axis] = 1.0;
        double du = u[axis];
        for (int i = 0; i < n; ++i) v[i] -= du * u[i];
        for (const auto& b : basis) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) d += v[i] * b[i];
            for (int i = 0; i < n; ++i) v[i] -= d * b[i];
        }
        double len2 = 0.0;
        for (double x : v) len2 += x * x;
        const double len = std::sqrt(len2);
        if (!(len > 1e-12))
            throw invalid_argument(
                "restrict_to_hyperplane: degenerate basis seed");
        for (double& x : v) x /= len;
        basis.push_back(std::move(v));
    }

    const int m = n - 1;
    std::vector<double> out(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        std::vector<double> qb(n, 0.0); // q * basis[i]
        for (int r = 0; r < n; ++r) {
            double s = 0.0;
            for (int c = 0; c < n; ++c) s += at(r, c) * basis[i][c];
            qb[r] = s;
        }
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int r = 0; r < n; ++r) s += basis[j][r] * qb[r];
            out[i * m + j] = s;
        }
    }
    return quadratic_form(m, out);
}

lemma_report ellipsoid_lemma_check(const quadratic_form& q,
                                   const std::vector<double>& normal,
                                   double Q) {
    const int n = q.dim();
    if (n < 2)
        throw invalid_argument("ellipsoid_lemma_check: requires dim >= 2");
    const auto [s1, s2] = q.extremes();
    if (!(Q >= 1.0))
        throw invalid_argument("ellipsoid_lemma_check: requires Q >= 1");
    if (s2 > Q * s1 * (1.0 + 1e-10))
        throw invalid_argument(
            "ellipsoid_lemma_check: stretch ratio exceeds Q");

    const quadratic_form q0 = q.restrict_to_hyperplane(normal);
    lemma_report rep;
    rep.det_full = q.determinant();
    rep.det_restricted = q0.determinant();
    rep.sigma1 = s1;
    rep.sigma2 = s2;
    rep.slack_sigma1 = rep.det_full - rep.det_restricted * s1;
    rep.slack_power =
        rep.det_full -
        std::pow(rep.det_restricted, double(n) / (n - 1)) / Q;
    return rep;
}

double u01(uint64_t& state) {
    // splitmix64 step; top 53 bits make the mantissa.
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return double(z >> 11) * 0x1.0p-53;
}

quadratic_form random_spd(int dim, double lambda, double Q, uint64_t& state) {
    if (dim < 2) throw invalid_argument("random_spd: requires dim >= 2");
    if (!(lambda > 0.0 && Q >= 1.0))
        throw invalid_argument("random_spd: requires lambda > 0, Q >= 1");

    // Spectrum inside [lambda, Q*lambda], endpoints always represented so
    // the stretch ratio is exactly Q.
    std::vector<double> spec(dim);
    spec[0] = lambda;
    spec[1] = Q * lambda;
    for (int i = 2; i < dim; ++i)
        spec[i] = lambda * (1.0 + (Q - 1.0) * u01(state));

    // Random rotation from composed Givens rotations.
    std::vector<double> rot(static_cast<size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) rot[i * dim + i] = 1.0;
    for (int p = 0; p < dim - 1; ++p) {
        for (int q = p + 1; q < dim; ++q) {
            const double ang = 2.0 * 3.141592653589793 * u01(state);
            const double c = std::cos(ang), s = std::sin(ang);
            for (int k = 0; k < dim; ++k) {
                const double rp = rot[p * dim + k], rq = rot[q * dim + k];
                rot[p * dim + k] = c * rp - s * rq;
                rot[q * dim + k] = s * rp + c * rq;
            }
        }
    }

    std::vector<double> m(static_cast<size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k)
                s += rot[k * dim + i] * spec[k] * rot[k * dim + j];
            m[i * dim + j] = s;
        }
    return quadratic_form(dim, m);
}

} // namespace curvmap
