#pragma once

#include <vector>

#include "numerics.hpp"

namespace curvmap {

// Curvature-indexed trigonometry.  sin_k solves y'' + kappa*y = 0 with
// y(0) = 0, y'(0) = 1; the remaining functions are derived from it.  All four
// switch to truncated series when |kappa|*t^2 is tiny so the kappa -> 0 limit
// is seamless.
double sin_k(double kappa, double t);
double cos_k(double kappa, double t); // = sin_k'
double tan_k(double kappa, double t);
double arctan_k(double kappa, double x);

// Half-angle double formula sin_k(2*arctan_k(x)) in rational form
// 2x / (1 + kappa*x^2); total except at the pole of the denominator.
double g_k(double kappa, double x);

// Surface measure of the unit (n-1)-sphere.
double unit_sphere_area(int n);

// Simply connected model space of constant curvature kappa, dimension n >= 2.
class model_space {
  public:
    model_space(int n, double kappa);

    int dim() const { return n_; }
    double kappa() const { return kappa_; }

    // Distance to the conjugate locus of a point; +inf when kappa <= 0.
    double conjugate_radius() const;

    // Area of the geodesic sphere of radius t: omega_{n-1} * sin_k(t)^{n-1}.
    double sphere_area(double t) const;

    // Volume of the geodesic ball of radius t.  Closed forms cover kappa = 0
    // and n = 2, 3; other dimensions integrate sphere_area numerically.
    double ball_volume(double t) const;

    // Inverse of ball_volume, by safeguarded Newton on [0, conjugate_radius].
    double ball_volume_inverse(double v) const;

    // Total volume of the space; defined only for kappa > 0.
    double full_space_volume() const;

    // Isoperimetric profile v -> boundary area of the ball of volume v.
    // For kappa > 0 only the increasing branch (v up to half the total
    // volume) is served; beyond it the profile is refused.
    double isoperimetric_profile(double v) const;

  private:
    int n_;
    double kappa_;
};

enum class series_kind {
    sin_series,        // sin_k(t)/t in powers of t^2
    cos_series,        // cos_k(t) in powers of t^2
    tan_series,        // tan_k(t)/t in powers of t^2
    arctan_series,     // arctan_k(x)/x in powers of x^2
    sphere_area_series, // A(t) / (omega * t^{n-1}) in powers of t^2
    ball_volume_series, // V(t) / ((omega/n) * t^n) in powers of t^2
    iso_profile_series  // I(v) = c0*v^{(n-1)/n} + c1*v^{(n+1)/n} + ...
};

// Leading Taylor data of the named quantity for the given space.
std::vector<double> taylor_coeffs(const model_space& space, series_kind kind);

} // namespace curvmap
