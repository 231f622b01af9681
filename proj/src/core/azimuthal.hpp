#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "model_space.hpp"

namespace curvmap {

enum class map_family {
    equidistant,
    contracting,
    conformal,
    volume_preserving,
    qc_optimal
};

struct anisometry_report {
    double sigma1 = 0.0;        // least singular value over the ball
    double sigma2 = 0.0;        // greatest singular value over the ball
    double aniso = 0.0;         // |log sigma1| + |log sigma2|
    double argmin_radius = 0.0; // source radius attaining sigma1
    double argmax_radius = 0.0; // source radius attaining sigma2
    bool unbounded = false;     // map leaves the target chart before alpha
    bool alpha_exceeds_convexity = false; // ball not convex in the source
};

struct grid_row {
    double t;
    int u_index;
    double R;
    double radial;
    double tangential;
};

// Rotation-invariant map between balls of model spaces, determined by a
// radial profile R(t) on [0, alpha].  The profile's derivative R'(t) is the
// radial stretch; sin_k(kappa, R(t)) / sin_k(rho, t) is the tangential one,
// with multiplicity n-1.
class azimuthal_map {
  public:
    static azimuthal_map equidistant(double rho, double kappa, int n,
                                     double alpha);
    static azimuthal_map contracting(double rho, double kappa, int n,
                                     double alpha, double sigma);
    // R(t) = 2*arctan_k(kappa, sigma * tan_k(rho, t/2)); solves
    // R' = sin_k(kappa, R) / sin_k(rho, t) with R'(0) = sigma.
    static azimuthal_map conformal(double rho, double kappa, int n,
                                   double alpha, double sigma);
    // R(t) matches ball volumes: V_kappa(R(t)) = V_rho(t).
    static azimuthal_map volume_preserving(double rho, double kappa, int n,
                                           double alpha);
    // Linear stretch sigma up to beta, then the profile whose tangential to
    // radial ratio stays exactly Q.  C^1 at beta when beta satisfies
    // sin_k(kappa, sigma*beta) = Q * sigma * sin_k(rho, beta).
    static azimuthal_map qc_optimal(double rho, double kappa, int n,
                                    double alpha, double Q, double sigma,
                                    double beta);

    double rho() const { return rho_; }
    double kappa() const { return kappa_; }
    int dim() const { return n_; }
    double alpha() const { return alpha_; }
    map_family family() const { return family_; }
    double sigma() const { return sigma_; }
    double Q() const { return Q_; }
    double beta() const { return beta_; }

    double distance(double t) const;   // R(t)
    double derivative(double t) const; // R'(t)
    double initial_stretch() const;    // R'(0), the t -> 0 singular value

    // (radial, tangential) stretches at source radius t; t = 0 returns the
    // common limit (R'(0), R'(0)).
    std::pair<double, double> singular_values(double t) const;

    // Volume distortion factor radial * tangential^{n-1}.
    double jacobian(double t) const;

    // V_kappa(R(t)), the volume of the image ball.
    double image_ball_volume(double t) const;

    // Least t at which R(t) reaches the edge of the target chart (the
    // conjugate radius for kappa > 0, infinity otherwise); +inf when the
    // image stays inside through alpha.
    double chart_exit_radius() const;

    // Extremes of the singular values over the whole ball, by dense sampling
    // plus local golden-section refinement.
    anisometry_report anisometry(double rel_tol = 1e-10) const;

    // Sample rows (t, u_index, R, radial, tangential) on a resolution x
    // resolution grid, t-major; rows past chart_exit_radius are dropped.
    std::vector<grid_row> project_grid(int resolution) const;

  private:
    azimuthal_map(double rho, double kappa, int n, double alpha,
                  map_family family, double sigma, double Q, double beta);

    double rho_, kappa_;
    int n_;
    double alpha_;
    map_family family_;
    double sigma_, Q_, beta_;
    double qc_coeff_ = 0.0; // tan_k(kappa, sigma*beta/2) / tan_k(rho, beta/2)^{1/Q}
};

// Anisometry of an arbitrary C^1 profile R on [0, alpha] with R(0) = 0.
// initial_stretch supplies the t -> 0 limit of both stretches.  Evaluation
// failures and non-finite values before alpha are reported as an unbounded
// map.  Shared by azimuthal_map::anisometry and by profile-perturbation
// tests.
anisometry_report profile_anisometry(
    const std::function<double(double)>& R,
    const std::function<double(double)>& Rprime, double initial_stretch,
    double rho, double kappa, int n, double alpha, double rel_tol = 1e-10);

} // namespace curvmap
