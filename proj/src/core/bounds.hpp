#pragma once

#include "azimuthal.hpp"

namespace curvmap {

enum class bound_class {
    general,
    volume_preserving,
    conformal,
    quasiconformal
};

// Curvature pair (rho source, kappa target, kappa <= rho), dimension, ball
// radius, and the map class the bound quantifies over.  inj_m / inj_n are
// injectivity radii of the ambient source / target when the model pair
// stands in for general manifolds; they only affect validity radii.
struct bound_query {
    double rho;
    double kappa;
    int n;
    double alpha;
    bound_class cls = bound_class::general;
    double Q = 1.0;
    double inj_m = infinity;
    double inj_n = infinity;
};

struct bound_result {
    double value;              // sharp lower bound for the anisometry
    azimuthal_map optimal_map; // a map attaining it
    double sigma1, sigma2;     // extreme stretches of that map
    double validity_radius;    // largest alpha the bound is certified for
    bool validity_ok;          // alpha <= validity_radius
};

// Contraction factor sigma0 in (0, 1] solving
// sin_k(kappa, sigma0 * alpha) = sin_k(rho, alpha); requires kappa <= rho.
double sigma0_contraction(double rho, double kappa, double alpha);

// Lower bound over all maps of the ball.  Optimal profile: equidistant when
// kappa >= 0, contracting(sigma0) when kappa < 0.
bound_result general_bound(const bound_query& q);

// Lower bound over volume-preserving maps; optimal profile matches ball
// volumes radius by radius.
bound_result vp_bound(const bound_query& q);

// Lower bound over conformal maps; the optimal stretch sigma* is 1 for
// kappa >= 0 and the unique sub-unit solution of
// g_k(kappa, sigma * tan_k(rho, alpha/2)) = sin_k(rho, alpha) otherwise.
bound_result conformal_bound(const bound_query& q);

// Lower bound over Q-quasiconformal maps.  When the quasiconformality
// window is inactive (the optimal linear profile already satisfies it) this
// degenerates to the general bound's profile.
bound_result qc_bound(const bound_query& q);

bound_result bound_for(const bound_query& q); // dispatch on q.cls

// Largest certified radius for the general bound: caps alpha by source
// injectivity/conjugate data and by the first radius where the comparison
// image alpha*sin_k(kappa,alpha)/sin_k(rho,alpha) (resp.
// alpha^2/sin_k^{-1}(sin_k(rho,alpha)) for kappa <= 0) hits the target cap.
double radius_limit_a1(const bound_query& q);

// Largest certified radius for the conformal bound; inj_m when kappa <= 0.
double radius_limit_a3(const bound_query& q);

// Largest certified radius for the quasiconformal bound; inj_m when
// kappa <= 0, else the crossing of
// (|X_kappa| / (2 V_rho(alpha)))^{1/n} >= exp(qc bound at alpha).
double radius_limit_a4(const bound_query& q);

// F with F(V_kappa(t)) = Q * log tan_k(kappa, t/2); the potential whose
// growth along image volumes controls quasiconformal profiles.
double f_kappa_q(double kappa, int n, double Q, double v);

// Lower bound for the largest stretch of a Q-quasiconformal map that sends
// the beta-sphere to radius r_beta; +inf when the comparison argument sits
// past the target pole (kappa < 0).
double qc_sigma2_lower(double rho, double kappa, int n, double Q,
                       double alpha, double beta, double r_beta);

// Leading small-alpha coefficient: bound ~ coeff * alpha^2.
double small_alpha_coefficient(bound_class cls, double rho, double kappa,
                               int n);

struct blowup_outcome {
    bool blows_up;
    double radius; // image radius when bounded, escape radius otherwise
};

// Conformal(sigma0) profile between unit-curvature hyperbolic spaces:
// bounded image radius 2*atanh(sigma0*tanh(alpha/2)) for sigma0 <= 1,
// escape at 2*atanh(1/sigma0) for sigma0 > 1.
blowup_outcome ahlfors_blowup(double sigma0, double alpha);

// sigma2 >= sin_k(kappa, sigma1*alpha) / sin_k(rho, alpha) for any map of
// the alpha-ball with least stretch sigma1.
double general_sigma2_lemma(double rho, double kappa, int n, double sigma1,
                            double alpha);

// Kink radius of the optimal Q-quasiconformal profile with linear stretch
// sigma: least positive root of sin_k(kappa, sigma*beta) =
// Q * sigma * sin_k(rho, beta) in (0, alpha), or NaN when the linear
// profile stays Q-quasiconformal through alpha.
double qc_beta(double rho, double kappa, double alpha, double Q,
               double sigma);

} // namespace curvmap
