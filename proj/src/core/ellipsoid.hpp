#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace curvmap {

// Dense symmetric positive definite form of modest dimension (n <= 16 in
// practice).  Entries are row-major; only symmetry up to rounding is
// required on input, the stored copy is symmetrized.
class quadratic_form {
  public:
    quadratic_form(int dim, const std::vector<double>& entries);

    int dim() const { return dim_; }
    double at(int i, int j) const { return a_[i * dim_ + j]; }
    const std::vector<double>& entries() const { return a_; }

    // Ascending eigenvalues, by cyclic Jacobi rotations.
    std::vector<double> eigenvalues() const;

    // (least, greatest) axis stretches, i.e. extreme eigenvalues; throws
    // range_error when the form is not positive definite.
    std::pair<double, double> extremes() const;

    double determinant() const; // product of eigenvalues

    // Restriction to the hyperplane orthogonal to `normal`, expressed in an
    // orthonormal basis of that hyperplane; result has dimension dim-1.
    quadratic_form restrict_to_hyperplane(
        const std::vector<double>& normal) const;

  private:
    int dim_;
    std::vector<double> a_;
};

struct lemma_report {
    double det_full;      // |q|
    double det_restricted; // |q0|
    double sigma1, sigma2; // extreme stretches of q
    double slack_sigma1;  // |q| - |q0| * sigma1
    double slack_power;   // |q| - |q0|^{n/(n-1)} / Q
};

// Determinant comparisons between a form and its hyperplane restriction for
// forms whose stretch ratio sigma2/sigma1 is at most Q.  Both slacks are
// nonnegative in exact arithmetic; equality in slack_power holds when the
// spectrum is (lambda, Q*lambda, ..., Q*lambda) and the hyperplane is the
// Q*lambda eigenspace.
lemma_report ellipsoid_lemma_check(const quadratic_form& q,
                                   const std::vector<double>& normal,
                                   double Q);

// Deterministic xorshift-free helper: draws an SPD form with spectrum inside
// [lambda, Q*lambda] conjugated by a random rotation, for property tests.
quadratic_form random_spd(int dim, double lambda, double Q, uint64_t& state);

// Uniform double in [0, 1) from a splitmix64-style state; stable across
// platforms, unlike the distributions in <random>.
double u01(uint64_t& state);

} // namespace curvmap
