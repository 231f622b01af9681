#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace curvmap {

struct check_result {
    std::string name;
    bool passed;
    double observed; // worst discrepancy seen (convention: pass iff <= limit)
    double limit;
    std::string detail; // nonempty only when something is worth reporting
};

struct suite_report {
    std::string suite;
    std::uint64_t seed;
    std::vector<check_result> checks;

    bool all_passed() const;
    std::string to_json() const; // pretty-printed, non-finite values quoted
};

// Suites: "identities", "sharpness", "taylor", "ellipsoid", "all".
std::vector<std::string> suite_names();
suite_report run_suite(const std::string& name, std::uint64_t seed);

// One perturbation experiment: a random map drawn from the bound's class,
// its anisometry, and the margin over the class bound.  The margin is the
// quantity the sharpness theory says can never be negative.
struct perturbation_sample {
    double aniso;
    double bound;
    double margin; // aniso - bound
};

perturbation_sample perturb_general(double rho, double kappa, int n,
                                    double alpha, std::uint64_t& state);
perturbation_sample perturb_conformal(double rho, double kappa, int n,
                                      double alpha, std::uint64_t& state);
// Pointwise volume-preserving twists of the optimal profile (the optimal
// volume-matching profile is the unique azimuthal member of its class, so
// the perturbations rotate the angular factor by a radius-dependent angle).
perturbation_sample perturb_volume_preserving(double rho, double kappa, int n,
                                              double alpha,
                                              std::uint64_t& state);
perturbation_sample perturb_quasiconformal(double rho, double kappa, int n,
                                           double alpha, double Q,
                                           std::uint64_t& state);

} // namespace curvmap
