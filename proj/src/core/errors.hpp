#pragma once

#include <stdexcept>
#include <string>

namespace curvmap {

// Argument outside the geometric domain of an operation (e.g. a radius at or
// beyond the conjugate radius, arctan_k past its pole).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested value outside the reachable range (e.g. a ball volume larger than
// the whole space).
struct range_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_argument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative kernel exhausted its budget without meeting its tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace curvmap
