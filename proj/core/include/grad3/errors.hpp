#ifndef GRAD3_ERRORS_HPP
#define GRAD3_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace grad3 {

/** Base class for all numerical failures raised by the library. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** No cube-root branch pairing yields a real diffusion eigenvalue. */
struct BranchFailure : Error {
    using Error::Error;
};

/** Roots cannot be split into one real root plus a conjugate pair. */
struct ClassificationFailure : Error {
    using Error::Error;
};

/** Eigenvector matrix is numerically singular. */
struct SingularBasis : Error {
    using Error::Error;
};

/** A constitutive-law denominator is below tolerance. */
struct DegenerateDenominator : Error {
    using Error::Error;
};

/** Explicit time step exceeds the stiff stability bound. */
struct StabilityViolation : Error {
    using Error::Error;
};

/** Inverse transform left an imaginary residue above tolerance. */
struct RealityViolation : Error {
    using Error::Error;
};

/** Trajectory norm is zero or negative where a log fit is required. */
struct NonPositiveNorm : Error {
    using Error::Error;
};

/** Input field has a fast spectral component above tolerance. */
struct NotOnSlowManifold : Error {
    using Error::Error;
};

}  // namespace grad3

#endif
