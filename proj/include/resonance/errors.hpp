#pragma once
#include <stdexcept>
#include <string>

namespace resonance {

enum class ErrorCode {
    InvalidParameter,   ///< non-finite or out-of-range input
    DegenerateGerm,     ///< germ coefficients undefined (A = +-C)
    NotApplicable,      ///< requested quantity undefined for this parameter stratum
    UseDegenerateBranch,///< generic formula invalid, a degenerate branch applies (C=0 or A=0)
    DegenerateContact,  ///< contact equations ill-conditioned (A = +-C band)
    NonRegularValue,    ///< (E,h) is not a regular value with a single oscillation cycle
    DegenerateRoots,    ///< turning points too close to a double root; use the residue path
    PoleOnPath,         ///< quadrature turning point reaches Z = +-E
    InvalidSeed,        ///< section seed not on the requested energy level
    StepFailure,        ///< integrator could not proceed within tolerances
    ConstraintDrift,    ///< conserved quantity drifted beyond tolerance
    InvalidC2           ///< Lagrange-point expansion coefficient outside admissible range
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

const char* to_string(ErrorCode code);

} // namespace resonance
