#pragma once
#include <optional>

#include "resonance/params.hpp"

namespace resonance {

/// Regular value of the energy-momentum map selecting an invariant torus.
struct TorusCoords {
    ReducedParams rp;
    double E = 0;   ///< the trivial action J1
    double h = 0;   ///< reduced energy
};

/// Frequencies and action of a torus. omega1 = omega2 * W by construction;
/// the member values are produced by two independent quadratures.
struct FrequencyReport {
    double J2;      ///< nontrivial action
    double T2;      ///< reduced period, positive
    double W;       ///< rotation number omega1/omega2
    double omega1;  ///< fast frequency
    double omega2;  ///< 2*pi / T2
};

/// J2(E,h) = -(1/8pi) contour integral of arccos(X(Z)/(E^2-Z^2)) dZ, with
/// the arccos branch continued around the cycle.
double action_j2(const TorusCoords& t);

/// T2(E,h) = |1/(4C)| contour integral of dZ/sqrt(Q); endpoint square-root
/// singularities removed by Z = Z1 + (Z2-Z1) sin^2(theta).
double period_t2(const TorusCoords& t);

/// Rotation number W(E,h); throws PoleOnPath when a turning point reaches +-E.
double rotation_w(const TorusCoords& t);

/// All of the above in one pass over the cycle.
FrequencyReport frequencies(const TorusCoords& t);

enum class OrbitFamily { NM1, NM2, Inclined, Loop };

/// Reduced (variational) frequency of a periodic orbit in general position.
/// imaginary = true flags a negative radicand: the family is hyperbolic and
/// value holds the magnitude of the imaginary frequency.
struct Omega2Result {
    double value;
    bool imaginary;
};

/// omega_2U = 2 sqrt(2C/(C-A)) sqrt(((2(A-C)-B)E - d)(d + (2(A-C)+B)E)) with
/// d = 2*Delta, and likewise for loops with A+C. Requires the contact to exist.
Omega2Result omega2_periodic(const ReducedParams& rp, double E, OrbitFamily family);

/// Fast frequency on a periodic orbit or normal mode:
///   NM1 (J1 = 0):  1 + 2(A1 + A - B) E
///   NM2 (J2 = 0):  1 + 2 Delta + 2(A1 + A + B) E
///   Inclined:      1 + Delta + 2(A1 + C) E + B(BE+Delta)/(2(C-A))
///   Loop:          1 + Delta + 2(A1 - C) E - B(BE+Delta)/(2(C+A))
double omega1_periodic(const ReducedParams& rp, double E, OrbitFamily family);

/// Reduced period from the residue at the double root of Q:
/// T = 2pi / sqrt(r) with r = -a0 q(Zc)/lead(q), a0 = 16(C-A)(C+A) and q the
/// quadratic carrying the two simple roots. r equals omega2^2; r < 0 flags
/// an unstable family (imaginary period, magnitude reported).
struct ResiduePeriod {
    double T;            ///< 2pi/sqrt(|r|)
    bool unstable;       ///< radicand was negative
    int radicand_sign;   ///< sign chosen so stable families get +1
};

ResiduePeriod residue_period(const ReducedParams& rp, double E, OrbitFamily family);

const char* to_string(OrbitFamily family);

} // namespace resonance
