#pragma once
#include "resonance/errors.hpp"

namespace resonance {

/// Coefficients of the cubic and quartic potential terms of a natural
/// two-degrees-of-freedom system with reflection symmetries,
///   V3 = b30 q1^3 + b12 q1 q2^2,
///   V4 = b40 q1^4 + b22 q1^2 q2^2 + b04 q2^4.
struct NaturalCoefficients {
    double b30 = 0, b12 = 0, b40 = 0, b22 = 0, b04 = 0;
};

/// Resonant normal-form coefficients: K depends on the actions through
/// alpha1 J1^2 + alpha2 J2^2 + J1 J2 (alpha3 + 2 alpha4 cos 2(phi1-phi2)),
/// with detuning delta on the J1 frequency.
struct Alphas {
    double alpha1 = 0, alpha2 = 0, alpha3 = 0, alpha4 = 0;
    double delta = 0;
};

/// Geometric control parameters of the reduced Hamiltonian
///   H = C X + (B E + Delta) Z + A Z^2
/// on the lemon space, plus the energy-shift coefficient A1.
struct ReducedParams {
    double A = 0, B = 0, C = 0;
    double Delta = 0;   ///< detuning/2
    double A1 = 0;      ///< (alpha1+alpha2+alpha3)/4; only shifts energies, needed by quadratures
};

/// Discrete invariants of the central singularity.
struct Germ {
    double mu;  ///< 2A / sqrt(|A^2 - C^2|)
    int eps1;   ///< sign(A - C)
    int eps2;   ///< sign(A + C)
};

/// Sign-quadrant classification of (A, C), with the degenerate strata
/// A = +-C, C = 0, A = 0 taking precedence.
enum class CaseTag {
    Reference,          ///< A < 0, C > 0
    CompA,              ///< A < 0, C < 0
    CompB,              ///< A > 0, C < 0
    CompC,              ///< A > 0, C > 0
    DegenerateAeqC,
    DegenerateAeqMinusC,
    DegenerateCzero,
    DegenerateAzero
};

enum class ReflectionLabel { Identity, R1, R2, R2R1 };

/// Reflection mapping a sign quadrant onto the reference case, together
/// with the fixed-point relabeling it induces: R1 exchanges the two
/// vertices (normal modes), R2 exchanges the upper/lower tangency arcs
/// (inclined and loop families).
struct SymmetryMap {
    ReflectionLabel label;
    bool swaps_normal_modes;  ///< Q1 <-> Q2 under R1
    bool swaps_families;      ///< Q_U <-> Q_L under R2
};

/// Normal-form coefficients from the natural cubic/quartic coefficients.
Alphas alphas_from_natural(const NaturalCoefficients& nat, double delta);

/// Reduced geometric parameters A, B, C, Delta, A1 from the alphas.
ReducedParams reduced_from_alphas(const Alphas& a);

/// Inverse of reduced_from_alphas (the map is a bijection).
Alphas alphas_from_reduced(const ReducedParams& rp);

/// Germ coefficients of the versal deformation; throws DegenerateGerm when A = +-C.
Germ germ_coefficients(const ReducedParams& rp);

/// Scale against which the degeneracy bands are measured: max(|A|,|C|,1).
double degeneracy_scale(const ReducedParams& rp);

/// Classify (A, C) into its case tag with relative tolerance tol on the
/// degenerate strata. Total and pure.
CaseTag classify_case(const ReducedParams& rp, double tol = 1e-12);

bool is_degenerate(CaseTag tag);

/// Reflection bringing a non-degenerate case onto the reference case.
/// Throws NotApplicable for degenerate tags.
SymmetryMap symmetry_map(CaseTag tag);

const char* to_string(CaseTag tag);
const char* to_string(ReflectionLabel label);

} // namespace resonance
