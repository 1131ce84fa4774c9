#pragma once
#include <optional>
#include <vector>

#include "resonance/params.hpp"

namespace resonance {

/// Potential with self-similar elliptical equipotentials,
/// profile parameter alpha in (-1, 2] (alpha = 0 is the logarithmic case)
/// and ellipticity b > 0.
struct GalacticModel {
    double alpha;
    double b;
};

/// Normal-form coefficients of the elliptical-equipotential family:
/// alpha1 = 3b(alpha-2)/16, alpha2 = 3(alpha-2)/(16b),
/// alpha3 = 4 alpha4 = (alpha-2)/4, delta = b - 1.
struct GalacticResult {
    Alphas alphas;
    ReducedParams reduced;
};

GalacticResult galactic_alphas(const GalacticModel& m);

/// Loop/inclined thresholds of the galactic family.
/// order 1: E1L = -E2L = 4(1-b)/(2-alpha), E1U = E2U = 8/(6-3alpha).
/// order 2: second-order corrections in the detuning.
struct GalacticThresholds {
    double e1L, e2L, e1U, e2U;
};

GalacticThresholds galactic_thresholds(const GalacticModel& m, int order);

/// Axisymmetric disk model at fixed energy with angular momentum L as the
/// dynamical parameter; 0 < L <= L_max = exp(-1/2).
struct LevitationModel {
    double alpha;
    double b;
    double L;
};

struct LevitationReport {
    double R_c;       ///< circular-orbit radius L^(2/(2+alpha))
    double beta;      ///< -2 alpha / (2 + alpha)
    double kappa;     ///< radial epicyclic frequency
    double nu;        ///< vertical epicyclic frequency
    double delta;     ///< detuning b sqrt(2+alpha) - 1
    double E_tilde;   ///< rescaled energy (1 - (L/L_max)^beta)/beta, log limit at alpha = 0
    double c20, c02, c30, c12, c40, c22, c04;  ///< expansion coefficients
};

LevitationReport levitation_model(double alpha, double b, double L);

enum class LevitationBranch { BelowResonance, AboveResonance };  ///< b < or > 1/sqrt(2+alpha)

struct LevitationCritical {
    double L_crit;
    LevitationBranch branch;
};

/// Critical angular momentum below which inclined orbits exist; closed-form
/// power-law branches with the explicit logarithmic limit at alpha = 0.
LevitationCritical levitation_critical_l(double alpha, double b);

/// Linearized frequencies at a collinear Lagrange point from the expansion
/// coefficient c2 > 0 (requires 9 c2^2 - 8 c2 >= 0).
struct LagrangeLinear {
    double c2;
    double lambda;    ///< hyperbolic rate of the unstable direction
    double omega1;    ///< planar frequency
    double omega2;    ///< vertical frequency sqrt(c2)
    double detuning;  ///< (omega1 - omega2)/omega2
};

LagrangeLinear lagrange_linear(double c2);

/// Distorted degenerate Hamiltonian K = C(X + Z^2) + lambda Z X on the lemon.
struct DistortedContact {
    double Z;
    double h;
    bool elliptic;
};

struct DistortedContactReport {
    bool degenerate_upper_arc = false;   ///< lambda = 0: whole upper arc critical at h = C E^2
    double degenerate_h = 0;
    std::vector<DistortedContact> upper; ///< contacts with X = +(E^2 - Z^2)
    std::vector<DistortedContact> lower; ///< contacts with X = -(E^2 - Z^2)
    bool pole_in_range = false;          ///< |C/lambda| <= E
    double pole_z = 0;
};

/// Tangency analysis of the distorted parabolas X = (h - C Z^2)/(C + lambda Z)
/// with both arcs. Requires C != 0.
DistortedContactReport hh_distorted_contacts(double C, double lambda, double E);

} // namespace resonance
