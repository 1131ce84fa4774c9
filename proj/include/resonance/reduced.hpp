#pragma once
#include <optional>
#include <vector>

#include "resonance/params.hpp"

namespace resonance {

/// Point on the reduced phase space X^2 + Y^2 = (E+Z)^2 (E-Z)^2.
struct LemonPoint {
    double X = 0, Y = 0, Z = 0;
    double E = 0;
};

enum class ContactFamily { Inclined, Loop };

/// Tangency equilibrium on the reduced section Y = 0.
/// Inclined contacts sit on the upper arc X = +(E^2 - Z^2), loops on the
/// lower arc X = -(E^2 - Z^2). index = +1 elliptic, -1 hyperbolic.
struct ContactPoint {
    double Z = 0;
    double X = 0;
    double h = 0;           ///< reduced energy at contact
    ContactFamily family = ContactFamily::Inclined;
    int index = 0;
    double psi = 0;         ///< phase difference of the periodic orbits (0 or pi/2)
};

/// The level set {H = h} restricted to the section, X = X(Z).
struct ParabolaSpec {
    ReducedParams rp;
    double E = 0;
    double h = 0;
};

/// X(Z) = (h - (B E + Delta) Z - A Z^2) / C. Throws UseDegenerateBranch when C = 0.
double parabola_x(const ParabolaSpec& spec, double Z);

struct VertexPoint {
    double Z = 0, X = 0;
};

/// Parabola vertex; requires A != 0, C != 0.
VertexPoint vertex(const ParabolaSpec& spec);

/// Tangency with the upper arc: Z_U = (B E + Delta) / (2(C-A)),
/// h_U = C E^2 + (C-A) Z_U^2, index = sign(C(C-A)).
/// Empty when |Z_U| >= E (no contact in general position).
/// Throws DegenerateContact within the A = C band, UseDegenerateBranch for C = 0.
std::optional<ContactPoint> contact_upper(const ReducedParams& rp, double E);

/// Tangency with the lower arc: Z_L = -(B E + Delta) / (2(A+C)),
/// h_L = -C E^2 - (A+C) Z_L^2, index = sign(C(A+C)).
std::optional<ContactPoint> contact_lower(const ReducedParams& rp, double E);

/// Q(Z) = (E^2 - Z^2)^2 - X(Z)^2; vanishing with dQ/dZ = 0 marks tangency.
double quartic_q(const ParabolaSpec& spec, double Z);

/// Coefficients of C^2 Q(Z), ascending powers. Polynomial in Z of degree <= 4.
void quartic_q_coeffs(const ParabolaSpec& spec, double out[5]);

struct QRoot {
    double z;
    int multiplicity;  ///< 1 simple, 2 double (merged within tolerance)
};

struct QRootReport {
    std::vector<QRoot> roots;  ///< real roots, ascending
    int n_complex = 0;         ///< number of complex roots omitted
    bool degenerate = false;   ///< Q identically zero (all-points tangency)
};

/// All real roots of Q, tagged simple/double; roots closer than
/// 1e-8 relative to the domain half-width E are merged to a double root.
QRootReport roots_q(const ParabolaSpec& spec);

/// Analysis of the A = 0 stratum, where the section level sets are
/// straight lines X = h/C + m Z.
struct DegenerateLineReport {
    double slope = 0;                ///< m = -(B E + Delta)/C
    double h_bar = 0;                ///< -(B E + Delta) E / (2C)
    std::optional<double> e1U;       ///< -Delta/(B + 2C), when positive and finite
    std::optional<double> e2U;       ///< -Delta/(B - 2C)
    bool e1U_infinite = false;       ///< B = -2C with Delta != 0
    bool e2U_infinite = false;       ///< B = +2C with Delta != 0
    bool simultaneous_bifurcation;   ///< loop and inclined families appear together
};

/// Requires A = 0 (within the classification band) and C != 0.
DegenerateLineReport degenerate_line_analysis(const ReducedParams& rp, double E);

/// Reduced energies of the two vertices Q1 = (Z=-E) and Q2 = (Z=+E):
/// h1 = E((A-B)E - Delta), h2 = E((A+B)E + Delta).
double h_nm1(const ReducedParams& rp, double E);
double h_nm2(const ReducedParams& rp, double E);

} // namespace resonance
