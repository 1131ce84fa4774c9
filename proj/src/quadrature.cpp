#include "resonance/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyroots.hpp"
#include "resonance/reduced.hpp"

namespace resonance {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Cycle {
    double z1, z2;                 ///< turning points, z1 < z2
    std::array<double, 3> s;       ///< S(Z) = C^2 Q / ((Z-z1)(z2-Z)), ascending coeffs
    ParabolaSpec spec;
};

double eval_s(const Cycle& cy, double z) {
    return cy.s[0] + z * (cy.s[1] + z * cy.s[2]);
}

/// Turning points of the oscillation cycle plus the deflated quadratic factor.
Cycle make_cycle(const TorusCoords& t) {
    const ReducedParams& rp = t.rp;
    if (rp.C == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "quadratures undefined for C = 0");
    if (!(t.E > 0))
        throw Error(ErrorCode::InvalidParameter, "E must be positive");

    Cycle cy;
    cy.spec = ParabolaSpec{rp, t.E, t.h};

    std::array<double, 5> c;
    quartic_q_coeffs(cy.spec, c.data());
    const std::vector<double> roots = detail::real_poly_roots(c);

    std::vector<double> inside;
    for (double z : roots)
        if (z > -t.E && z < t.E) inside.push_back(z);

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
        min_gap = std::min(min_gap, roots[i + 1] - roots[i]);
    if (min_gap < 1e-5 * t.E)
        throw Error(ErrorCode::DegenerateRoots,
                    "turning points nearly coincide; use residue_period");

    if (inside.size() != 2)
        throw Error(ErrorCode::NonRegularValue,
                    "(E,h) does not select a single oscillation cycle");
    cy.z1 = inside[0];
    cy.z2 = inside[1];

    const double mid = 0.5 * (cy.z1 + cy.z2);
    if (quartic_q(cy.spec, mid) <= 0)
        throw Error(ErrorCode::NonRegularValue, "level set empty between turning points");

    // deflate C^2 Q by the two turning points; S = -(remaining quadratic)
    std::array<double, 4> cub;
    cub[3] = c[4];
    cub[2] = c[3] + cy.z1 * cub[3];
    cub[1] = c[2] + cy.z1 * cub[2];
    cub[0] = c[1] + cy.z1 * cub[1];
    std::array<double, 3> quad;
    quad[2] = cub[3];
    quad[1] = cub[2] + cy.z2 * quad[2];
    quad[0] = cub[1] + cy.z2 * quad[1];
    cy.s = {-quad[0], -quad[1], -quad[2]};
    return cy;
}

double z_of_theta(const Cycle& cy, double theta) {
    const double s = std::sin(theta);
    return cy.z1 + (cy.z2 - cy.z1) * s * s;
}

/// T2 = integral_0^{pi/2} dtheta / sqrt(S).
double t2_from_cycle(const Cycle& cy) {
    auto f = [&](double theta) { return 1.0 / std::sqrt(eval_s(cy, z_of_theta(cy, theta))); };
    return Quad::integrate(f, 0.0, kPi / 2, 15, 1e-12);
}

void check_pole(const Cycle& cy) {
    const double E = cy.spec.E;
    if (E - std::fabs(cy.z1) < 1e-9 * E || E - std::fabs(cy.z2) < 1e-9 * E)
        throw Error(ErrorCode::PoleOnPath, "turning point reaches Z = +-E");
}

/// W = (1/2pi) integral_0^{pi/2} g(Z) / ((E^2 - Z^2) sqrt(S)) dtheta, with
/// g = (E^2-Z^2)(1 + Delta + 2 A1 E + B Z) + 2 C E X(Z).
double w_from_cycle(const Cycle& cy) {
    const ReducedParams& rp = cy.spec.rp;
    const double E = cy.spec.E;
    auto f = [&](double theta) {
        const double z = z_of_theta(cy, theta);
        const double s2 = (E - z) * (E + z);
        const double g = s2 * (1.0 + rp.Delta + 2.0 * rp.A1 * E + rp.B * z) +
                         2.0 * rp.C * E * parabola_x(cy.spec, z);
        return g / (s2 * std::sqrt(eval_s(cy, z)));
    };
    return Quad::integrate(f, 0.0, kPi / 2, 15, 1e-12) / (2.0 * kPi);
}

/// (1/8pi) contour integral of Z dtheta, theta = atan2(Y, X) on the cycle.
/// This is the integrated-by-parts form of -(1/8pi) oint arccos(X/(E^2-Z^2)) dZ;
/// unlike the arccos form it stays single-valued on rotational cycles, where
/// the angle winds by 2 pi.
double j2_from_cycle(const Cycle& cy) {
    const ReducedParams& rp = cy.spec.rp;
    const double E = cy.spec.E;
    const double w = rp.B * E + rp.Delta;
    auto f = [&](double theta) {
        const double z = z_of_theta(cy, theta);
        const double s2 = (E - z) * (E + z);
        const double x = parabola_x(cy.spec, z);
        const double xp = (-w - 2.0 * rp.A * z) / rp.C;
        return z * (xp * s2 + 2.0 * z * x) / (s2 * std::sqrt(eval_s(cy, z)));
    };
    const double i_arc = Quad::integrate(f, 0.0, kPi / 2, 15, 1e-12);
    return -std::fabs(rp.C) * i_arc / (2.0 * kPi);
}

std::optional<ContactPoint> contact_of(const ReducedParams& rp, double E, OrbitFamily family) {
    switch (family) {
        case OrbitFamily::Inclined: return contact_upper(rp, E);
        case OrbitFamily::Loop:     return contact_lower(rp, E);
        default:
            throw Error(ErrorCode::InvalidParameter, "contact defined for Inclined/Loop only");
    }
}

} // namespace

double period_t2(const TorusCoords& t) {
    return t2_from_cycle(make_cycle(t));
}

double rotation_w(const TorusCoords& t) {
    const Cycle cy = make_cycle(t);
    check_pole(cy);
    return w_from_cycle(cy);
}

double action_j2(const TorusCoords& t) {
    const Cycle cy = make_cycle(t);
    check_pole(cy);
    return j2_from_cycle(cy);
}

FrequencyReport frequencies(const TorusCoords& t) {
    const Cycle cy = make_cycle(t);
    check_pole(cy);
    FrequencyReport fr;
    fr.T2 = t2_from_cycle(cy);
    fr.W = w_from_cycle(cy);
    fr.J2 = j2_from_cycle(cy);
    fr.omega2 = 2.0 * kPi / fr.T2;
    fr.omega1 = fr.omega2 * fr.W;
    return fr;
}

Omega2Result omega2_periodic(const ReducedParams& rp, double E, OrbitFamily family) {
    if (!contact_of(rp, E, family))
        throw Error(ErrorCode::NotApplicable, "no contact at this E");
    const bool inclined = family == OrbitFamily::Inclined;
    const double s = inclined ? 2.0 * (rp.A - rp.C) : 2.0 * (rp.A + rp.C);
    const double den = inclined ? rp.C - rp.A : rp.C + rp.A;
    const double s2 = (8.0 * rp.C / den) *
                      ((s - rp.B) * E - rp.Delta) * (rp.Delta + (s + rp.B) * E);
    if (s2 >= 0) return {std::sqrt(s2), false};
    return {std::sqrt(-s2), true};
}

double omega1_periodic(const ReducedParams& rp, double E, OrbitFamily family) {
    const double w = rp.B * E + rp.Delta;
    switch (family) {
        case OrbitFamily::NM1:
            return 1.0 + 2.0 * (rp.A1 + rp.A - rp.B) * E;
        case OrbitFamily::NM2:
            return 1.0 + 2.0 * rp.Delta + 2.0 * (rp.A1 + rp.A + rp.B) * E;
        case OrbitFamily::Inclined:
            if (!contact_upper(rp, E))
                throw Error(ErrorCode::NotApplicable, "no inclined family at this E");
            return 1.0 + rp.Delta + 2.0 * (rp.A1 + rp.C) * E + rp.B * w / (2.0 * (rp.C - rp.A));
        case OrbitFamily::Loop:
            if (!contact_lower(rp, E))
                throw Error(ErrorCode::NotApplicable, "no loop family at this E");
            return 1.0 + rp.Delta + 2.0 * (rp.A1 - rp.C) * E - rp.B * w / (2.0 * (rp.C + rp.A));
    }
    throw Error(ErrorCode::InvalidParameter, "unknown family");
}

ResiduePeriod residue_period(const ReducedParams& rp, double E, OrbitFamily family) {
    const auto cp = contact_of(rp, E, family);
    if (!cp)
        throw Error(ErrorCode::NotApplicable, "no contact at this E");
    const double w = rp.B * E + rp.Delta;
    double r;
    if (family == OrbitFamily::Inclined) {
        // simple roots live on the lower-arc factor (A+C) Z^2 + w Z - (h + C E^2)
        const double f = (rp.A + rp.C) * cp->Z * cp->Z + w * cp->Z - (cp->h + rp.C * E * E);
        r = -16.0 * (rp.C - rp.A) * f;
    } else {
        // simple roots live on the upper-arc factor (A-C) Z^2 + w Z - (h - C E^2)
        const double g = (rp.A - rp.C) * cp->Z * cp->Z + w * cp->Z - (cp->h - rp.C * E * E);
        r = 16.0 * (rp.A + rp.C) * g;
    }
    ResiduePeriod out;
    out.unstable = r < 0;
    out.radicand_sign = r < 0 ? -1 : +1;
    out.T = 2.0 * kPi / std::sqrt(std::fabs(r));
    return out;
}

const char* to_string(OrbitFamily family) {
    switch (family) {
        case OrbitFamily::NM1:      return "nm1";
        case OrbitFamily::NM2:      return "nm2";
        case OrbitFamily::Inclined: return "inclined";
        case OrbitFamily::Loop:     return "loop";
    }
    return "unknown";
}

} // namespace resonance
