#include "resonance/apps.hpp"

#include <algorithm>
#include <cmath>

namespace resonance {

namespace {

void check_galactic(const GalacticModel& m) {
    if (!(m.alpha > -1.0) || !(m.alpha <= 2.0))
        throw Error(ErrorCode::InvalidParameter, "profile parameter alpha must be in (-1, 2]");
    if (!(m.b > 0))
        throw Error(ErrorCode::InvalidParameter, "ellipticity b must be positive");
}

} // namespace

GalacticResult galactic_alphas(const GalacticModel& m) {
    check_galactic(m);
    const double f = m.alpha - 2.0;
    GalacticResult r;
    r.alphas.alpha1 = 3.0 * m.b * f / 16.0;
    r.alphas.alpha2 = 3.0 * f / (16.0 * m.b);
    r.alphas.alpha3 = f / 4.0;
    r.alphas.alpha4 = f / 16.0;
    r.alphas.delta = m.b - 1.0;
    r.reduced = reduced_from_alphas(r.alphas);
    return r;
}

GalacticThresholds galactic_thresholds(const GalacticModel& m, int order) {
    check_galactic(m);
    if (m.alpha == 2.0)
        throw Error(ErrorCode::NotApplicable, "harmonic case alpha = 2 has no bifurcations");
    if (order != 1 && order != 2)
        throw Error(ErrorCode::InvalidParameter, "order must be 1 or 2");

    GalacticThresholds t;
    const double q = m.b;
    t.e1U = t.e2U = 8.0 / (6.0 - 3.0 * m.alpha);
    if (order == 1) {
        t.e1L = 4.0 * (1.0 - q) / (2.0 - m.alpha);
        t.e2L = -t.e1L;
    } else {
        const double d2 = (1.0 - q) * (1.0 - q);
        const double den = (m.alpha - 2.0) * (m.alpha - 2.0);
        t.e1L = 4.0 * (1.0 - q) / (2.0 - m.alpha) + 2.0 * (2.0 + 3.0 * m.alpha) / den * d2;
        t.e2L = -4.0 * (1.0 - q) / (2.0 - m.alpha) + 2.0 * (5.0 * m.alpha - 2.0) / den * d2;
    }
    return t;
}

LevitationReport levitation_model(double alpha, double b, double L) {
    if (!(alpha > -1.0) || !(alpha <= 2.0))
        throw Error(ErrorCode::InvalidParameter, "profile parameter alpha must be in (-1, 2]");
    if (!(b > 0))
        throw Error(ErrorCode::InvalidParameter, "ellipticity b must be positive");
    const double l_max = std::exp(-0.5);
    if (!(L > 0.0) || L > l_max * (1 + 1e-14))
        throw Error(ErrorCode::InvalidParameter, "angular momentum outside (0, exp(-1/2)]");

    LevitationReport r;
    r.beta = -2.0 * alpha / (2.0 + alpha);
    r.R_c = std::pow(L, 2.0 / (2.0 + alpha));
    const double lb1 = std::pow(L, r.beta + 1.0);
    r.kappa = std::sqrt(2.0 + alpha) / lb1;
    r.nu = 1.0 / (b * lb1);
    r.delta = b * std::sqrt(2.0 + alpha) - 1.0;
    if (alpha == 0.0)
        r.E_tilde = std::log(l_max / L);
    else
        r.E_tilde = (1.0 - std::pow(L / l_max, r.beta)) / r.beta;

    const double b2 = b * b, b4 = b2 * b2;
    r.c20 = (2.0 + alpha) / 2.0;
    r.c02 = 1.0 / (2.0 * b2);
    r.c30 = -(10.0 + 3.0 * alpha - alpha * alpha) / 6.0;
    r.c12 = -(2.0 - alpha) / (2.0 * b2);
    r.c40 = -(54.0 + 11.0 * alpha - 6.0 * alpha * alpha + alpha * alpha * alpha) / 24.0;
    r.c22 = -(6.0 - 5.0 * alpha - alpha * alpha) / (4.0 * b2);
    r.c04 = -(2.0 - alpha) / (8.0 * b4);
    return r;
}

LevitationCritical levitation_critical_l(double alpha, double b) {
    if (!(alpha > -1.0) || !(alpha <= 2.0))
        throw Error(ErrorCode::InvalidParameter, "profile parameter alpha must be in (-1, 2]");
    if (!(b > 0))
        throw Error(ErrorCode::InvalidParameter, "ellipticity b must be positive");

    const double sq = std::sqrt(2.0 + alpha);
    const double delta = b * sq - 1.0;
    const double den = 2.0 + alpha - alpha * alpha;  // (2 - alpha)(1 + alpha)

    LevitationCritical out;
    out.branch = b < 1.0 / sq ? LevitationBranch::BelowResonance : LevitationBranch::AboveResonance;

    if (delta == 0.0) {  // exact resonance: the threshold sits at the circular orbit
        out.L_crit = std::exp(-0.5);
        return out;
    }
    if (den == 0.0)
        throw Error(ErrorCode::NotApplicable,
                    "critical angular momentum undefined at the profile edges alpha = 2, -1");
    if (alpha == 0.0) {
        out.L_crit = out.branch == LevitationBranch::BelowResonance
                         ? std::exp(-29.0 / 10.0 + 12.0 * std::sqrt(2.0) * b / 5.0)
                         : std::exp(11.0 / 2.0 - 6.0 * std::sqrt(2.0) * b);
        return out;
    }
    // (1 + x)^(-(2+alpha)/(2 alpha)) evaluated through log1p for small alpha
    const double x = out.branch == LevitationBranch::BelowResonance
                         ? -24.0 * alpha * delta / (5.0 * den)
                         : 12.0 * alpha * delta / den;
    out.L_crit = std::exp(-0.5 - (2.0 + alpha) / (2.0 * alpha) * std::log1p(x));
    return out;
}

LagrangeLinear lagrange_linear(double c2) {
    if (!(c2 > 0))
        throw Error(ErrorCode::InvalidC2, "c2 must be positive");
    const double disc = 9.0 * c2 * c2 - 8.0 * c2;
    if (disc < 0)
        throw Error(ErrorCode::InvalidC2, "9 c2^2 - 8 c2 < 0");
    const double root = std::sqrt(disc);
    const double lam2 = 0.5 * (-2.0 + c2 + root);
    const double om1_2 = 0.5 * (2.0 - c2 + root);
    if (lam2 < 0 || om1_2 < 0)
        throw Error(ErrorCode::InvalidC2, "inner radicand negative");

    LagrangeLinear r;
    r.c2 = c2;
    r.lambda = std::sqrt(lam2);
    r.omega1 = std::sqrt(om1_2);
    r.omega2 = std::sqrt(c2);
    r.detuning = (r.omega1 - r.omega2) / r.omega2;
    return r;
}

DistortedContactReport hh_distorted_contacts(double C, double lambda, double E) {
    if (C == 0)
        throw Error(ErrorCode::InvalidParameter, "C must be nonzero");
    if (!(E > 0))
        throw Error(ErrorCode::InvalidParameter, "E must be positive");

    DistortedContactReport rep;
    if (lambda != 0.0) {
        rep.pole_z = -C / lambda;
        rep.pole_in_range = std::fabs(rep.pole_z) <= E;
    }

    // restriction to the upper arc: K = C E^2 + lambda Z (E^2 - Z^2)
    auto k_upper = [&](double z) { return C * E * E + lambda * z * (E - z) * (E + z); };
    // restriction to the lower arc: K = C (2 Z^2 - E^2) - lambda Z (E^2 - Z^2)
    auto k_lower = [&](double z) {
        return C * (2.0 * z * z - E * E) - lambda * z * (E - z) * (E + z);
    };

    if (lambda == 0.0) {
        rep.degenerate_upper_arc = true;
        rep.degenerate_h = C * E * E;
        // isolated loop tangency at the lower-arc vertex, elliptic for either sign of C
        rep.lower.push_back({0.0, -C * E * E, true});
        return rep;
    }

    // upper arc: dK/dZ = lambda (E^2 - 3 Z^2)
    const double zu = E / std::sqrt(3.0);
    for (double z : {-zu, zu}) {
        const double ddk = -6.0 * lambda * z;
        const bool elliptic = ddk * (-(C + lambda * z)) > 0;
        rep.upper.push_back({z, k_upper(z), elliptic});
    }

    // lower arc: dK/dZ = 4 C Z - lambda (E^2 - 3 Z^2) = 0
    const double qa = 3.0 * lambda, qb = 4.0 * C, qc = -lambda * E * E;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0) {
        const double s = std::sqrt(disc);
        for (double z : {(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)}) {
            if (std::fabs(z) >= E) continue;
            const double ddk = 4.0 * C + 6.0 * lambda * z;
            const bool elliptic = ddk * (C + lambda * z) > 0;
            rep.lower.push_back({z, k_lower(z), elliptic});
        }
    }
    std::sort(rep.upper.begin(), rep.upper.end(),
              [](const DistortedContact& a, const DistortedContact& b) { return a.Z < b.Z; });
    std::sort(rep.lower.begin(), rep.lower.end(),
              [](const DistortedContact& a, const DistortedContact& b) { return a.Z < b.Z; });
    return rep;
}

} // namespace resonance
