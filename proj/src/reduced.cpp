#include "resonance/reduced.hpp"

#include <algorithm>
#include <cmath>

#include "polyroots.hpp"

namespace resonance {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive_e(double E) {
    if (!(E > 0) || !std::isfinite(E))
        throw Error(ErrorCode::InvalidParameter, "E must be positive and finite");
}

bool in_band(double x, const ReducedParams& rp, double tol = 1e-12) {
    return std::fabs(x) <= tol * degeneracy_scale(rp);
}

} // namespace

double h_nm1(const ReducedParams& rp, double E) {
    return E * ((rp.A - rp.B) * E - rp.Delta);
}

double h_nm2(const ReducedParams& rp, double E) {
    return E * ((rp.A + rp.B) * E + rp.Delta);
}

double parabola_x(const ParabolaSpec& spec, double Z) {
    if (spec.rp.C == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "level sets are vertical lines for C = 0");
    const double w = spec.rp.B * spec.E + spec.rp.Delta;
    return (spec.h - w * Z - spec.rp.A * Z * Z) / spec.rp.C;
}

VertexPoint vertex(const ParabolaSpec& spec) {
    if (spec.rp.A == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "parabola degenerates to a line for A = 0");
    if (spec.rp.C == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "level sets are vertical lines for C = 0");
    const double w = spec.rp.B * spec.E + spec.rp.Delta;
    VertexPoint v;
    v.Z = -w / (2.0 * spec.rp.A);
    v.X = (spec.h + w * w / (4.0 * spec.rp.A)) / spec.rp.C;
    return v;
}

std::optional<ContactPoint> contact_upper(const ReducedParams& rp, double E) {
    require_positive_e(E);
    if (rp.C == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "no contacts in general position for C = 0");
    if (in_band(rp.A - rp.C, rp))
        throw Error(ErrorCode::DegenerateContact,
                    "upper-arc contact ill-conditioned for A = C");
    const double w = rp.B * E + rp.Delta;
    const double zu = w / (2.0 * (rp.C - rp.A));
    if (!(zu > -E && zu < E)) return std::nullopt;
    ContactPoint cp;
    cp.Z = zu;
    cp.X = (E - zu) * (E + zu);
    cp.h = rp.C * E * E + (rp.C - rp.A) * zu * zu;
    cp.family = ContactFamily::Inclined;
    cp.index = rp.C * (rp.C - rp.A) > 0 ? +1 : -1;
    cp.psi = 0.0;
    return cp;
}

std::optional<ContactPoint> contact_lower(const ReducedParams& rp, double E) {
    require_positive_e(E);
    if (rp.C == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "no contacts in general position for C = 0");
    if (in_band(rp.A + rp.C, rp))
        throw Error(ErrorCode::DegenerateContact,
                    "lower-arc contact ill-conditioned for A = -C");
    const double w = rp.B * E + rp.Delta;
    const double zl = -w / (2.0 * (rp.A + rp.C));
    if (!(zl > -E && zl < E)) return std::nullopt;
    ContactPoint cp;
    cp.Z = zl;
    cp.X = -(E - zl) * (E + zl);
    cp.h = -rp.C * E * E - (rp.A + rp.C) * zl * zl;
    cp.family = ContactFamily::Loop;
    cp.index = rp.C * (rp.A + rp.C) > 0 ? +1 : -1;
    cp.psi = kPi / 2.0;
    return cp;
}

double quartic_q(const ParabolaSpec& spec, double Z) {
    const double s = (spec.E - Z) * (spec.E + Z);
    const double x = parabola_x(spec, Z);
    return s * s - x * x;
}

void quartic_q_coeffs(const ParabolaSpec& spec, double out[5]) {
    const double A = spec.rp.A, C = spec.rp.C;
    const double w = spec.rp.B * spec.E + spec.rp.Delta;
    const double h = spec.h, E = spec.E;
    // C^2 Q(Z) = C^2 (E^2 - Z^2)^2 - (h - w Z - A Z^2)^2
    out[0] = C * C * E * E * E * E - h * h;
    out[1] = 2.0 * w * h;
    out[2] = -(2.0 * C * C * E * E + w * w - 2.0 * A * h);
    out[3] = -2.0 * A * w;
    out[4] = C * C - A * A;
}

QRootReport roots_q(const ParabolaSpec& spec) {
    if (spec.rp.C == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "Q undefined for C = 0");

    std::array<double, 5> c;
    quartic_q_coeffs(spec, c.data());

    QRootReport report;

    const double E = spec.E;
    const double w = spec.rp.B * E + spec.rp.Delta;
    const double hscale = std::fabs(spec.h) + std::fabs(w) * E + std::fabs(spec.rp.A) * E * E;
    const double cscale = spec.rp.C * spec.rp.C * E * E * E * E + hscale * hscale;
    double cmax = 0;
    for (double ci : c) cmax = std::max(cmax, std::fabs(ci));
    if (cmax <= 1e-13 * std::max(cscale, 1e-300)) {
        // the level set contains a whole arc (A = -C style all-points tangency)
        report.degenerate = true;
        return report;
    }

    int n_complex = 0;
    std::vector<double> roots = detail::real_poly_roots(c, &n_complex);
    report.n_complex = n_complex;

    const double merge_tol = 1e-8 * std::max(E, 1e-300);
    for (std::size_t i = 0; i < roots.size();) {
        std::size_t j = i + 1;
        while (j < roots.size() && roots[j] - roots[j - 1] <= merge_tol) ++j;
        const int mult = static_cast<int>(j - i);
        double z = 0;
        for (std::size_t k = i; k < j; ++k) z += roots[k];
        z /= mult;
        if (mult >= 2) {
            // polish the merged double root on dQ/dZ
            for (int it = 0; it < 30; ++it) {
                const double dp = detail::poly_deriv(c, z);
                const double ddp = 2 * c[2] + z * (6 * c[3] + z * 12 * c[4]);
                if (ddp == 0) break;
                const double step = dp / ddp;
                z -= step;
                if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(z))) break;
            }
        }
        report.roots.push_back({z, std::min(mult, 2)});
        i = j;
    }
    return report;
}

DegenerateLineReport degenerate_line_analysis(const ReducedParams& rp, double E) {
    require_positive_e(E);
    if (rp.C == 0)
        throw Error(ErrorCode::UseDegenerateBranch, "C = 0 admits only normal modes");
    if (!in_band(rp.A, rp, 1e-9))
        throw Error(ErrorCode::NotApplicable, "line analysis requires A = 0");

    const double w = rp.B * E + rp.Delta;
    DegenerateLineReport r;
    r.slope = -w / rp.C;
    r.h_bar = -w * E / (2.0 * rp.C);
    r.simultaneous_bifurcation = true;

    const double d1 = rp.B + 2.0 * rp.C;
    const double d2 = rp.B - 2.0 * rp.C;
    if (d1 == 0.0) {
        if (rp.Delta != 0.0) r.e1U_infinite = true;
    } else {
        const double t = -rp.Delta / d1;
        if (t >= 0.0) r.e1U = t;
    }
    if (d2 == 0.0) {
        if (rp.Delta != 0.0) r.e2U_infinite = true;
    } else {
        const double t = -rp.Delta / d2;
        if (t >= 0.0) r.e2U = t;
    }
    return r;
}

} // namespace resonance
