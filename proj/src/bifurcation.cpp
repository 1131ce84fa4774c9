#include "resonance/bifurcation.hpp"

#include <algorithm>
#include <cmath>

namespace resonance {

namespace {

bool in_band(double x, const ReducedParams& rp, double tol = 1e-12) {
    return std::fabs(x) <= tol * degeneracy_scale(rp);
}

std::optional<double> positive_ratio(double num, double den) {
    if (den == 0.0) return std::nullopt;
    const double t = num / den;
    if (t > 0.0 && std::isfinite(t)) return t;
    return std::nullopt;
}

/// Existence of the family's contact just off a threshold; DegenerateContact
/// cannot occur here (callers filter the degenerate arc beforehand).
bool family_exists_at(const ReducedParams& rp, double E, ContactFamily family) {
    const auto cp = family == ContactFamily::Inclined ? contact_upper(rp, E)
                                                      : contact_lower(rp, E);
    return cp.has_value();
}

struct ThresholdEventSpec {
    std::optional<double> e;
    ContactFamily family;
    bool touches_nm1;
};

std::vector<BifurcationEvent> events_from_thresholds(const ReducedParams& rp,
                                                     const ThresholdSet& ts, double eMax) {
    const bool upper_ok = !in_band(rp.A - rp.C, rp);
    const bool lower_ok = !in_band(rp.A + rp.C, rp);

    const ThresholdEventSpec specs[] = {
        {ts.e1U, ContactFamily::Inclined, true},
        {ts.e2U, ContactFamily::Inclined, false},
        {ts.e1L, ContactFamily::Loop, true},
        {ts.e2L, ContactFamily::Loop, false},
    };

    std::vector<BifurcationEvent> events;
    for (const auto& spec : specs) {
        if (!spec.e || *spec.e > eMax) continue;
        if (spec.family == ContactFamily::Inclined && !upper_ok) continue;
        if (spec.family == ContactFamily::Loop && !lower_ok) continue;

        const double t = *spec.e;
        const double eps = 1e-9 * t;
        const bool above = family_exists_at(rp, t + eps, spec.family);
        const bool below = t - eps > 0 && family_exists_at(rp, t - eps, spec.family);
        if (above == below) continue;  // not a genuine existence flip

        BifurcationEvent ev;
        ev.e = t;
        ev.kind = above ? (spec.touches_nm1 ? EventKind::FromNM1 : EventKind::FromNM2)
                        : (spec.touches_nm1 ? EventKind::ToNM1 : EventKind::ToNM2);
        const bool stable = spec.family == ContactFamily::Inclined
                                ? rp.C * (rp.C - rp.A) > 0
                                : rp.C * (rp.A + rp.C) > 0;
        if (spec.family == ContactFamily::Inclined)
            ev.family = stable ? FamilyLabel::InclinedStable : FamilyLabel::InclinedUnstable;
        else
            ev.family = stable ? FamilyLabel::LoopStable : FamilyLabel::LoopUnstable;
        events.push_back(ev);
    }
    return events;
}

} // namespace

ThresholdSet thresholds(const ReducedParams& rp) {
    if (in_band(rp.C, rp))
        throw Error(ErrorCode::NotApplicable,
                    "C = 0: uncoupled oscillators admit only normal modes");

    ThresholdSet ts;
    const bool upper_ok = !in_band(rp.A - rp.C, rp);
    const bool lower_ok = !in_band(rp.A + rp.C, rp);

    if (upper_ok) {
        ts.e1U = positive_ratio(rp.Delta, 2.0 * (rp.A - rp.C) - rp.B);
        ts.e2U = positive_ratio(rp.Delta, 2.0 * (rp.C - rp.A) - rp.B);
    }
    if (lower_ok) {
        ts.e1L = positive_ratio(rp.Delta, 2.0 * (rp.A + rp.C) - rp.B);
        ts.e2L = positive_ratio(rp.Delta, -2.0 * (rp.A + rp.C) - rp.B);
    }
    if (rp.B != 0.0) {
        ts.eGB = positive_ratio(-rp.Delta, rp.B);
        if (ts.eGB) ts.hGB = rp.A * rp.Delta * rp.Delta / (rp.B * rp.B);
    }
    return ts;
}

// A vertex is stable iff the reduced Hamiltonian has a local extremum there:
// the two boundary slopes of H - h_j along the cone of lemon directions must
// agree in sign.
bool nm1_stable(const ReducedParams& rp, double E) {
    const double w = rp.B * E + rp.Delta;
    const double base = w - 2.0 * rp.A * E;
    return (base + 2.0 * rp.C * E) * (base - 2.0 * rp.C * E) > 0;
}

bool nm2_stable(const ReducedParams& rp, double E) {
    const double w = rp.B * E + rp.Delta;
    const double base = -(w + 2.0 * rp.A * E);
    return (base + 2.0 * rp.C * E) * (base - 2.0 * rp.C * E) > 0;
}

std::vector<BifurcationEvent> sequence(const ReducedParams& rp, double eMax) {
    if (!(eMax > 0))
        throw Error(ErrorCode::InvalidParameter, "eMax must be positive");
    const ThresholdSet ts = thresholds(rp);

    std::vector<BifurcationEvent> events = events_from_thresholds(rp, ts, eMax);

    if (ts.eGB && *ts.eGB <= eMax &&
        !nm1_stable(rp, *ts.eGB) && !nm2_stable(rp, *ts.eGB)) {
        events.push_back({*ts.eGB, EventKind::Global, FamilyLabel::None});
    }

    std::sort(events.begin(), events.end(),
              [](const BifurcationEvent& a, const BifurcationEvent& b) { return a.e < b.e; });
    return events;
}

CatastropheCoords catastrophe_coords(const ReducedParams& rp, double E) {
    if (rp.A == 0.0)
        throw Error(ErrorCode::NotApplicable, "coupling parameter undefined for A = 0");
    if (!(E > 0))
        throw Error(ErrorCode::InvalidParameter, "E must be positive");
    CatastropheCoords cc;
    cc.coupling = rp.C / rp.A;
    cc.asymmetry = -(rp.B * E + rp.Delta) / (2.0 * rp.A * E);
    return cc;
}

RegionReport region_classify(double coupling, double asymmetry) {
    RegionReport r;
    const double c = coupling, a = asymmetry;
    if (std::fabs(c) <= 1e-9) {  // C = 0: uncoupled, only normal modes exist
        r.structurally_stable = std::fabs(std::fabs(a) - 1.0) > 1e-9;
        return r;
    }
    r.inclined_exists = std::fabs(a) < std::fabs(c - 1.0);
    r.loop_exists = std::fabs(a) < std::fabs(c + 1.0);
    r.inclined_stable = r.inclined_exists && c * (c - 1.0) > 0;
    r.loop_stable = r.loop_exists && c * (c + 1.0) > 0;
    r.n_families = (r.inclined_exists ? 1 : 0) + (r.loop_exists ? 1 : 0);
    r.n_stable = (r.inclined_stable ? 1 : 0) + (r.loop_stable ? 1 : 0);

    const double band = 1e-9;
    const bool at_crossing =
        (std::fabs(std::fabs(c) - 1.0) <= band && std::fabs(a) <= band) ||
        (std::fabs(c) <= band && std::fabs(std::fabs(a) - 1.0) <= band);
    r.structurally_stable = !at_crossing;
    return r;
}

Unfolding unfolding(const ReducedParams& rp, double E) {
    if (in_band(rp.A - rp.C, rp) || in_band(rp.A + rp.C, rp))
        throw Error(ErrorCode::NotApplicable, "unfolding undefined for A = +-C");
    Unfolding u;
    u.u1 = (rp.Delta + (rp.B - 2.0 * (rp.A - rp.C)) * E) / std::sqrt(std::fabs(rp.A - rp.C));
    u.u2 = (rp.Delta + (rp.B - 2.0 * (rp.A + rp.C)) * E) / std::sqrt(std::fabs(rp.A + rp.C));
    u.u3 = 0.0;
    u.germ = germ_coefficients(rp);
    return u;
}

double evaluate_f(double x, double y, const Unfolding& u) {
    const double x2 = x * x, y2 = y * y;
    return u.germ.eps1 * x2 * x2 + (u.germ.mu + u.u3) * x2 * y2 + u.germ.eps2 * y2 * y2 +
           u.u1 * x2 + u.u2 * y2;
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::FromNM1: return "from_nm1";
        case EventKind::ToNM1:   return "to_nm1";
        case EventKind::FromNM2: return "from_nm2";
        case EventKind::ToNM2:   return "to_nm2";
        case EventKind::Global:  return "global";
    }
    return "unknown";
}

const char* to_string(FamilyLabel family) {
    switch (family) {
        case FamilyLabel::InclinedStable:   return "inclined_stable";
        case FamilyLabel::InclinedUnstable: return "inclined_unstable";
        case FamilyLabel::LoopStable:       return "loop_stable";
        case FamilyLabel::LoopUnstable:     return "loop_unstable";
        case FamilyLabel::None:             return "none";
    }
    return "unknown";
}

} // namespace resonance
