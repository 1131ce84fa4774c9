#include "resonance/emmap.hpp"

#include <algorithm>
#include <cmath>

namespace resonance {

namespace {

bool in_band(double x, const ReducedParams& rp, double tol = 1e-12) {
    return std::fabs(x) <= tol * degeneracy_scale(rp);
}

void require_nondegenerate(const ReducedParams& rp) {
    if (in_band(rp.C, rp) || in_band(rp.A - rp.C, rp) || in_band(rp.A + rp.C, rp))
        throw Error(ErrorCode::NotApplicable,
                    "energy-momentum map not available on degenerate strata");
}

struct CritValue {
    double h;
    BranchKind kind;
};

std::vector<CritValue> critical_values(const ReducedParams& rp, double E) {
    std::vector<CritValue> crit;
    crit.push_back({h_nm1(rp, E), BranchKind::NM1});
    crit.push_back({h_nm2(rp, E), BranchKind::NM2});
    try {
        if (auto cu = contact_upper(rp, E)) crit.push_back({cu->h, BranchKind::InclinedEnvelope});
    } catch (const Error&) {
    }
    try {
        if (auto cl = contact_lower(rp, E)) crit.push_back({cl->h, BranchKind::LoopEnvelope});
    } catch (const Error&) {
    }
    std::sort(crit.begin(), crit.end(),
              [](const CritValue& a, const CritValue& b) { return a.h < b.h; });
    return crit;
}

enum class VertexForm { Min, Max, Saddle };

/// Local shape of the reduced Hamiltonian at a vertex, from the two boundary
/// slopes along the lemon cone.
VertexForm vertex_form(const ReducedParams& rp, double E, bool nm1) {
    const double w = rp.B * E + rp.Delta;
    const double base = nm1 ? w - 2.0 * rp.A * E : -(w + 2.0 * rp.A * E);
    const double sp = base + 2.0 * rp.C * E;
    const double sm = base - 2.0 * rp.C * E;
    if (sp > 0 && sm > 0) return VertexForm::Min;
    if (sp < 0 && sm < 0) return VertexForm::Max;
    return VertexForm::Saddle;
}

} // namespace

std::vector<LevelComponent> level_components(const ReducedParams& rp, double E, double h) {
    ParabolaSpec spec{rp, E, h};
    const QRootReport rr = roots_q(spec);
    if (rr.degenerate) return {};

    // interior simple turning points; the arcs pinch Q below zero at Z = +-E
    std::vector<double> bps;
    for (const auto& r : rr.roots)
        if (r.z > -E && r.z < E && r.multiplicity == 1) bps.push_back(r.z);

    std::vector<LevelComponent> comps;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double mid = 0.5 * (bps[i] + bps[i + 1]);
        if (quartic_q(spec, mid) <= 0) continue;
        LevelComponent lc;
        lc.z_lo = bps[i];
        lc.z_hi = bps[i + 1];
        const double x_lo = parabola_x(spec, lc.z_lo);
        const double x_hi = parabola_x(spec, lc.z_hi);
        if (x_lo * x_hi < 0) {
            lc.rotational = true;
            lc.x_sign = 0;
        } else {
            lc.rotational = false;
            lc.x_sign = x_lo + x_hi > 0 ? +1 : -1;
        }
        comps.push_back(lc);
    }
    return comps;
}

Slice chambers(const ReducedParams& rp, double E) {
    require_nondegenerate(rp);
    if (!(E > 0))
        throw Error(ErrorCode::InvalidParameter, "E must be positive");

    Slice slice;
    slice.E = E;

    const ThresholdSet ts = thresholds(rp);
    for (const auto& t : {ts.e1U, ts.e2U, ts.e1L, ts.e2L, ts.eGB})
        if (t && std::fabs(E - *t) <= 1e-12 * std::max(*t, 1.0)) slice.at_threshold = true;
    if (rp.B != 0.0 && -rp.Delta / rp.B > 0) slice.e_cross = -rp.Delta / rp.B;

    const std::vector<CritValue> crit = critical_values(rp, E);

    // breakpoints: distinct critical values, ties keep the first kind
    std::vector<CritValue> bps;
    const double h_tol = 1e-13 * std::max(1.0, std::fabs(crit.front().h) + std::fabs(crit.back().h));
    for (const auto& cv : crit) {
        if (!bps.empty() && cv.h - bps.back().h <= h_tol) continue;
        bps.push_back(cv);
    }
    if (bps.size() < 2) return slice;

    const VertexForm q1 = vertex_form(rp, E, true);
    const VertexForm q2 = vertex_form(rp, E, false);

    // canonical family label of a component; components are born and die only
    // at the critical values, so one midpoint per interval suffices
    auto label_component = [&](const LevelComponent& lc, int n_rotational, bool leftmost,
                               const CritValue& below, const CritValue& above) {
        if (!lc.rotational)
            return lc.x_sign > 0 ? TorusFamily::AroundInclined : TorusFamily::AroundLoop;
        if (n_rotational == 2)
            return leftmost ? TorusFamily::AroundNM1 : TorusFamily::AroundNM2;
        // single rotational family: identify the vertex it shrinks onto
        const bool shrinks_on_nm1 = (below.kind == BranchKind::NM1 && q1 == VertexForm::Min) ||
                                    (above.kind == BranchKind::NM1 && q1 == VertexForm::Max);
        const bool shrinks_on_nm2 = (below.kind == BranchKind::NM2 && q2 == VertexForm::Min) ||
                                    (above.kind == BranchKind::NM2 && q2 == VertexForm::Max);
        if (shrinks_on_nm2 && !shrinks_on_nm1) return TorusFamily::AroundNM2;
        return TorusFamily::AroundNM1;  // NM1 side, or the annulus between both modes
    };

    struct Extent {
        std::size_t first, last;  // interval indices
        bool present = false;
    };
    Extent extents[4];

    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const double mid = 0.5 * (bps[k].h + bps[k + 1].h);
        const std::vector<LevelComponent> comps = level_components(rp, E, mid);
        int n_rot = 0;
        for (const auto& lc : comps) n_rot += lc.rotational ? 1 : 0;
        bool first_rot = true;
        for (const auto& lc : comps) {  // components arrive sorted by z
            bool leftmost = false;
            if (lc.rotational) {
                leftmost = first_rot;
                first_rot = false;
            }
            const TorusFamily fam = label_component(lc, n_rot, leftmost, bps[k], bps[k + 1]);
            Extent& ex = extents[static_cast<int>(fam)];
            if (!ex.present) {
                ex.first = ex.last = k;
                ex.present = true;
            } else {
                ex.last = k;
            }
        }
    }

    for (int f = 0; f < 4; ++f) {
        if (!extents[f].present) continue;
        Chamber ch;
        ch.h_lo = bps[extents[f].first].h;
        ch.h_hi = bps[extents[f].last + 1].h;
        ch.lower_kind = bps[extents[f].first].kind;
        ch.upper_kind = bps[extents[f].last + 1].kind;
        ch.family = static_cast<TorusFamily>(f);
        slice.chambers.push_back(ch);
    }

    std::sort(slice.chambers.begin(), slice.chambers.end(),
              [](const Chamber& a, const Chamber& b) {
                  return a.h_lo < b.h_lo || (a.h_lo == b.h_lo && a.h_hi < b.h_hi);
              });
    return slice;
}

std::vector<Branch> branches(const ReducedParams& rp, double eMax, int n) {
    require_nondegenerate(rp);
    if (!(eMax > 0) || n < 2)
        throw Error(ErrorCode::InvalidParameter, "need eMax > 0 and n >= 2");

    const ThresholdSet ts = thresholds(rp);
    std::vector<Branch> out;

    auto nm_stable_ranges = [&](const std::optional<double>& ta, const std::optional<double>& tb) {
        std::vector<double> cuts;
        if (ta && *ta < eMax) cuts.push_back(*ta);
        if (tb && *tb < eMax) cuts.push_back(*tb);
        std::sort(cuts.begin(), cuts.end());
        std::vector<std::pair<double, double>> stable;
        double lo = 0;
        bool is_stable = true;
        for (double c : cuts) {
            if (is_stable) stable.emplace_back(lo, c);
            lo = c;
            is_stable = !is_stable;
        }
        if (is_stable) stable.emplace_back(lo, eMax);
        return stable;
    };

    {
        Branch b1{BranchKind::NM1, {}, nm_stable_ranges(ts.e1U, ts.e1L)};
        Branch b2{BranchKind::NM2, {}, nm_stable_ranges(ts.e2U, ts.e2L)};
        for (int i = 0; i < n; ++i) {
            const double E = eMax * i / (n - 1);
            b1.samples.emplace_back(E, h_nm1(rp, E));
            b2.samples.emplace_back(E, h_nm2(rp, E));
        }
        out.push_back(std::move(b1));
        out.push_back(std::move(b2));
    }

    auto envelope = [&](BranchKind kind, const std::optional<double>& ta,
                        const std::optional<double>& tb, bool stable) {
        // existence sub-intervals of [0, eMax] probed between the thresholds
        std::vector<double> cuts{0.0, eMax};
        if (ta && *ta < eMax) cuts.push_back(*ta);
        if (tb && *tb < eMax) cuts.push_back(*tb);
        std::sort(cuts.begin(), cuts.end());

        Branch br{kind, {}, {}};
        const bool upper = kind == BranchKind::InclinedEnvelope;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double lo = cuts[i], hi = cuts[i + 1];
            if (hi - lo <= 0) continue;
            const double probe = 0.5 * (lo + hi);
            const auto cp = upper ? contact_upper(rp, probe) : contact_lower(rp, probe);
            if (!cp) continue;
            // keep samples strictly inside the existence interval
            const double pad = 1e-8 * std::max(hi, 1.0);
            if (lo > 0) lo += pad;
            hi -= pad;
            const int m = std::max(2, static_cast<int>(n * (hi - lo) / eMax));
            for (int j = 0; j <= m; ++j) {
                const double E = lo + (hi - lo) * j / m;
                if (E <= 0) continue;
                const auto c = upper ? contact_upper(rp, E) : contact_lower(rp, E);
                if (c) br.samples.emplace_back(E, c->h);
            }
            if (stable) br.stable_ranges.emplace_back(lo, hi);
        }
        if (!br.samples.empty()) out.push_back(std::move(br));
    };

    envelope(BranchKind::InclinedEnvelope, ts.e1U, ts.e2U, rp.C * (rp.C - rp.A) > 0);
    envelope(BranchKind::LoopEnvelope, ts.e1L, ts.e2L, rp.C * (rp.A + rp.C) > 0);
    return out;
}

RegularityReport classify_value(const ReducedParams& rp, double E, double h) {
    if (E <= 0) {
        if (E == 0 && h == 0) return {Regularity::CriticalBoundary, BranchKind::NM1};
        return {Regularity::Empty, std::nullopt};
    }
    const std::vector<CritValue> crit = critical_values(rp, E);

    double scale = std::fabs(h);
    for (const auto& cv : crit) scale = std::max(scale, std::fabs(cv.h));
    const double atol = 1e-10 * std::max(scale, 1e-30);
    for (const auto& cv : crit)
        if (std::fabs(h - cv.h) <= atol) return {Regularity::CriticalBoundary, cv.kind};

    if (level_components(rp, E, h).empty()) return {Regularity::Empty, std::nullopt};
    return {Regularity::Regular, std::nullopt};
}

const char* to_string(BranchKind kind) {
    switch (kind) {
        case BranchKind::NM1:              return "nm1";
        case BranchKind::NM2:              return "nm2";
        case BranchKind::InclinedEnvelope: return "inclined";
        case BranchKind::LoopEnvelope:     return "loop";
    }
    return "unknown";
}

const char* to_string(TorusFamily family) {
    switch (family) {
        case TorusFamily::AroundNM1:      return "around_nm1";
        case TorusFamily::AroundNM2:      return "around_nm2";
        case TorusFamily::AroundInclined: return "around_inclined";
        case TorusFamily::AroundLoop:     return "around_loop";
    }
    return "unknown";
}

} // namespace resonance
