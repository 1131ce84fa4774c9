#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "resonance/bifurcation.hpp"

namespace resonance {

enum class BranchKind { NM1, NM2, InclinedEnvelope, LoopEnvelope };

/// Curve of critical values of the energy-momentum map in the (E,h)-plane.
struct Branch {
    BranchKind kind;
    std::vector<std::pair<double, double>> samples;        ///< (E, h)
    std::vector<std::pair<double, double>> stable_ranges;  ///< E-intervals
};

enum class TorusFamily { AroundNM1, AroundNM2, AroundInclined, AroundLoop };

/// Open h-interval of regular values at fixed E filled by one family of tori.
struct Chamber {
    double h_lo = 0, h_hi = 0;
    BranchKind lower_kind = BranchKind::NM1;
    BranchKind upper_kind = BranchKind::NM2;
    TorusFamily family = TorusFamily::AroundNM1;
};

/// Vertical slice of the image of the energy-momentum map.
struct Slice {
    double E = 0;
    std::vector<Chamber> chambers;
    bool at_threshold = false;       ///< E within tolerance of a ThresholdSet value
    std::optional<double> e_cross;   ///< E = -Delta/B where h1 = h2 inside a domain
};

/// Boundary branches sampled on [0, eMax] with n >= 2 points; envelope
/// branches sampled only on their existence intervals, refined to 1e-8
/// near the thresholds. Throws NotApplicable on degenerate strata.
std::vector<Branch> branches(const ReducedParams& rp, double eMax, int n);

/// Chamber decomposition of the slice at E.
Slice chambers(const ReducedParams& rp, double E);

enum class Regularity { Regular, CriticalBoundary, Empty };

struct RegularityReport {
    Regularity kind;
    std::optional<BranchKind> branch;  ///< set for CriticalBoundary
};

/// Classify (E,h) against the image of the energy-momentum map.
RegularityReport classify_value(const ReducedParams& rp, double E, double h);

/// One connected component of the level set {H = h} on the reduced space.
struct LevelComponent {
    double z_lo = 0, z_hi = 0;  ///< turning points
    bool rotational = false;    ///< winds around the Z-axis (torus around a normal mode)
    int x_sign = 0;             ///< +1 upper-side libration, -1 lower-side, 0 rotational
};

/// Components of the level set; empty when h is outside the image.
std::vector<LevelComponent> level_components(const ReducedParams& rp, double E, double h);

const char* to_string(BranchKind kind);
const char* to_string(TorusFamily family);

} // namespace resonance
