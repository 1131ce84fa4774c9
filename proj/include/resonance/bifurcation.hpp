#pragma once
#include <optional>
#include <vector>

#include "resonance/params.hpp"
#include "resonance/reduced.hpp"

namespace resonance {

/// Critical values of the distinguished parameter E. A threshold is absent
/// when its closed form yields a non-positive value (only E > 0 is
/// physical). eGB is present iff -Delta/B > 0.
struct ThresholdSet {
    std::optional<double> e1U;  ///< Delta / (2(A-C) - B), inclined family meets NM1
    std::optional<double> e2U;  ///< Delta / (2(C-A) - B), inclined family meets NM2
    std::optional<double> e1L;  ///< Delta / (2(A+C) - B), loop family meets NM1
    std::optional<double> e2L;  ///< Delta / (-2(A+C) - B), loop family meets NM2
    std::optional<double> eGB;  ///< -Delta/B, axis-aligned parabola through both vertices
    std::optional<double> hGB;  ///< A Delta^2 / B^2
};

enum class EventKind { FromNM1, ToNM1, FromNM2, ToNM2, Global };

enum class FamilyLabel {
    InclinedStable, InclinedUnstable, LoopStable, LoopUnstable, None
};

struct BifurcationEvent {
    double e;
    EventKind kind;
    FamilyLabel family;
};

/// Threshold energies from the closed forms. Valid for A != +-C and C != 0;
/// on the A = +-C strata only the non-degenerate arc's thresholds are
/// returned. Throws NotApplicable when C = 0.
ThresholdSet thresholds(const ReducedParams& rp);

/// Ordered bifurcation events up to eMax: family births/deaths at the
/// threshold energies with stability labels from the contact indices,
/// plus the global-bifurcation event at eGB when both normal modes are
/// unstable there.
std::vector<BifurcationEvent> sequence(const ReducedParams& rp, double eMax);

/// Stability of the normal modes at energy E (vertex is a local extremum
/// of the reduced Hamiltonian). Flips at each threshold touching the mode.
bool nm1_stable(const ReducedParams& rp, double E);
bool nm2_stable(const ReducedParams& rp, double E);

struct CatastropheCoords {
    double coupling;   ///< C/A
    double asymmetry;  ///< Z_V(E)/E = -(B E + Delta)/(2 A E)
};

/// Requires A != 0 and E > 0.
CatastropheCoords catastrophe_coords(const ReducedParams& rp, double E);

/// Census of periodic-orbit families in general position at a point of
/// the (coupling, asymmetry) plane. The four bifurcation lines are
/// asym = +-(coupling - 1) and asym = +-(coupling + 1); the inclined
/// family exists for |asym| < |coupling - 1| and is stable iff
/// coupling (coupling - 1) > 0, and likewise for loops with coupling + 1.
struct RegionReport {
    bool inclined_exists = false;
    bool inclined_stable = false;
    bool loop_exists = false;
    bool loop_stable = false;
    int n_families = 0;
    int n_stable = 0;
    bool structurally_stable = true;  ///< false only at the four line crossings
};

RegionReport region_classify(double coupling, double asymmetry);

/// First-order unfolding of the central singularity
/// F(x,y) = eps1 x^4 + (mu + u3) x^2 y^2 + eps2 y^4 + u1 x^2 + u2 y^2.
struct Unfolding {
    double u1, u2, u3;
    Germ germ;
};

/// u1 = (Delta + (B - 2(A-C))E)/sqrt(|A-C|), u2 likewise with A+C, u3 = 0.
/// Throws NotApplicable when A = +-C.
Unfolding unfolding(const ReducedParams& rp, double E);

double evaluate_f(double x, double y, const Unfolding& u);

const char* to_string(EventKind kind);
const char* to_string(FamilyLabel family);

} // namespace resonance
