#pragma once
#include <functional>
#include <optional>
#include <vector>

#include "resonance/params.hpp"
#include "resonance/reduced.hpp"

namespace resonance {

/// Cartesian phase-space state of the normal form.
struct State4 {
    double P1 = 0, P2 = 0, Q1 = 0, Q2 = 0;
};

/// Hilbert-basis invariants of the oscillator symmetry, plus the derived
/// reduced coordinates where defined.
struct Invariants {
    double I0, I1, I2, I3;
    double X, Y, Z;              ///< X = I1^2 - I2^2, Y = 2 I1 I2, Z = I3
    double J;                    ///< J1 = (I0 + I3)/2
    std::optional<double> psi;   ///< atan2(I2, I1); absent on the normal modes (J = 0 or J = I0)
};

struct SectionPoint {
    double Q1, P1;
    double t;
};

struct IntegrationOptions {
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
    double init_dt = 1e-3;
    unsigned long max_steps = 200000000ul;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<State4> states;
};

/// Quartic normal form in Cartesian variables, alphas reconstructed from rp
/// (alpha4 = 2C, alpha1 - alpha2 = 2B, alpha1 + alpha2 = 2(A1 + A),
///  alpha3 = 2(A1 - A), delta = 2 Delta).
double k_cartesian(const ReducedParams& rp, const State4& s);

/// Oscillator energy I0 of a state.
double energy_i0(const State4& s);

/// Time derivative of the state under Hamilton's equations for k_cartesian.
State4 k_flow(const ReducedParams& rp, const State4& s);

/// Adaptive high-order integration of the normal-form flow; relative drift
/// of K and I0 stays below ~1e-9 over 1e3 characteristic periods at the
/// default tolerances. Throws StepFailure on blow-up.
Trajectory integrate(const ReducedParams& rp, const State4& s0, double t_end,
                     const IntegrationOptions& opt = {});

/// Step-wise observer variant; the callback sees every accepted step.
void integrate_observe(const ReducedParams& rp, const State4& s0, double t_end,
                       const std::function<void(double, const State4&)>& cb,
                       const IntegrationOptions& opt = {});

/// Crossings of the section Q2 = 0, P2 > 0, root-polished to 1e-12 in Q2.
/// Each seed must satisfy I0 = E (throws InvalidSeed otherwise).
std::vector<std::vector<SectionPoint>>
poincare(const ReducedParams& rp, double E, const std::vector<State4>& seeds,
         int nCross, const IntegrationOptions& opt = {});

/// Invariants and derived reduced coordinates of a state.
Invariants invariants_of(const State4& s);

/// State on the energy level I0 = E with given reduced coordinates
/// (J1 = (E+Z)/2, phase difference psi, section phase phi2).
State4 state_from_reduced(double E, double Z, double psi, double phi2 = 0.0);

struct ReducedTrajectory {
    std::vector<double> t;
    std::vector<LemonPoint> points;
};

/// Poisson flow on the lemon space:
///   X' = -4 Y (B E + Delta + 2 A Z)
///   Y' =  4 X (B E + Delta + 2 A Z) - 8 C Z (E^2 - Z^2)
///   Z' =  4 C Y.
/// Conserves the reduced Hamiltonian and the lemon constraint; throws
/// ConstraintDrift if either drifts beyond 1e-9 relative.
ReducedTrajectory reduced_flow(const ReducedParams& rp, const LemonPoint& p0,
                               double t_end, const IntegrationOptions& opt = {});

void reduced_flow_observe(const ReducedParams& rp, const LemonPoint& p0, double t_end,
                          const std::function<void(double, const LemonPoint&)>& cb,
                          const IntegrationOptions& opt = {});

/// Zero crossings of f(state) with f' > 0 along the trajectory, event times
/// polished to ~1e-13. Used for return-time and frequency measurements.
std::vector<double> crossing_times(const ReducedParams& rp, const State4& s0, double t_end,
                                   const std::function<double(const State4&)>& f,
                                   const IntegrationOptions& opt = {});

/// Integral of a state function along the trajectory, carried as an extra
/// component of the integrated system (accurate to the step tolerance).
double accumulate_along(const ReducedParams& rp, const State4& s0, double t_end,
                        const std::function<double(const State4&)>& integrand,
                        const IntegrationOptions& opt = {});

} // namespace resonance
