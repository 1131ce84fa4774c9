#include "resonance/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace resonance {

namespace {

namespace ode = boost::numeric::odeint;

using Real = long double;
using CartState = std::array<Real, 4>;  // P1, P2, Q1, Q2
using LemState = std::array<Real, 3>;   // X, Y, Z

struct AlphaSet {
    Real a1, a2, a3, a4, delta;
};

AlphaSet alpha_set(const ReducedParams& rp) {
    const Alphas a = alphas_from_reduced(rp);
    return {(Real)a.alpha1, (Real)a.alpha2, (Real)a.alpha3, (Real)a.alpha4, (Real)a.delta};
}

Real k_value(const AlphaSet& a, const CartState& s) {
    const Real P1 = s[0], P2 = s[1], Q1 = s[2], Q2 = s[3];
    const Real r1 = P1 * P1 + Q1 * Q1;
    const Real r2 = P2 * P2 + Q2 * Q2;
    return 0.5L * (1.0L + a.delta) * r1 + 0.5L * r2 + 0.25L * a.a1 * r1 * r1 +
           0.25L * a.a2 * r2 * r2 + 0.25L * a.a3 * r1 * r2 +
           0.5L * a.a4 * (4.0L * P1 * Q1 * P2 * Q2 + (P1 * P1 - Q1 * Q1) * (P2 * P2 - Q2 * Q2));
}

void cart_rhs(const AlphaSet& a, const CartState& s, CartState& ds) {
    const Real P1 = s[0], P2 = s[1], Q1 = s[2], Q2 = s[3];
    const Real r1 = P1 * P1 + Q1 * Q1;
    const Real r2 = P2 * P2 + Q2 * Q2;
    const Real m1 = P1 * P1 - Q1 * Q1;
    const Real m2 = P2 * P2 - Q2 * Q2;
    const Real w1 = (1.0L + a.delta) + a.a1 * r1 + 0.5L * a.a3 * r2;
    const Real w2 = 1.0L + a.a2 * r2 + 0.5L * a.a3 * r1;
    // dQ = dK/dP, dP = -dK/dQ
    ds[2] = P1 * (w1 + a.a4 * m2) + 2.0L * a.a4 * Q1 * P2 * Q2;
    ds[3] = P2 * (w2 + a.a4 * m1) + 2.0L * a.a4 * Q2 * P1 * Q1;
    ds[0] = -(Q1 * (w1 - a.a4 * m2) + 2.0L * a.a4 * P1 * P2 * Q2);
    ds[1] = -(Q2 * (w2 - a.a4 * m1) + 2.0L * a.a4 * P2 * P1 * Q1);
}

State4 to_state4(const CartState& s) {
    return {(double)s[0], (double)s[1], (double)s[2], (double)s[3]};
}

CartState from_state4(const State4& s) {
    return {(Real)s.P1, (Real)s.P2, (Real)s.Q1, (Real)s.Q2};
}

void check_finite(const CartState& s, Real t) {
    for (Real v : s)
        if (!std::isfinite((double)v) || std::fabs((double)v) > 1e8)
            throw Error(ErrorCode::StepFailure,
                        "trajectory blow-up at t = " + std::to_string((double)t));
}

template <class State, class Rhs>
class DenseRun {
public:
    DenseRun(Rhs rhs, const State& x0, const IntegrationOptions& opt)
        : rhs_(rhs),
          stepper_(ode::make_dense_output((Real)opt.abs_tol, (Real)opt.rel_tol,
                                          ode::runge_kutta_dopri5<State, Real>())),
          max_steps_(opt.max_steps) {
        stepper_.initialize(x0, 0.0L, (Real)opt.init_dt);
    }

    /// Advance one accepted step; returns the new time.
    Real step() {
        if (++n_steps_ > max_steps_)
            throw Error(ErrorCode::StepFailure, "step budget exhausted");
        auto interval = stepper_.do_step(rhs_);
        return interval.second;
    }

    Real current_time() const { return stepper_.current_time(); }
    Real previous_time() const { return stepper_.previous_time(); }
    const State& current_state() const { return stepper_.current_state(); }

    void state_at(Real t, State& out) { stepper_.calc_state(t, out); }

    /// Bisect a sign change of g on the last step interval.
    Real locate_zero(const std::function<Real(const State&)>& g) {
        Real lo = previous_time(), hi = current_time();
        State x;
        state_at(lo, x);
        Real glo = g(x);
        for (int it = 0; it < 90; ++it) {
            const Real mid = 0.5L * (lo + hi);
            state_at(mid, x);
            const Real gm = g(x);
            if ((glo <= 0 && gm <= 0) || (glo > 0 && gm > 0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
            if (hi - lo < 1e-16L * std::max((Real)1.0L, std::fabs(hi))) break;
        }
        return 0.5L * (lo + hi);
    }

private:
    Rhs rhs_;
    decltype(ode::make_dense_output((Real)1e-12, (Real)1e-12,
                                    ode::runge_kutta_dopri5<State, Real>())) stepper_;
    unsigned long max_steps_;
    unsigned long n_steps_ = 0;
};

} // namespace

double k_cartesian(const ReducedParams& rp, const State4& s) {
    return (double)k_value(alpha_set(rp), from_state4(s));
}

double energy_i0(const State4& s) {
    return 0.5 * (s.P1 * s.P1 + s.P2 * s.P2 + s.Q1 * s.Q1 + s.Q2 * s.Q2);
}

State4 k_flow(const ReducedParams& rp, const State4& s) {
    CartState ds;
    cart_rhs(alpha_set(rp), from_state4(s), ds);
    return to_state4(ds);
}

void integrate_observe(const ReducedParams& rp, const State4& s0, double t_end,
                       const std::function<void(double, const State4&)>& cb,
                       const IntegrationOptions& opt) {
    if (!(t_end > 0))
        throw Error(ErrorCode::InvalidParameter, "t_end must be positive");
    const AlphaSet a = alpha_set(rp);
    auto rhs = [&a](const CartState& x, CartState& dx, Real) { cart_rhs(a, x, dx); };
    DenseRun<CartState, decltype(rhs)> run(rhs, from_state4(s0), opt);

    cb(0.0, s0);
    while (run.current_time() < (Real)t_end) {
        run.step();
        check_finite(run.current_state(), run.current_time());
        if (run.current_time() >= (Real)t_end) {
            CartState x;
            run.state_at((Real)t_end, x);
            cb(t_end, to_state4(x));
        } else {
            cb((double)run.current_time(), to_state4(run.current_state()));
        }
    }
}

Trajectory integrate(const ReducedParams& rp, const State4& s0, double t_end,
                     const IntegrationOptions& opt) {
    Trajectory tr;
    integrate_observe(rp, s0, t_end,
                      [&tr](double t, const State4& s) {
                          tr.t.push_back(t);
                          tr.states.push_back(s);
                      },
                      opt);
    return tr;
}

std::vector<double> crossing_times(const ReducedParams& rp, const State4& s0, double t_end,
                                   const std::function<double(const State4&)>& f,
                                   const IntegrationOptions& opt) {
    const AlphaSet a = alpha_set(rp);
    auto rhs = [&a](const CartState& x, CartState& dx, Real) { cart_rhs(a, x, dx); };
    DenseRun<CartState, decltype(rhs)> run(rhs, from_state4(s0), opt);

    auto g = [&f](const CartState& x) -> Real { return (Real)f(to_state4(x)); };

    std::vector<double> times;
    Real g_prev = g(from_state4(s0));
    while (run.current_time() < (Real)t_end) {
        run.step();
        check_finite(run.current_state(), run.current_time());
        const Real g_cur = g(run.current_state());
        if (g_prev <= 0 && g_cur > 0) {
            const Real tc = run.locate_zero(g);
            if (tc <= (Real)t_end) times.push_back((double)tc);
        }
        g_prev = g_cur;
    }
    return times;
}

double accumulate_along(const ReducedParams& rp, const State4& s0, double t_end,
                        const std::function<double(const State4&)>& integrand,
                        const IntegrationOptions& opt) {
    using AugState = std::array<Real, 5>;
    const AlphaSet a = alpha_set(rp);
    auto rhs = [&](const AugState& x, AugState& dx, Real) {
        CartState c{x[0], x[1], x[2], x[3]}, dc;
        cart_rhs(a, c, dc);
        for (int i = 0; i < 4; ++i) dx[i] = dc[i];
        dx[4] = (Real)integrand(to_state4(c));
    };
    DenseRun<AugState, decltype(rhs)> run(rhs, {(Real)s0.P1, (Real)s0.P2, (Real)s0.Q1,
                                                (Real)s0.Q2, 0.0L},
                                          opt);
    while (run.current_time() < (Real)t_end) run.step();
    AugState x;
    run.state_at((Real)t_end, x);
    return (double)x[4];
}

std::vector<std::vector<SectionPoint>>
poincare(const ReducedParams& rp, double E, const std::vector<State4>& seeds,
         int nCross, const IntegrationOptions& opt) {
    if (nCross <= 0)
        throw Error(ErrorCode::InvalidParameter, "nCross must be positive");
    const AlphaSet a = alpha_set(rp);

    std::vector<std::vector<SectionPoint>> out;
    out.reserve(seeds.size());
    for (const State4& seed : seeds) {
        if (std::fabs(energy_i0(seed) - E) > 1e-9 * std::max(E, 1.0))
            throw Error(ErrorCode::InvalidSeed, "seed not on the energy level I0 = E");

        auto rhs = [&a](const CartState& x, CartState& dx, Real) { cart_rhs(a, x, dx); };
        DenseRun<CartState, decltype(rhs)> run(rhs, from_state4(seed), opt);
        auto g = [](const CartState& x) -> Real { return x[3]; };  // Q2

        std::vector<SectionPoint> pts;
        Real q2_prev = (Real)seed.Q2;
        while ((int)pts.size() < nCross) {
            run.step();
            check_finite(run.current_state(), run.current_time());
            const Real q2_cur = run.current_state()[3];
            if (q2_prev * q2_cur < 0 || (q2_prev != 0 && q2_cur == 0)) {
                const Real tc = run.locate_zero(g);
                CartState x;
                run.state_at(tc, x);
                if (x[1] > 0)  // P2 > 0 half of the section
                    pts.push_back({(double)x[2], (double)x[0], (double)tc});
            }
            q2_prev = q2_cur;
        }
        out.push_back(std::move(pts));
    }
    return out;
}

Invariants invariants_of(const State4& s) {
    Invariants inv;
    inv.I0 = energy_i0(s);
    inv.I1 = s.P1 * s.P2 + s.Q1 * s.Q2;
    inv.I2 = s.Q1 * s.P2 - s.Q2 * s.P1;
    inv.I3 = 0.5 * (s.P1 * s.P1 - s.P2 * s.P2 + s.Q1 * s.Q1 - s.Q2 * s.Q2);
    inv.X = inv.I1 * inv.I1 - inv.I2 * inv.I2;
    inv.Y = 2.0 * inv.I1 * inv.I2;
    inv.Z = inv.I3;
    inv.J = 0.5 * (inv.I0 + inv.I3);
    const double amp2 = inv.I1 * inv.I1 + inv.I2 * inv.I2;  // 4 J1 J2
    if (amp2 > 1e-24 * std::max(1.0, inv.I0 * inv.I0))
        inv.psi = std::atan2(inv.I2, inv.I1);
    return inv;
}

State4 state_from_reduced(double E, double Z, double psi, double phi2) {
    if (std::fabs(Z) > E)
        throw Error(ErrorCode::InvalidParameter, "need |Z| <= E");
    const double j1 = 0.5 * (E + Z);
    const double j2 = 0.5 * (E - Z);
    const double phi1 = phi2 + psi;
    // canonical angles: Q = sqrt(2J) cos(phi), P = -sqrt(2J) sin(phi), so that
    // atan2(I2, I1) recovers psi = phi1 - phi2
    State4 s;
    s.Q1 = std::sqrt(2.0 * j1) * std::cos(phi1);
    s.P1 = -std::sqrt(2.0 * j1) * std::sin(phi1);
    s.Q2 = std::sqrt(2.0 * j2) * std::cos(phi2);
    s.P2 = -std::sqrt(2.0 * j2) * std::sin(phi2);
    return s;
}

void reduced_flow_observe(const ReducedParams& rp, const LemonPoint& p0, double t_end,
                          const std::function<void(double, const LemonPoint&)>& cb,
                          const IntegrationOptions& opt) {
    const double E = p0.E;
    if (!(E > 0))
        throw Error(ErrorCode::InvalidParameter, "E must be positive");
    const double lemon_scale = E * E * E * E;
    {
        const double l0 = p0.X * p0.X + p0.Y * p0.Y -
                          (E + p0.Z) * (E + p0.Z) * (E - p0.Z) * (E - p0.Z);
        if (std::fabs(l0) > 1e-9 * lemon_scale)
            throw Error(ErrorCode::InvalidParameter, "initial point violates the lemon constraint");
    }

    const Real A = rp.A, B = rp.B, C = rp.C, D = rp.Delta;
    const Real Er = E;
    auto rhs = [&](const LemState& x, LemState& dx, Real) {
        const Real lin = B * Er + D + 2.0L * A * x[2];
        const Real s2 = (Er - x[2]) * (Er + x[2]);
        dx[0] = -4.0L * x[1] * lin;
        dx[1] = 4.0L * x[0] * lin - 8.0L * C * x[2] * s2;
        dx[2] = 4.0L * C * x[1];
    };
    DenseRun<LemState, decltype(rhs)> run(rhs, {(Real)p0.X, (Real)p0.Y, (Real)p0.Z}, opt);

    const double w = rp.B * E + rp.Delta;
    const double h_scale = std::max(
        {std::fabs(rp.C) * E * E + std::fabs(w) * E + std::fabs(rp.A) * E * E, 1e-30});
    const double h0 = rp.C * p0.X + w * p0.Z + rp.A * p0.Z * p0.Z;

    auto emit = [&](double t, const LemState& x) {
        const double X = (double)x[0], Y = (double)x[1], Z = (double)x[2];
        const double h = rp.C * X + w * Z + rp.A * Z * Z;
        const double l = X * X + Y * Y - (E + Z) * (E + Z) * (E - Z) * (E - Z);
        if (std::fabs(h - h0) > 1e-9 * std::max(h_scale, std::fabs(h0)))
            throw Error(ErrorCode::ConstraintDrift, "reduced energy drifted beyond 1e-9");
        if (std::fabs(l) > 1e-9 * lemon_scale)
            throw Error(ErrorCode::ConstraintDrift, "lemon constraint drifted beyond 1e-9");
        cb(t, LemonPoint{X, Y, Z, E});
    };

    emit(0.0, {(Real)p0.X, (Real)p0.Y, (Real)p0.Z});
    while (run.current_time() < (Real)t_end) {
        run.step();
        if (run.current_time() >= (Real)t_end) {
            LemState x;
            run.state_at((Real)t_end, x);
            emit(t_end, x);
        } else {
            emit((double)run.current_time(), run.current_state());
        }
    }
}

ReducedTrajectory reduced_flow(const ReducedParams& rp, const LemonPoint& p0, double t_end,
                               const IntegrationOptions& opt) {
    ReducedTrajectory tr;
    reduced_flow_observe(rp, p0, t_end,
                         [&tr](double t, const LemonPoint& p) {
                             tr.t.push_back(t);
                             tr.points.push_back(p);
                         },
                         opt);
    return tr;
}

} // namespace resonance
