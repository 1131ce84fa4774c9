#include "resonance/params.hpp"

#include <cmath>

namespace resonance {

namespace {

void require_finite(double x, const char* name) {
    if (!std::isfinite(x))
        throw Error(ErrorCode::InvalidParameter, std::string(name) + " is not finite");
}

} // namespace

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParameter:    return "invalid_parameter";
        case ErrorCode::DegenerateGerm:      return "degenerate_germ";
        case ErrorCode::NotApplicable:       return "not_applicable";
        case ErrorCode::UseDegenerateBranch: return "use_degenerate_branch";
        case ErrorCode::DegenerateContact:   return "degenerate_contact";
        case ErrorCode::NonRegularValue:     return "non_regular_value";
        case ErrorCode::DegenerateRoots:     return "degenerate_roots";
        case ErrorCode::PoleOnPath:          return "pole_on_path";
        case ErrorCode::InvalidSeed:         return "invalid_seed";
        case ErrorCode::StepFailure:         return "step_failure";
        case ErrorCode::ConstraintDrift:     return "constraint_drift";
        case ErrorCode::InvalidC2:           return "invalid_c2";
    }
    return "unknown";
}

Alphas alphas_from_natural(const NaturalCoefficients& nat, double delta) {
    require_finite(nat.b30, "b30");
    require_finite(nat.b12, "b12");
    require_finite(nat.b40, "b40");
    require_finite(nat.b22, "b22");
    require_finite(nat.b04, "b04");
    require_finite(delta, "delta");

    Alphas a;
    a.alpha1 = 1.5 * (nat.b40 - 2.5 * nat.b30 * nat.b30);
    a.alpha2 = 0.5 * (3.0 * nat.b04 - (5.0 / 6.0) * nat.b12 * nat.b12);
    a.alpha3 = nat.b22 - nat.b12 * (3.0 * nat.b30 + (2.0 / 3.0) * nat.b12);
    a.alpha4 = 0.25 * (nat.b22 + nat.b12 * (nat.b30 - 2.0 * nat.b12));
    a.delta = delta;
    return a;
}

ReducedParams reduced_from_alphas(const Alphas& a) {
    require_finite(a.alpha1, "alpha1");
    require_finite(a.alpha2, "alpha2");
    require_finite(a.alpha3, "alpha3");
    require_finite(a.alpha4, "alpha4");
    require_finite(a.delta, "delta");

    ReducedParams rp;
    rp.A = (a.alpha1 + a.alpha2 - a.alpha3) / 4.0;
    rp.B = (a.alpha1 - a.alpha2) / 2.0;
    rp.C = a.alpha4 / 2.0;
    rp.Delta = a.delta / 2.0;
    rp.A1 = (a.alpha1 + a.alpha2 + a.alpha3) / 4.0;
    return rp;
}

Alphas alphas_from_reduced(const ReducedParams& rp) {
    Alphas a;
    a.alpha1 = rp.A1 + rp.A + rp.B;
    a.alpha2 = rp.A1 + rp.A - rp.B;
    a.alpha3 = 2.0 * (rp.A1 - rp.A);
    a.alpha4 = 2.0 * rp.C;
    a.delta = 2.0 * rp.Delta;
    return a;
}

double degeneracy_scale(const ReducedParams& rp) {
    return std::max({std::fabs(rp.A), std::fabs(rp.C), 1.0});
}

Germ germ_coefficients(const ReducedParams& rp) {
    const double d = rp.A * rp.A - rp.C * rp.C;
    if (rp.A == rp.C || rp.A == -rp.C || d == 0.0)
        throw Error(ErrorCode::DegenerateGerm, "germ undefined for A = +-C");
    Germ g;
    g.mu = 2.0 * rp.A / std::sqrt(std::fabs(d));
    g.eps1 = (rp.A - rp.C) > 0 ? +1 : -1;
    g.eps2 = (rp.A + rp.C) > 0 ? +1 : -1;
    return g;
}

CaseTag classify_case(const ReducedParams& rp, double tol) {
    if (tol < 0)
        throw Error(ErrorCode::InvalidParameter, "tolerance must be non-negative");
    const double band = tol * degeneracy_scale(rp);
    if (std::fabs(rp.A - rp.C) <= band) return CaseTag::DegenerateAeqC;
    if (std::fabs(rp.A + rp.C) <= band) return CaseTag::DegenerateAeqMinusC;
    if (std::fabs(rp.C) <= band) return CaseTag::DegenerateCzero;
    if (std::fabs(rp.A) <= band) return CaseTag::DegenerateAzero;
    if (rp.A < 0) return rp.C > 0 ? CaseTag::Reference : CaseTag::CompA;
    return rp.C < 0 ? CaseTag::CompB : CaseTag::CompC;
}

bool is_degenerate(CaseTag tag) {
    switch (tag) {
        case CaseTag::Reference:
        case CaseTag::CompA:
        case CaseTag::CompB:
        case CaseTag::CompC:
            return false;
        default:
            return true;
    }
}

SymmetryMap symmetry_map(CaseTag tag) {
    switch (tag) {
        case CaseTag::Reference: return {ReflectionLabel::Identity, false, false};
        case CaseTag::CompA:     return {ReflectionLabel::R2, false, true};
        case CaseTag::CompB:     return {ReflectionLabel::R1, true, false};
        case CaseTag::CompC:     return {ReflectionLabel::R2R1, true, true};
        default:
            throw Error(ErrorCode::NotApplicable, "no reflection map for degenerate cases");
    }
}

const char* to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::Reference:           return "reference";
        case CaseTag::CompA:               return "complementary_a";
        case CaseTag::CompB:               return "complementary_b";
        case CaseTag::CompC:               return "complementary_c";
        case CaseTag::DegenerateAeqC:      return "degenerate_a_eq_c";
        case CaseTag::DegenerateAeqMinusC: return "degenerate_a_eq_minus_c";
        case CaseTag::DegenerateCzero:     return "degenerate_c_zero";
        case CaseTag::DegenerateAzero:     return "degenerate_a_zero";
    }
    return "unknown";
}

const char* to_string(ReflectionLabel label) {
    switch (label) {
        case ReflectionLabel::Identity: return "identity";
        case ReflectionLabel::R1:       return "R1";
        case ReflectionLabel::R2:       return "R2";
        case ReflectionLabel::R2R1:     return "R2*R1";
    }
    return "unknown";
}

} // namespace resonance
