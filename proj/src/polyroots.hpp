#pragma once
#include <array>
#include <vector>

namespace resonance::detail {

/// Real roots of c[0] + c[1] z + ... + c[4] z^4, ascending. Leading
/// near-zero coefficients are dropped relative to the largest magnitude.
/// n_complex receives the count of discarded complex roots.
std::vector<double> real_poly_roots(const std::array<double, 5>& c, int* n_complex = nullptr);

/// p(z) and p'(z) for the same coefficient layout.
double poly_eval(const std::array<double, 5>& c, double z);
double poly_deriv(const std::array<double, 5>& c, double z);

} // namespace resonance::detail
