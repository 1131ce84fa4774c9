#include "polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace resonance::detail {

namespace {

double abs_sum(const std::array<double, 5>& c, double z) {
    const double az = std::fabs(z);
    return std::fabs(c[0]) +
           az * (std::fabs(c[1]) + az * (std::fabs(c[2]) + az * (std::fabs(c[3]) + az * std::fabs(c[4]))));
}

double poly_second(const std::array<double, 5>& c, double z) {
    return 2 * c[2] + z * (6 * c[3] + z * 12 * c[4]);
}

void newton_on_poly(const std::array<double, 5>& c, double& x) {
    for (int it = 0; it < 4; ++it) {
        const double p = poly_eval(c, x);
        const double dp = poly_deriv(c, x);
        if (dp == 0) break;
        const double step = p / dp;
        if (!std::isfinite(step) || std::fabs(step) > 0.5 * std::max(1.0, std::fabs(x))) break;
        x -= step;
    }
}

void newton_on_deriv(const std::array<double, 5>& c, double& x) {
    for (int it = 0; it < 30; ++it) {
        const double dp = poly_deriv(c, x);
        const double ddp = poly_second(c, x);
        if (ddp == 0) break;
        const double step = dp / ddp;
        if (!std::isfinite(step)) break;
        x -= step;
        if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(x))) break;
    }
}

} // namespace

double poly_eval(const std::array<double, 5>& c, double z) {
    return c[0] + z * (c[1] + z * (c[2] + z * (c[3] + z * c[4])));
}

double poly_deriv(const std::array<double, 5>& c, double z) {
    return c[1] + z * (2 * c[2] + z * (3 * c[3] + z * 4 * c[4]));
}

std::vector<double> real_poly_roots(const std::array<double, 5>& c, int* n_complex) {
    if (n_complex) *n_complex = 0;

    double scale = 0;
    for (double ci : c) scale = std::max(scale, std::fabs(ci));
    if (scale == 0) return {};  // identically zero polynomial

    int deg = 4;
    while (deg > 0 && std::fabs(c[deg]) < 1e-14 * scale) --deg;
    if (deg == 0) return {};

    if (deg == 1) return {-c[0] / c[1]};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    const auto& ev = solver.eigenvalues();

    std::vector<double> roots;
    std::vector<int> pending;  // indices of conjugate-pair candidates
    for (int i = 0; i < deg; ++i) {
        const std::complex<double> z = ev[i];
        if (std::fabs(z.imag()) <= 1e-9 * std::max(1.0, std::fabs(z.real()))) {
            double x = z.real();
            newton_on_poly(c, x);
            roots.push_back(x);
        } else if (z.imag() > 0) {
            pending.push_back(i);
        }
    }

    // A real double root perturbed by rounding shows up as a conjugate pair
    // with a small imaginary part. Polish the real part onto the nearest
    // critical point of the polynomial: it is a genuine double root iff the
    // residual there is at rounding level.
    for (int i : pending) {
        double x = ev[i].real();
        newton_on_deriv(c, x);
        const double res = std::fabs(poly_eval(c, x));
        if (res <= 1e-10 * std::max(abs_sum(c, x), 1e-300) &&
            std::fabs(ev[i].imag()) <= 1e-3 * std::max(1.0, std::fabs(x))) {
            roots.push_back(x);
            roots.push_back(x);
        } else if (n_complex) {
            *n_complex += 2;
        }
    }

    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace resonance::detail
