#pragma once

#include <algorithm>
#include <cmath>

#include "taildep/special.hpp"

namespace taildep::detail {

// Bivariate standard normal CDF P(X <= x, Y <= y) with correlation rho.
// Moderate correlation: Gauss-Legendre on the arcsin representation
//   Phi2 = Phi(x)Phi(y) + (1/2pi) int_0^{asin rho} exp(-(x^2+y^2-2xy sin t)/(2 cos^2 t)) dt.
// |rho| > 0.925: Plackett identity integrated from the comonotone end with
// geometric panels resolving the exp(-(x-y)^2/(2 s^2)) boundary layer.
inline double bvn_cdf(double x, double y, double rho) {
    if (rho < -0.925) return normal_cdf(x) - bvn_cdf(x, -y, -rho);
    if (std::isinf(x) || std::isinf(y)) {
        if (x < 0.0 || y < 0.0) return 0.0;
        if (std::isinf(x) && x > 0.0) return normal_cdf(y);
        return normal_cdf(x);
    }
    if (rho == 0.0) return normal_cdf(x) * normal_cdf(y);
    if (std::abs(rho) <= 0.925) {
        const auto& gl = gauss_legendre(24);
        const double asr = std::asin(rho);
        double s = 0.0;
        for (int i = 0; i < 24; ++i) {
            const double t = 0.5 * asr * (gl.nodes[i] + 1.0);
            const double sn = std::sin(t);
            const double c2 = 1.0 - sn * sn;
            s += gl.weights[i] * std::exp(-(x * x + y * y - 2.0 * x * y * sn) / (2.0 * c2));
        }
        s *= 0.5 * asr / (2.0 * kPi);
        return std::max(0.0, std::min(1.0, s + normal_cdf(x) * normal_cdf(y)));
    }
    // rho > 0.925: Phi2(x,y;rho) = Phi(min(x,y)) - int over s = sqrt(1-t^2)
    const double b = std::sqrt((1.0 - rho) * (1.0 + rho));
    const double c = 0.5 * sqr(x - y);
    const double hk = x * y;
    const auto& gl = gauss_legendre(10);
    double integral = 0.0;
    double hi = b;
    for (int panel = 0; panel < 60; ++panel) {
        const double lo = hi * 0.25;
        double part = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double s = 0.5 * (hi + lo) + 0.5 * (hi - lo) * gl.nodes[i];
            const double rt = std::sqrt(1.0 - s * s);
            part += gl.weights[i] * std::exp(-c / (s * s) - hk / (1.0 + rt)) / rt;
        }
        part *= 0.5 * (hi - lo);
        integral += part;
        hi = lo;
        if (c > 0.0 && c / (hi * hi) > 745.0) break;  // exp underflow: remainder negligible
        if (panel > 6 && part < 1e-18 * std::max(integral, 1e-300)) break;
        if (hi < 1e-150) break;
    }
    const double base = normal_cdf(std::min(x, y));
    return std::max(0.0, std::min(1.0, base - integral / (2.0 * kPi)));
}

}  // namespace taildep::detail
