#pragma once

#include <cmath>
#include <stdexcept>

#include "taildep/optim.hpp"
#include "taildep/rng.hpp"
#include "taildep/special.hpp"

namespace taildep {

// Generalized Inverse Gaussian GIG(lambda, chi, psi) with density
//   f(x) proportional to x^{lambda-1} exp(-(chi/x + psi x)/2),  x > 0.
// Boundary cases chi=0 (gamma) and psi=0 (inverse gamma) are exact samplers.

inline bool gig_admissible(double lam, double chi, double psi) {
    if (chi < 0.0 || psi < 0.0) return false;
    if (lam > 0.0) return psi > 0.0;
    if (lam == 0.0) return chi > 0.0 && psi > 0.0;
    return chi > 0.0;
}

inline void gig_check(double lam, double chi, double psi) {
    if (!gig_admissible(lam, chi, psi))
        throw std::domain_error("gig: (lambda, chi, psi) outside the admissible domain");
}

inline double gig_mean(double lam, double chi, double psi) {
    gig_check(lam, chi, psi);
    if (chi == 0.0) return 2.0 * lam / psi;                       // Gamma(lam, rate psi/2)
    if (psi == 0.0) {
        if (lam >= -1.0) return std::numeric_limits<double>::infinity();
        return (chi / 2.0) / (-lam - 1.0);                        // InvGamma(-lam, chi/2)
    }
    const double w = std::sqrt(chi * psi);
    return std::sqrt(chi / psi) * bessel_k_scaled(lam + 1.0, w) / bessel_k_scaled(lam, w);
}

inline double gig_logpdf(double x, double lam, double chi, double psi) {
    gig_check(lam, chi, psi);
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    double logz;
    if (chi == 0.0) {   // Gamma(lam, rate psi/2)
        logz = std::lgamma(lam) - lam * std::log(psi / 2.0);
        return (lam - 1.0) * std::log(x) - 0.5 * psi * x - logz;
    }
    if (psi == 0.0) {   // InvGamma(-lam, chi/2)
        logz = std::lgamma(-lam) - (-lam) * std::log(chi / 2.0);
        return (lam - 1.0) * std::log(x) - 0.5 * chi / x - logz;
    }
    const double w = std::sqrt(chi * psi);
    logz = 0.5 * lam * std::log(chi / psi) + std::log(2.0) + log_bessel_k(lam, w);
    return (lam - 1.0) * std::log(x) - 0.5 * (chi / x + psi * x) - logz;
}

namespace detail {

struct GigRouSetup {
    double mode;
    double umax;       // sup sqrt(g)
    double vmin, vmax; // bounds of (x - m) sqrt(g(x))
    double log_gm;     // log g(mode)
};

inline GigRouSetup gig_rou_setup(double lam, double chi, double psi) {
    auto logg = [&](double x) {
        return (lam - 1.0) * std::log(x) - 0.5 * (chi / x + psi * x);
    };
    const double m = ((lam - 1.0) + std::sqrt((lam - 1.0) * (lam - 1.0) + chi * psi)) / psi;
    const double lgm = logg(m);
    // extrema of h(x) = 2 log|x-m| + log g(x) on either side of the mode
    auto hprime = [&](double x) {
        return 2.0 / (x - m) + (lam - 1.0) / x + 0.5 * chi / (x * x) - 0.5 * psi;
    };
    // right side: h' decreases from +inf to -psi/2
    double hi = m + 1.0;
    while (hprime(hi) > 0.0) hi *= 2.0;
    const double xr = brent_root(hprime, m * (1.0 + 1e-12) + 1e-300, hi, 1e-12);
    // left side: search for the maximizer of h on (0, m)
    double lo = m;
    double xl = 0.0;
    bool found = false;
    for (int k = 1; k <= 200; ++k) {
        const double cand = m / std::pow(2.0, k);
        if (hprime(cand) > 0.0) {  // h increasing at cand -> max lies in [cand, m)
            xl = brent_root(hprime, cand, m * (1.0 - 1e-12), 1e-14);
            found = true;
            break;
        }
        lo = cand;
        if (cand < 1e-280) break;
    }
    GigRouSetup s;
    s.mode = m;
    s.log_gm = lgm;
    s.umax = 1.0;  // work with g normalized by its mode value
    s.vmax = (xr - m) * std::exp(0.5 * (logg(xr) - lgm));
    if (found) {
        s.vmin = (xl - m) * std::exp(0.5 * (logg(xl) - lgm));
    } else {
        // density vanishes so fast toward 0 that (x-m)sqrt(g) is maximal at ~0
        s.vmin = -m;
        (void)lo;
    }
    return s;
}

}  // namespace detail

// Ratio-of-uniforms sampler with mode shift; valid on the whole admissible domain.
inline double gig_sample(double lam, double chi, double psi, RngStream& rng) {
    gig_check(lam, chi, psi);
    if (chi == 0.0) return rng.gamma(lam) * 2.0 / psi;
    if (psi == 0.0) return (chi / 2.0) / rng.gamma(-lam);
    static thread_local double c_lam = std::numeric_limits<double>::quiet_NaN(), c_chi = 0, c_psi = 0;
    static thread_local detail::GigRouSetup setup;
    if (!(c_lam == lam && c_chi == chi && c_psi == psi)) {
        setup = detail::gig_rou_setup(lam, chi, psi);
        c_lam = lam; c_chi = chi; c_psi = psi;
    }
    auto logg_rel = [&](double x) {
        return (lam - 1.0) * std::log(x) - 0.5 * (chi / x + psi * x) - setup.log_gm;
    };
    for (int it = 0; it < 100000; ++it) {
        const double a = rng.uniform() * setup.umax;
        const double b = rng.uniform(setup.vmin, setup.vmax);
        const double x = setup.mode + b / a;
        if (x <= 0.0) continue;
        if (2.0 * std::log(a) <= logg_rel(x)) return x;
    }
    throw std::runtime_error("gig_sample: rejection loop failed to accept");
}

}  // namespace taildep
