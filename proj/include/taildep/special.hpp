#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "taildep/common.hpp"

namespace taildep {

// ---------------------------------------------------------------------------
// Normal distribution
// ---------------------------------------------------------------------------

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// log Phi(x), stable in the far left tail
inline double normal_logcdf(double x) {
    if (x > -10.0) return std::log(normal_cdf(x));
    // asymptotic phi(x)/|x| * (1 - 1/x^2 + 3/x^4)
    const double x2 = x * x;
    return -0.5 * x2 - 0.5 * std::log(2.0 * kPi) - std::log(-x) +
           std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

// Inverse standard normal CDF. Rational seed (Abramowitz-Stegun 26.2.23)
// polished by Newton steps on erfc; roundtrip accurate to ~1e-14 for
// arguments reachable in double precision.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie strictly inside (0,1)");
    if (p == 0.5) return 0.0;
    const bool lower = p < 0.5;
    const double pp = lower ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double x = t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                       (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
    // Newton on Phi(-x) - pp = 0 (x > 0 here)
    for (int it = 0; it < 4; ++it) {
        const double err = normal_cdf(-x) - pp;
        const double d = normal_pdf(x);
        if (d <= 0.0) break;
        const double step = err / d;
        x += step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return lower ? -x : x;
}

// ---------------------------------------------------------------------------
// Regularized incomplete beta (continued fraction, modified Lentz)
// ---------------------------------------------------------------------------

namespace detail {

inline double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kFpMin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("betacf: continued fraction did not converge");
}

}  // namespace detail

inline double ibeta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw std::domain_error("ibeta: a,b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lnfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(lnfront);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

// ---------------------------------------------------------------------------
// Student t distribution
// ---------------------------------------------------------------------------

inline double student_t_pdf(double x, double nu) {
    if (!(nu > 0.0)) throw std::domain_error("student_t_pdf: nu must be positive");
    return std::exp(std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                    0.5 * std::log(nu * kPi) -
                    0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

inline double student_t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw std::domain_error("student_t_cdf: nu must be positive");
    if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
    if (x == 0.0) return 0.5;
    const double p = 0.5 * ibeta(0.5 * nu, 0.5, nu / (nu + x * x));
    return x > 0.0 ? 1.0 - p : p;
}

inline double student_t_quantile(double p, double nu) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("student_t_quantile: p must lie strictly inside (0,1)");
    if (!(nu > 0.0)) throw std::domain_error("student_t_quantile: nu must be positive");
    if (p == 0.5) return 0.0;
    if (nu == 1.0) return std::tan(kPi * (p - 0.5));
    if (nu == 2.0) {
        const double s = 2.0 * p - 1.0;
        return s * std::sqrt(2.0 / (1.0 - s * s));
    }
    // normal-based seed with Cornish-Fisher style correction, then safeguarded Newton
    const double z = normal_quantile(p);
    double x = z * (1.0 + (z * z + 1.0) / (4.0 * nu));
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
        const double f = student_t_cdf(x, nu) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double d = student_t_pdf(x, nu);
        double step = d > 0.0 ? f / d : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi) || d <= 0.0) {
            if (std::isinf(lo)) xn = hi - std::max(1.0, std::abs(hi));
            else if (std::isinf(hi)) xn = lo + std::max(1.0, std::abs(lo));
            else xn = 0.5 * (lo + hi);
        }
        if (std::abs(xn - x) < 1e-14 * (1.0 + std::abs(xn))) { x = xn; break; }
        x = xn;
    }
    return x;
}

// ---------------------------------------------------------------------------
// Modified Bessel function of the second kind K_nu(x), real order.
// Temme's series for x <= 2, Steed's continued fraction CF2 for x > 2,
// upward recurrence in the order. Overflow near x -> 0 with large |nu| is
// reported distinctly via bessel_k (infinity) while log_bessel_k stays finite.
// ---------------------------------------------------------------------------

namespace detail {

// K_mu and K_{mu+1} for |mu| <= 1/2, x <= 2 (unscaled).
inline void bessel_k_temme(double mu, double x, double& kmu, double& kmu1) {
    constexpr double kEps = 1e-17;
    const double x2 = 0.5 * x;
    const double mu2 = mu * mu;
    const double gp = 1.0 / std::tgamma(1.0 + mu);   // 1/Gamma(1+mu)
    const double gm = 1.0 / std::tgamma(1.0 - mu);   // 1/Gamma(1-mu)
    const double gam1 = std::abs(mu) < 1e-6 ? -kEulerGamma : (gm - gp) / (2.0 * mu);
    const double gam2 = 0.5 * (gm + gp);
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < 1e-30 ? 1.0 : pimu / std::sin(pimu);
    const double d = -std::log(x2);
    const double e = mu * d;
    const double fact2 = std::abs(e) < 1e-30 ? 1.0 : std::sinh(e) / e;
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    const double ee = std::exp(e);
    double p = 0.5 * ee / gp;
    double q = 0.5 / (ee * gm);
    double c = 1.0;
    const double dd = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 300; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= dd / i;
        p /= (i - mu);
        q /= (i + mu);
        const double del = c * ff;
        sum += del;
        const double del1 = c * (p - i * ff);
        sum1 += del1;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    kmu = sum;
    kmu1 = sum1 * 2.0 / x;
}

// e^x K_mu(x) and e^x K_{mu+1}(x) for |mu| <= 1/2, x > 2 (Steed CF2).
inline void bessel_k_cf2(double mu, double x, double& kmu_s, double& kmu1_s) {
    constexpr double kEps = 1e-16;
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * d;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    h = a1 * h;
    kmu_s = std::sqrt(kPi / (2.0 * x)) / s;
    kmu1_s = kmu_s * (mu + x + 0.5 - h) / x;
}

struct BesselPair {
    double log_scale;  // value = mantissa * exp(log_scale - x) for the unscaled K
    double kmu_s;      // scaled mantissas: e^x K / exp(log_scale)
    double kmu1_s;
};

// scaled K_nu with a log offset so huge orders never overflow
inline BesselPair bessel_k_core(double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: x must be positive");
    nu = std::abs(nu);  // K_{-nu} = K_nu
    const int n = static_cast<int>(std::floor(nu + 0.5));
    const double mu = nu - n;
    double kmu, kmu1, log_scale = 0.0;
    if (x <= 2.0) {
        bessel_k_temme(mu, x, kmu, kmu1);
        const double s = std::exp(x);
        kmu *= s;
        kmu1 *= s;
    } else {
        bessel_k_cf2(mu, x, kmu, kmu1);
    }
    for (int i = 0; i < n; ++i) {
        const double ord = mu + i + 1;
        const double knext = kmu + (2.0 * ord / x) * kmu1;
        kmu = kmu1;
        kmu1 = knext;
        if (kmu1 > 1e280) {  // renormalize to avoid overflow during recurrence
            const double f = kmu1;
            kmu /= f;
            kmu1 = 1.0;
            log_scale += std::log(f);
        }
    }
    return {log_scale, kmu, kmu1};
}

}  // namespace detail

// e^x K_nu(x); may overflow to +inf in the small-x / large-order regime
inline double bessel_k_scaled(double nu, double x) {
    const auto r = detail::bessel_k_core(nu, x);
    return r.kmu_s * std::exp(r.log_scale);
}

// K_nu(x); +inf signals saturation of the representable range
inline double bessel_k(double nu, double x) {
    const auto r = detail::bessel_k_core(nu, x);
    const double le = r.log_scale - x;
    if (le > 690.0) {
        const double v = std::log(r.kmu_s) + le;
        return v > 709.0 ? std::numeric_limits<double>::infinity()
                         : std::exp(v);
    }
    return r.kmu_s * std::exp(le);
}

inline double log_bessel_k(double nu, double x) {
    const auto r = detail::bessel_k_core(nu, x);
    return std::log(r.kmu_s) + r.log_scale - x;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1,1], cached per order
// ---------------------------------------------------------------------------

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        gl.nodes[i] = -z;
        gl.nodes[n - 1 - i] = z;
        gl.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        gl.weights[n - 1 - i] = gl.weights[i];
    }
    return cache.emplace(n, std::move(gl)).first->second;
}

}  // namespace taildep
