#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace taildep {

struct OptimConfig {
    int max_iterations = 2000;
    double x_tolerance = 1e-9;
    double f_tolerance = 1e-10;
    double initial_simplex_scale = 0.1;

    void validate() const {
        if (max_iterations < 1) throw std::invalid_argument("OptimConfig: max_iterations >= 1 required");
        if (!(x_tolerance > 0.0)) throw std::invalid_argument("OptimConfig: x_tolerance > 0 required");
        if (!(f_tolerance > 0.0)) throw std::invalid_argument("OptimConfig: f_tolerance > 0 required");
        if (!(initial_simplex_scale > 0.0))
            throw std::invalid_argument("OptimConfig: initial_simplex_scale > 0 required");
    }
};

struct OptimResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Derivative-free Nelder-Mead. Non-convergence is flagged, never thrown;
// a non-finite objective at the start point is an input error.
inline OptimResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                               std::vector<double> x0, const OptimConfig& cfg) {
    cfg.validate();
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");
    const double f0 = objective(x0);
    if (!std::isfinite(f0)) throw std::invalid_argument("nelder_mead: objective not finite at x0");

    auto safe_eval = [&](const std::vector<double>& x) {
        const double f = objective(x);
        return std::isfinite(f) ? f : 1e300;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    fv[0] = f0;
    for (std::size_t i = 0; i < n; ++i) {
        double step = cfg.initial_simplex_scale * std::max(1.0, std::abs(x0[i]));
        simplex[i + 1][i] += step;
        fv[i + 1] = safe_eval(simplex[i + 1]);
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    OptimResult res;
    int iter = 0;
    std::vector<std::size_t> order(n + 1);
    for (; iter < cfg.max_iterations; ++iter) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];

        double fspread = std::abs(fv[worst] - fv[best]);
        double xspread = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            xspread = std::max(xspread, std::abs(simplex[worst][i] - simplex[best][i]));
        if (fspread < cfg.f_tolerance && xspread < cfg.x_tolerance) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i];
        }
        for (std::size_t i = 0; i < n; ++i) centroid[i] /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
            return p;
        };

        std::vector<double> xr = blend(-alpha);
        const double fr = safe_eval(xr);
        if (fr < fv[best]) {
            std::vector<double> xe = blend(-gamma);
            const double fe = safe_eval(xe);
            if (fe < fr) { simplex[worst] = std::move(xe); fv[worst] = fe; }
            else { simplex[worst] = std::move(xr); fv[worst] = fr; }
        } else if (fr < fv[second]) {
            simplex[worst] = std::move(xr);
            fv[worst] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[worst] ? -rho : rho);
            const double fc = safe_eval(xc);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = std::move(xc);
                fv[worst] = fc;
            } else {  // shrink toward best
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k == best) continue;
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[k][i] = simplex[best][i] + sigma * (simplex[k][i] - simplex[best][i]);
                    fv[k] = safe_eval(simplex[k]);
                }
            }
        }
    }
    std::size_t bi = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[bi]) bi = i;
    res.x = simplex[bi];
    res.fx = fv[bi];
    res.iterations = iter;
    return res;
}

// Brent's root finder on a sign-changing bracket [a,b].
inline double brent_root(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("brent_root: tol must be positive");
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("brent_root: f(a) and f(b) must bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol * 1e-3) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

}  // namespace taildep
