#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "taildep/copula.hpp"
#include "taildep/gig.hpp"
#include "taildep/mesh.hpp"
#include "taildep/optim.hpp"
#include "taildep/special.hpp"

namespace taildep {

// Bivariate generalized hyperbolic distribution in the
// (lambda, alpha, beta, delta, mu, Delta) parameterization.
struct GHParams {
    double lambda = 1.0;
    double alpha = 1.0;
    Vec2 beta{0.0, 0.0};
    double delta = 1.0;
    Vec2 mu{0.0, 0.0};
    Mat2 Delta{1.0, 0.0, 1.0};

    double beta_quad() const { return Delta.quad(beta.x, beta.y); }  // beta' Delta beta

    void validate() const {
        auto fail = [](const char* m) { throw std::domain_error(std::string("GHParams: ") + m); };
        if (!(alpha > 0.0)) fail("alpha > 0 required");
        if (Delta.det() <= 0.0 || Delta.a11 <= 0.0) fail("Delta must be positive definite");
        const double bn = std::sqrt(beta_quad());
        if (lambda > 0.0) {
            if (delta < 0.0) fail("delta >= 0 required for lambda > 0");
            if (!(bn < alpha)) fail("sqrt(beta' Delta beta) < alpha required for lambda > 0");
        } else if (lambda == 0.0) {
            if (!(delta > 0.0)) fail("delta > 0 required for lambda = 0");
            if (!(bn < alpha)) fail("sqrt(beta' Delta beta) < alpha required for lambda = 0");
        } else {
            if (!(delta > 0.0)) fail("delta > 0 required for lambda < 0");
            if (!(bn <= alpha)) fail("sqrt(beta' Delta beta) <= alpha required for lambda < 0");
        }
    }

    // det(Delta)=1 convention; the same distribution, rescaled parameters
    GHParams normalized() const {
        const double det = Delta.det();
        const double c = 1.0 / std::sqrt(det);  // Delta' = c Delta has det 1
        GHParams out = *this;
        out.Delta = {Delta.a11 * c, Delta.a12 * c, Delta.a22 * c};
        out.alpha = alpha * std::sqrt(c);
        out.delta = delta / std::sqrt(c);
        return out;
    }

    // correlation implied by Delta (elliptical case)
    double delta_correlation() const { return Delta.a12 / std::sqrt(Delta.a11 * Delta.a22); }
    bool symmetric() const { return beta.x == 0.0 && beta.y == 0.0; }
};

// mixing law: W ~ GIG(lambda, delta^2, alpha^2 - beta' Delta beta)
inline void gh_mixing(const GHParams& g, double& chi, double& psi) {
    chi = g.delta * g.delta;
    psi = g.alpha * g.alpha - g.beta_quad();
}

inline double gh_mixing_moment(const GHParams& g, int k) {
    double chi, psi;
    gh_mixing(g, chi, psi);
    if (chi == 0.0) {  // Gamma(lambda, psi/2)
        double m = 1.0;
        for (int i = 0; i < k; ++i) m *= 2.0 * (g.lambda + i) / psi;
        return m;
    }
    const double w = std::sqrt(chi * psi);
    return std::pow(chi / psi, 0.5 * k) *
           std::exp(log_bessel_k(g.lambda + k, w) - log_bessel_k(g.lambda, w));
}

inline Vec2 gh_mean(const GHParams& g) {
    const double ew = gh_mixing_moment(g, 1);
    return {g.mu.x + ew * (g.Delta.a11 * g.beta.x + g.Delta.a12 * g.beta.y),
            g.mu.y + ew * (g.Delta.a12 * g.beta.x + g.Delta.a22 * g.beta.y)};
}

inline Mat2 gh_covariance(const GHParams& g) {
    const double ew = gh_mixing_moment(g, 1);
    const double vw = gh_mixing_moment(g, 2) - ew * ew;
    const double gx = g.Delta.a11 * g.beta.x + g.Delta.a12 * g.beta.y;
    const double gy = g.Delta.a12 * g.beta.x + g.Delta.a22 * g.beta.y;
    return {ew * g.Delta.a11 + vw * gx * gx, ew * g.Delta.a12 + vw * gx * gy,
            ew * g.Delta.a22 + vw * gy * gy};
}

// ---------------------------------------------------------------------------
// density (log-space; Bessel overflow cannot occur before the final exp)
// ---------------------------------------------------------------------------

class GHDensity {
public:
    explicit GHDensity(const GHParams& params) : g_(params) {
        g_.validate();
        inv_ = g_.Delta.inverse();
        const double psi = g_.alpha * g_.alpha - g_.beta_quad();
        const double d = g_.delta;
        if (d > 0.0) {
            logpre_ = 0.5 * g_.lambda * std::log(psi) - std::log(2.0 * kPi) -
                      0.5 * std::log(g_.Delta.det()) - (g_.lambda - 1.0) * std::log(g_.alpha) -
                      g_.lambda * std::log(d) - log_bessel_k(g_.lambda, d * std::sqrt(psi));
        } else {
            // variance-gamma limit: delta^lambda K_lambda(delta s) -> Gamma(lambda) 2^{lambda-1} s^{-lambda}
            logpre_ = 0.5 * g_.lambda * std::log(psi) - std::log(2.0 * kPi) -
                      0.5 * std::log(g_.Delta.det()) - (g_.lambda - 1.0) * std::log(g_.alpha) -
                      (std::lgamma(g_.lambda) + (g_.lambda - 1.0) * std::log(2.0) -
                       0.5 * g_.lambda * std::log(psi));
        }
    }

    const GHParams& params() const { return g_; }

    double logpdf(double zx, double zy) const {
        const double dx = zx - g_.mu.x, dy = zy - g_.mu.y;
        // the variance-gamma case has an integrable singularity at mu; keep the
        // argument off zero so quadrature nodes arbitrarily close stay finite
        const double q2 = std::max(inv_.quad(dx, dy) + g_.delta * g_.delta, 1e-24);
        const double q = std::sqrt(q2);
        return logpre_ + 0.5 * (g_.lambda - 1.0) * std::log(q2) +
               log_bessel_k(g_.lambda - 1.0, g_.alpha * q) + g_.beta.x * dx + g_.beta.y * dy;
    }

    double pdf(double zx, double zy) const {
        const double lp = logpdf(zx, zy);
        if (lp > 709.0) throw std::overflow_error("gh_density: value overflows double range");
        return std::exp(lp);
    }

private:
    GHParams g_;
    Mat2 inv_;
    double logpre_;
};

inline double gh_density(const GHParams& params, double zx, double zy) {
    return GHDensity(params).pdf(zx, zy);
}

// ---------------------------------------------------------------------------
// sampling through the normal mean-variance mixture representation
// ---------------------------------------------------------------------------

inline std::vector<Vec2> gh_sample(const GHParams& params, std::size_t n, RngStream& rng) {
    params.validate();
    double chi, psi;
    gh_mixing(params, chi, psi);
    const auto L = params.Delta.cholesky();
    const double gx = params.Delta.a11 * params.beta.x + params.Delta.a12 * params.beta.y;
    const double gy = params.Delta.a12 * params.beta.x + params.Delta.a22 * params.beta.y;
    std::vector<Vec2> out(n);
    for (auto& z : out) {
        const double w = gig_sample(params.lambda, chi, psi, rng);
        const double sw = std::sqrt(w);
        const double n1 = rng.normal(), n2 = rng.normal();
        z.x = params.mu.x + w * gx + sw * L[0] * n1;
        z.y = params.mu.y + w * gy + sw * (L[1] * n1 + L[2] * n2);
    }
    return out;
}

// ---------------------------------------------------------------------------
// marginal tables
// ---------------------------------------------------------------------------

struct MarginalTable {
    std::vector<double> x;    // abscissa grid
    std::vector<double> cdf;  // strictly increasing on the retained support
    std::vector<double> pdf;

    double cdf_at(double xq) const { return interp_ ? clamp01((*interp_)(xq)) : 0.0; }

    double pdf_at(double xq) const { return std::max(0.0, (*pinterp_)(xq)); }

    double quantile(double p) const {
        if (!(p > 0.0 && p < 1.0))
            throw std::domain_error("MarginalTable::quantile: p strictly inside (0,1) required");
        if (p <= cdf.front()) return x.front();
        if (p >= cdf.back()) return x.back();
        double xq = (*qinterp_)(p);
        // polish against the forward interpolant so the pair inverts exactly
        for (int it = 0; it < 3; ++it) {
            const double d = pdf_at(xq);
            if (d <= 0.0) break;
            const double step = (cdf_at(xq) - p) / d;
            xq -= std::clamp(step, -1.0, 1.0);
        }
        return std::clamp(xq, x.front(), x.back());
    }

    void finalize() {
        interp_ = std::make_shared<Pchip>(x, cdf);
        // strictly increasing cdf -> monotone inverse interpolant
        qinterp_ = std::make_shared<Pchip>(cdf, x);
        pinterp_ = std::make_shared<Pchip>(x, pdf);
    }

private:
    std::shared_ptr<Pchip> interp_, qinterp_, pinterp_;
};

namespace detail {

struct GhTabulation {
    std::vector<double> xb, yb;          // cell boundaries, both axes
    std::vector<double> H;               // joint cdf at boundaries, normalized
    std::vector<double> cu, cvv;         // conditional cdfs at boundary nodes
    MarginalTable fx, fy;
    double mass = 0.0;                   // captured probability mass
};

// Locate the truncation box: density below 1e-12 of the mode value, widened 20%.
inline void gh_box(const GHDensity& den, double& lo_x, double& hi_x, double& lo_y, double& hi_y) {
    const auto& g = den.params();
    // crude mode search around mu, offset so variance-gamma singularities at mu
    // cannot anchor the reference level
    const double scale = std::sqrt(std::max(g.Delta.a11, g.Delta.a22)) * (1.0 + g.delta);
    double mx = g.mu.x + 1e-3 * scale, my = g.mu.y + 1e-3 * scale;
    double best = den.logpdf(mx, my);
    for (int it = 0; it < 200; ++it) {
        bool moved = false;
        const double step = scale * std::pow(0.75, it / 8);
        for (auto [dx, dy] : std::initializer_list<std::pair<double, double>>{
                 {step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
            const double c = den.logpdf(mx + dx, my + dy);
            if (c > best) {
                best = c;
                mx += dx;
                my += dy;
                moved = true;
            }
        }
        if (!moved && step < 1e-6 * scale) break;
    }
    const double drop = std::log(1e12);
    auto extend = [&](double dx, double dy) {
        double r = scale;
        while (best - den.logpdf(mx + dx * r, my + dy * r) < drop) {
            r *= 1.3;
            if (r > 1e6 * scale)
                throw std::range_error("gh tabulation: truncation box failed to close");
        }
        return 1.2 * r;
    };
    const double right = extend(1, 0), left = extend(-1, 0);
    const double up = extend(0, 1), down = extend(0, -1);
    const double d1 = extend(0.7071, 0.7071), d2 = extend(-0.7071, -0.7071);
    const double d3 = extend(0.7071, -0.7071), d4 = extend(-0.7071, 0.7071);
    lo_x = mx - std::max({left, d2 * 0.7071, d4 * 0.7071});
    hi_x = mx + std::max({right, d1 * 0.7071, d3 * 0.7071});
    lo_y = my - std::max({down, d2 * 0.7071, d3 * 0.7071});
    hi_y = my + std::max({up, d1 * 0.7071, d4 * 0.7071});
}

inline GhTabulation gh_tabulate(const GHDensity& den, int ncells, int threads, int gl_order = 16) {
    GhTabulation t;
    double lox, hix, loy, hiy;
    gh_box(den, lox, hix, loy, hiy);
    const int G = ncells;
    t.xb.resize(G + 1);
    t.yb.resize(G + 1);
    for (int i = 0; i <= G; ++i) {
        t.xb[i] = lox + (hix - lox) * i / G;
        t.yb[i] = loy + (hiy - loy) * i / G;
    }
    const auto& gl = gauss_legendre(gl_order);
    const int q = gl_order;
    // Gauss-Legendre nodes per axis cell
    std::vector<double> nx(G * q), wx(G * q), ny(G * q), wy(G * q);
    for (int i = 0; i < G; ++i) {
        const double mx = 0.5 * (t.xb[i] + t.xb[i + 1]), hx = 0.5 * (t.xb[i + 1] - t.xb[i]);
        const double my = 0.5 * (t.yb[i] + t.yb[i + 1]), hy = 0.5 * (t.yb[i + 1] - t.yb[i]);
        for (int k = 0; k < q; ++k) {
            nx[i * q + k] = mx + hx * gl.nodes[k];
            wx[i * q + k] = hx * gl.weights[k];
            ny[i * q + k] = my + hy * gl.nodes[k];
            wy[i * q + k] = hy * gl.weights[k];
        }
    }
    // cell masses and boundary-line integrals
    std::vector<double> cellmass(static_cast<std::size_t>(G) * G, 0.0);
    std::vector<double> colint(static_cast<std::size_t>(G + 1) * G, 0.0);  // x fixed at boundary
    std::vector<double> rowint(static_cast<std::size_t>(G) * (G + 1), 0.0);
    struct Empty { void combine(Empty&) {} };
    MeshConfig fake;
    fake.n_cells = G;
    fake.parallel_chunk = std::max(1, G / 64);
    mesh_reduce<Empty>(fake, threads, [&](int j, double, Empty&) {
        // y-cell j: integrate density over its GL nodes against all x nodes
        for (int ky = 0; ky < q; ++ky) {
            const double yv = ny[j * q + ky], wv = wy[j * q + ky];
            for (int i = 0; i < G; ++i) {
                double acc = 0.0;
                for (int kx = 0; kx < q; ++kx)
                    acc += wx[i * q + kx] * std::exp(den.logpdf(nx[i * q + kx], yv));
                cellmass[static_cast<std::size_t>(i) * G + j] += acc * wv;
            }
            for (int i = 0; i <= G; ++i)
                colint[static_cast<std::size_t>(i) * G + j] += wv * std::exp(den.logpdf(t.xb[i], yv));
        }
        for (int i = 0; i < G; ++i) {
            for (int kx = 0; kx < q; ++kx) {
                const double xv = nx[i * q + kx], wv = wx[i * q + kx];
                double lp = den.logpdf(xv, t.yb[j]);
                rowint[static_cast<std::size_t>(i) * (G + 1) + j] += wv * std::exp(lp);
                if (j == G - 1) {
                    lp = den.logpdf(xv, t.yb[G]);
                    rowint[static_cast<std::size_t>(i) * (G + 1) + G] += wv * std::exp(lp);
                }
            }
        }
    });
    // joint cdf at boundaries by double prefix sums
    t.H.assign(static_cast<std::size_t>(G + 1) * (G + 1), 0.0);
    for (int i = 1; i <= G; ++i)
        for (int j = 1; j <= G; ++j)
            t.H[static_cast<std::size_t>(i) * (G + 1) + j] =
                cellmass[static_cast<std::size_t>(i - 1) * G + (j - 1)] +
                t.H[static_cast<std::size_t>(i - 1) * (G + 1) + j] +
                t.H[static_cast<std::size_t>(i) * (G + 1) + j - 1] -
                t.H[static_cast<std::size_t>(i - 1) * (G + 1) + j - 1];
    t.mass = t.H.back();
    if (!(t.mass > 1.0 - 1e-8 && t.mass <= 1.0 + 1e-6))
        throw std::range_error("gh tabulation: truncated mass " + std::to_string(t.mass) +
                               " fails to capture 1 - 1e-8 of the distribution");
    // conditional cdfs at boundary nodes: cu = P(Y <= y_j | X = x_i)
    t.cu.assign(static_cast<std::size_t>(G + 1) * (G + 1), 0.0);
    t.cvv.assign(static_cast<std::size_t>(G + 1) * (G + 1), 0.0);
    for (int i = 0; i <= G; ++i) {
        double tot = 0.0;
        for (int j = 0; j < G; ++j) tot += colint[static_cast<std::size_t>(i) * G + j];
        double run = 0.0;
        t.cu[static_cast<std::size_t>(i) * (G + 1)] = 0.0;
        for (int j = 0; j < G; ++j) {
            run += colint[static_cast<std::size_t>(i) * G + j];
            t.cu[static_cast<std::size_t>(i) * (G + 1) + j + 1] = run / tot;
        }
    }
    for (int j = 0; j <= G; ++j) {
        double tot = 0.0;
        for (int i = 0; i < G; ++i) tot += rowint[static_cast<std::size_t>(i) * (G + 1) + j];
        double run = 0.0;
        t.cvv[j] = 0.0;
        for (int i = 0; i < G; ++i) {
            run += rowint[static_cast<std::size_t>(i) * (G + 1) + j];
            t.cvv[static_cast<std::size_t>(i + 1) * (G + 1) + j] = run / tot;
        }
    }
    // marginals (normalized by the captured mass)
    t.fx.x = t.xb;
    t.fy.x = t.yb;
    t.fx.cdf.resize(G + 1);
    t.fy.cdf.resize(G + 1);
    t.fx.pdf.resize(G + 1);
    t.fy.pdf.resize(G + 1);
    for (int i = 0; i <= G; ++i) {
        t.fx.cdf[i] = t.H[static_cast<std::size_t>(i) * (G + 1) + G] / t.mass;
        t.fy.cdf[i] = t.H[static_cast<std::size_t>(G) * (G + 1) + i] / t.mass;
        double px = 0.0, py = 0.0;
        for (int j = 0; j < G; ++j) {
            px += colint[static_cast<std::size_t>(i) * G + j];
            py += rowint[static_cast<std::size_t>(j) * (G + 1) + i];
        }
        t.fx.pdf[i] = px;
        t.fy.pdf[i] = py;
    }
    // enforce strict monotonicity of the marginal grids in probability space
    auto strictify = [](std::vector<double>& c) {
        for (std::size_t k = 1; k < c.size(); ++k)
            if (c[k] <= c[k - 1]) c[k] = c[k - 1] + 1e-15;
    };
    strictify(t.fx.cdf);
    strictify(t.fy.cdf);
    t.fx.finalize();
    t.fy.finalize();
    return t;
}

}  // namespace detail

inline std::pair<MarginalTable, MarginalTable> gh_marginals(const GHParams& params,
                                                            int ncells = 512, int threads = 0) {
    const GHDensity den(params.normalized());
    auto tab = detail::gh_tabulate(den, ncells, threads);
    return {tab.fx, tab.fy};
}

// Implied copula tabulated on the probability grids induced by the marginals,
// with exact boundary rows/columns appended at u, v in {0, 1}.
inline std::shared_ptr<const InterpolatedCopula> gh_implied_copula(const GHParams& params,
                                                                   int grid_n = 512,
                                                                   int threads = 0) {
    if (grid_n < 64) throw std::invalid_argument("gh_implied_copula: grid_n >= 64 required");
    const GHParams norm = params.normalized();
    const GHDensity den(norm);
    auto tab = detail::gh_tabulate(den, grid_n, threads);
    const int G = grid_n;
    auto out = std::make_shared<InterpolatedCopula>();
    // the truncation box edges map to exactly 0 and 1 after normalization, so
    // the boundary rows/columns of the table are the exact copula boundaries
    const std::size_t n = static_cast<std::size_t>(G) + 1;
    out->grid_u = tab.fx.cdf;
    out->grid_v = tab.fy.cdf;
    for (auto* grid : {&out->grid_u, &out->grid_v}) {
        (*grid)[0] = 0.0;
        (*grid)[n - 1] = 1.0;
        for (std::size_t k = 1; k < n; ++k)
            if ((*grid)[k] <= (*grid)[k - 1]) (*grid)[k] = (*grid)[k - 1] + 1e-15;
        for (std::size_t k = n - 1; k-- > 1;)
            if ((*grid)[k] >= (*grid)[k + 1]) (*grid)[k] = (*grid)[k + 1] - 1e-15;
        if (!((*grid)[0] < (*grid)[1] && (*grid)[n - 2] < (*grid)[n - 1]))
            throw std::range_error("gh_implied_copula: degenerate probability grid");
    }
    out->cdf.assign(n * n, 0.0);
    out->dcdu.assign(n * n, 0.0);
    out->dcdv.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double u = out->grid_u[i], v = out->grid_v[j];
            out->cdf[i * n + j] = std::clamp(tab.H[i * n + j] / tab.mass,
                                             std::max(u + v - 1.0, 0.0), std::min(u, v));
            out->dcdu[i * n + j] = clamp01(tab.cu[i * n + j]);
            out->dcdv[i * n + j] = clamp01(tab.cvv[i * n + j]);
        }
    }
    out->elliptical = norm.symmetric() && std::abs(norm.Delta.a11 - norm.Delta.a22) < 1e-12;
    out->rho = norm.delta_correlation();
    out->finalize();
    out->validate();
    return out;
}

inline CopulaSpec gh_copula_spec(const GHParams& params, int grid_n = 512, int threads = 0) {
    CopulaSpec spec;
    spec.family = Family::tabulated_gh;
    spec.table = gh_implied_copula(params, grid_n, threads);
    return spec;
}

// ---------------------------------------------------------------------------
// direct maximum likelihood over a reparameterized unconstrained space
// ---------------------------------------------------------------------------

struct GHFitResult {
    GHParams params;
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;
};

namespace detail {

// unconstrained vector: (lambda, log gap, beta1, beta2, log delta, mu1, mu2, a, c)
// Delta = [[e^a, r/sqrt(1-r^2)],[., 1/(e^a (1-r^2))]] with r = tanh(c), det = 1
inline GHParams gh_from_unconstrained(const std::vector<double>& x) {
    GHParams g;
    g.lambda = x[0];
    g.beta = {x[2], x[3]};
    g.delta = std::exp(x[4]);
    g.mu = {x[5], x[6]};
    const double a = std::exp(x[7]);
    const double r = std::tanh(x[8]);
    const double s2 = 1.0 - r * r;
    g.Delta = {a, r / std::sqrt(s2), 1.0 / (a * s2)};
    g.alpha = std::sqrt(g.beta_quad()) + std::exp(x[1]);
    return g;
}

inline std::vector<double> gh_to_unconstrained(const GHParams& raw) {
    const GHParams g = raw.normalized();
    std::vector<double> x(9);
    x[0] = g.lambda;
    const double gap = g.alpha - std::sqrt(g.beta_quad());
    x[1] = std::log(std::max(gap, 1e-8));
    x[2] = g.beta.x;
    x[3] = g.beta.y;
    x[4] = std::log(std::max(g.delta, 1e-8));
    x[5] = g.mu.x;
    x[6] = g.mu.y;
    x[7] = std::log(g.Delta.a11);
    const double r = g.delta_correlation();
    x[8] = std::atanh(std::min(0.999999, std::max(-0.999999, r)));
    return x;
}

}  // namespace detail

inline GHFitResult gh_fit(const std::vector<Vec2>& data, const GHParams& init,
                          const OptimConfig& cfg) {
    if (data.size() < 50) throw std::invalid_argument("gh_fit: need at least 50 observations");
    init.validate();
    auto negll = [&](const std::vector<double>& x) -> double {
        if (std::abs(x[0]) > 25.0 || std::abs(x[1]) > 25.0 || std::abs(x[4]) > 25.0 ||
            std::abs(x[7]) > 25.0 || std::abs(x[8]) > 12.0)
            return 1e300;
        try {
            const GHParams g = detail::gh_from_unconstrained(x);
            g.validate();
            const GHDensity den(g);
            double s = 0.0;
            for (const auto& z : data) s -= den.logpdf(z.x, z.y);
            return std::isfinite(s) ? s : 1e300;
        } catch (const std::exception&) {
            return 1e300;
        }
    };
    auto x0 = detail::gh_to_unconstrained(init);
    OptimResult r = nelder_mead(negll, x0, cfg);
    // one restart from the incumbent tightens loose simplex exits
    OptimConfig cfg2 = cfg;
    cfg2.initial_simplex_scale = cfg.initial_simplex_scale * 0.25;
    OptimResult r2 = nelder_mead(negll, r.x, cfg2);
    const OptimResult& best = r2.fx <= r.fx ? r2 : r;
    GHFitResult out;
    out.params = detail::gh_from_unconstrained(best.x);
    out.loglik = -best.fx;
    out.converged = r2.converged || r.converged;
    out.iterations = r.iterations + r2.iterations;
    return out;
}

// moment-based starting point for the optimizer
inline GHParams gh_default_init(const std::vector<Vec2>& data) {
    const std::size_t n = data.size();
    Vec2 mean{0.0, 0.0};
    for (const auto& z : data) {
        mean.x += z.x;
        mean.y += z.y;
    }
    mean.x /= n;
    mean.y /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& z : data) {
        sxx += sqr(z.x - mean.x);
        sxy += (z.x - mean.x) * (z.y - mean.y);
        syy += sqr(z.y - mean.y);
    }
    sxx /= n;
    sxy /= n;
    syy /= n;
    GHParams g;
    g.lambda = 1.0;
    g.mu = mean;
    const double det = sxx * syy - sxy * sxy;
    const double c = 1.0 / std::sqrt(std::max(det, 1e-12));
    g.Delta = {sxx * c, sxy * c, syy * c};
    g.delta = 1.0;
    g.beta = {0.0, 0.0};
    g.alpha = 1.5;
    return g;
}

}  // namespace taildep
