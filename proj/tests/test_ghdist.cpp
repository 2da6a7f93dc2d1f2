#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "taildep/ghdist.hpp"
#include "taildep/measures.hpp"
#include "taildep/tables.hpp"

using namespace taildep;

namespace {

GHParams gh1() { return tables::gh_entries()[0].params(); }
GHParams gh2() { return tables::gh_entries()[1].params(); }
GHParams nig2() { return tables::gh_entries()[5].params(); }
GHParams vg1() { return tables::gh_entries()[8].params(); }

}  // namespace

TEST_CASE("admissibility constraints") {
    GHParams g = gh1();
    CHECK_NOTHROW(g.validate());
    g.alpha = 0.1;  // below sqrt(beta' Delta beta)? no beta here; make delta negative instead
    g.delta = -1.0;
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g = gh2();
    g.alpha = 0.2;  // below the skewness norm
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g = gh1();
    g.lambda = -0.5;
    g.delta = 0.0;  // lambda < 0 requires delta > 0
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g = gh1();
    g.Delta = {1.0, 2.0, 1.0};  // not positive definite
    CHECK_THROWS_AS(g.validate(), std::domain_error);
}

TEST_CASE("normalization to unit determinant preserves the distribution") {
    const GHParams g = gh2();
    const GHParams n = g.normalized();
    CHECK_THAT(n.Delta.det(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    const GHDensity d0(g), d1(n);
    for (auto [x, y] : {std::pair{0.3, -0.8}, {2.0, 1.0}, {-4.0, -4.5}, {0.0, 6.0}})
        CHECK_THAT(d0.logpdf(x, y), Catch::Matchers::WithinAbs(d1.logpdf(x, y), 1e-10));
}

TEST_CASE("elliptical symmetry of the symmetric case") {
    const GHDensity den(gh1());
    RngStream rng(6, 0);
    for (int i = 0; i < 200; ++i) {
        const double zx = rng.uniform(-5.0, 5.0), zy = rng.uniform(-5.0, 5.0);
        CHECK_THAT(den.logpdf(zx, zy), Catch::Matchers::WithinAbs(den.logpdf(-zx, -zy), 1e-11));
    }
}

TEST_CASE("density integrates to one and is evaluated in log space") {
    const GHDensity den(gh1());
    CHECK(std::isfinite(den.logpdf(0.0, 0.0)));
    CHECK(den.pdf(0.0, 0.0) > 0.0);
    // 2-D quadrature over the truncated support
    auto tab = detail::gh_tabulate(den, 128, 0);
    CHECK_THAT(tab.mass, Catch::Matchers::WithinAbs(1.0, 5e-3));
}

TEST_CASE("variance-gamma and NIG special cases evaluate") {
    for (const auto& e : tables::gh_entries()) {
        const GHParams g = e.params();
        CHECK_NOTHROW(g.validate());
        const GHDensity den(g);
        CHECK(std::isfinite(den.logpdf(0.4, -0.2)));
        CHECK(std::isfinite(den.logpdf(3.0, 2.0)));
    }
}

TEST_CASE("approaches the bivariate t density when alpha vanishes") {
    // lambda < 0, beta = 0, alpha -> 0 is scaled-and-shifted t with -2 lambda dof
    GHParams g;
    g.lambda = -2.0;
    g.alpha = 1e-4;
    g.beta = {0.0, 0.0};
    g.delta = 2.0;
    g.mu = {0.0, 0.0};
    g.Delta = {1.0, 0.3, 1.0};
    const GHDensity den(g);
    const double nu = -2.0 * g.lambda;
    const Mat2 sigma{g.delta * g.delta / nu * g.Delta.a11, g.delta * g.delta / nu * g.Delta.a12,
                     g.delta * g.delta / nu * g.Delta.a22};
    const Mat2 sinv = sigma.inverse();
    auto t2_logpdf = [&](double x, double y) {
        const double q = sinv.quad(x, y);
        return std::lgamma(0.5 * nu + 1.0) - std::lgamma(0.5 * nu) - std::log(nu * kPi) -
               0.5 * std::log(sigma.det()) - (0.5 * nu + 1.0) * std::log1p(q / nu);
    };
    for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, -1.0}, {3.0, 2.0}, {-6.0, 1.0}})
        CHECK_THAT(den.logpdf(x, y), Catch::Matchers::WithinAbs(t2_logpdf(x, y), 2e-3));
}

TEST_CASE("marginal tables: symmetry, monotonicity, quantile roundtrip") {
    auto [fx, fy] = gh_marginals(gh1(), 512, 0);
    CHECK_THAT(fx.cdf_at(0.0), Catch::Matchers::WithinAbs(0.5, 1e-4));  // beta = 0, median at mu
    CHECK_THAT(fy.cdf_at(0.0), Catch::Matchers::WithinAbs(0.5, 1e-4));
    for (std::size_t i = 1; i < fx.cdf.size(); ++i) CHECK(fx.cdf[i] > fx.cdf[i - 1]);
    CHECK(fx.cdf.front() < 1e-8);
    CHECK(fx.cdf.back() > 1.0 - 1e-8);
    for (double x : {-8.0, -2.5, 0.0, 1.7, 6.0, 11.0}) {
        const double p = fx.cdf_at(x);
        if (p > 1e-7 && p < 1.0 - 1e-7)
            CHECK_THAT(fx.quantile(p), Catch::Matchers::WithinAbs(x, 1e-5));
    }
    CHECK_THROWS_AS(fx.quantile(0.0), std::domain_error);
}

TEST_CASE("marginal mean matches the Monte Carlo mean for a skewed case") {
    const GHParams g = nig2();
    auto [fx, fy] = gh_marginals(g, 384, 0);
    // mean from the table by quadrature over the quantile grid
    double mean_tab = 0.0;
    for (std::size_t i = 0; i + 1 < fx.x.size(); ++i)
        mean_tab += 0.5 * (fx.x[i] + fx.x[i + 1]) * (fx.cdf[i + 1] - fx.cdf[i]);
    RngStream rng(123, 5);
    const int n = 1000000;
    auto zs = gh_sample(g, n, rng);
    double mc = 0.0, var = 0.0;
    for (const auto& z : zs) mc += z.x;
    mc /= n;
    for (const auto& z : zs) var += sqr(z.x - mc);
    var /= n;
    const double se = std::sqrt(var / n);
    CHECK_THAT(mean_tab, Catch::Matchers::WithinAbs(mc, 3.0 * se + 1e-3));
    // also against the analytic mixture moment
    CHECK_THAT(gh_mean(g).x, Catch::Matchers::WithinAbs(mc, 3.0 * se));
}

TEST_CASE("sampling moments match the mixture formulas") {
    const GHParams g = gh1();
    RngStream rng(7, 1);
    const int n = 500000;
    auto zs = gh_sample(g, n, rng);
    double m1 = 0, m2 = 0;
    for (const auto& z : zs) {
        m1 += z.x;
        m2 += z.y;
    }
    m1 /= n;
    m2 /= n;
    CHECK_THAT(m1, Catch::Matchers::WithinAbs(0.0, 0.02));
    CHECK_THAT(m2, Catch::Matchers::WithinAbs(0.0, 0.02));
    double v1 = 0, v2 = 0, c12 = 0;
    for (const auto& z : zs) {
        v1 += sqr(z.x - m1);
        v2 += sqr(z.y - m2);
        c12 += (z.x - m1) * (z.y - m2);
    }
    v1 /= n;
    v2 /= n;
    c12 /= n;
    const Mat2 cov = gh_covariance(g);
    CHECK_THAT(c12 / std::sqrt(v1 * v2),
               Catch::Matchers::WithinAbs(cov.a12 / std::sqrt(cov.a11 * cov.a22), 0.01));
    CHECK_THAT(v1, Catch::Matchers::WithinRel(cov.a11, 0.03));
    // determinism
    RngStream a(9, 9), b(9, 9);
    auto s1 = gh_sample(g, 50, a), s2 = gh_sample(g, 50, b);
    for (int i = 0; i < 50; ++i) {
        CHECK(s1[i].x == s2[i].x);
        CHECK(s1[i].y == s2[i].y);
    }
}

TEST_CASE("implied copula passes the copula property suites") {
    const auto table = gh_implied_copula(gh2(), 128, 0);
    CHECK_NOTHROW(table->validate());
    CopulaSpec spec;
    spec.family = Family::tabulated_gh;
    spec.table = table;
    auto cop = make_copula(spec);
    RngStream rng(55, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform(), v = rng.uniform();
        const double c = cop->cdf(u, v);
        CHECK(c >= std::max(u + v - 1.0, 0.0) - 1e-6);
        CHECK(c <= std::min(u, v) + 1e-6);
    }
    for (int i = 0; i < 1000; ++i) {
        double u1 = rng.uniform(), u2 = rng.uniform(), v1 = rng.uniform(), v2 = rng.uniform();
        if (u1 > u2) std::swap(u1, u2);
        if (v1 > v2) std::swap(v1, v2);
        const double vol =
            cop->cdf(u2, v2) - cop->cdf(u1, v2) - cop->cdf(u2, v1) + cop->cdf(u1, v1);
        CHECK(vol >= -1e-6);
    }
    // uniform margins at the boundary rows
    for (double t : {0.05, 0.4, 0.85}) {
        CHECK_THAT(cop->cdf(t, 1.0), Catch::Matchers::WithinAbs(t, 1e-6));
        CHECK_THAT(cop->cdf(1.0, t), Catch::Matchers::WithinAbs(t, 1e-6));
    }
    // partials within [0,1]
    for (int i = 0; i < 2000; ++i) {
        const auto p = cop->partials(rng.uniform(), rng.uniform());
        CHECK(p.du >= 0.0);
        CHECK(p.du <= 1.0);
        CHECK(p.dv >= 0.0);
        CHECK(p.dv <= 1.0);
    }
}

TEST_CASE("symmetric case tabulates an exchangeable copula") {
    const auto table = gh_implied_copula(gh1(), 128, 0);
    CopulaSpec spec;
    spec.family = Family::tabulated_gh;
    spec.table = table;
    auto cop = make_copula(spec);
    RngStream rng(3, 0);
    for (int i = 0; i < 1500; ++i) {
        const double u = rng.uniform(0.01, 0.99), v = rng.uniform(0.01, 0.99);
        CHECK_THAT(cop->cdf(u, v), Catch::Matchers::WithinAbs(cop->cdf(v, u), 1e-5));
    }
    CHECK(table->elliptical);
    CHECK_THAT(table->rho, Catch::Matchers::WithinAbs(2.06 / 2.29, 1e-12));
}

TEST_CASE("tabulated copula agrees with a dense quadrature probe") {
    // independent check of one interior value: P(X<=x, Y<=y) via direct 2-D
    // quadrature at the probe, against the interpolated copula at (F(x),G(y))
    const GHParams g = gh1().normalized();
    const GHDensity den(g);
    auto [fx, fy] = gh_marginals(g, 384, 0);
    const double xq = 0.8, yq = -0.4;
    const auto& gl = gauss_legendre(24);
    const double lox = fx.x.front(), loy = fy.x.front();
    double H = 0.0;
    const int panels = 96;
    for (int a = 0; a < panels; ++a) {
        const double x0 = lox + (xq - lox) * a / panels, x1 = lox + (xq - lox) * (a + 1) / panels;
        for (int i = 0; i < 24; ++i) {
            const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * gl.nodes[i];
            double inner = 0.0;
            for (int b = 0; b < panels; ++b) {
                const double y0 = loy + (yq - loy) * b / panels,
                             y1 = loy + (yq - loy) * (b + 1) / panels;
                for (int j = 0; j < 24; ++j) {
                    const double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * gl.nodes[j];
                    inner += 0.5 * (y1 - y0) * gl.weights[j] * std::exp(den.logpdf(x, y));
                }
            }
            H += 0.5 * (x1 - x0) * gl.weights[i] * inner;
        }
    }
    const auto table = gh_implied_copula(g, 256, 0);
    CopulaSpec spec;
    spec.family = Family::tabulated_gh;
    spec.table = table;
    auto cop = make_copula(spec);
    CHECK_THAT(cop->cdf(fx.cdf_at(xq), fy.cdf_at(yq)), Catch::Matchers::WithinAbs(H, 2e-5));
}

TEST_CASE("skewed parameters break the direction symmetry downstream") {
    MeshConfig mesh;
    mesh.n_cells = 500;
    const auto spec = gh_copula_spec(nig2().normalized(), 192, 0);
    const auto rep = full_report(spec, {1.0}, mesh, 0);
    // asymmetric beta separates lower and upper tails strongly
    CHECK(rep.sel[0].lambda[0] > rep.sel[2].lambda[0] + 0.05);
}

TEST_CASE("gh_fit recovers a self-consistent optimum") {
    RngStream rng(2025, 3);
    const GHParams truth = gh2();
    auto data = gh_sample(truth, 600, rng);
    OptimConfig cfg;
    cfg.max_iterations = 3000;
    const GHFitResult fit = gh_fit(data, gh_default_init(data), cfg);
    CHECK(fit.converged);
    CHECK(std::isfinite(fit.loglik));
    CHECK_NOTHROW(fit.params.validate());
    // log-likelihood at the fit beats the likelihood at the starting point
    const GHDensity d0(gh_default_init(data));
    double ll0 = 0.0;
    for (const auto& z : data) ll0 += d0.logpdf(z.x, z.y);
    CHECK(fit.loglik >= ll0);
    // refitting from the optimum moves the objective very little
    const GHFitResult refit = gh_fit(data, fit.params, cfg);
    CHECK(refit.loglik >= fit.loglik - 1e-6);
    CHECK(refit.loglik - fit.loglik < 0.5);
    // the fitted correlation lands near the truth
    CHECK_THAT(fit.params.delta_correlation(),
               Catch::Matchers::WithinAbs(truth.delta_correlation(), 0.1));
}

TEST_CASE("vg tabulation handles the delta = 0 singularity") {
    const auto spec = gh_copula_spec(vg1(), 128, 0);
    CHECK_NOTHROW(spec.table->validate());
    MeshConfig mesh;
    mesh.n_cells = 200;
    const auto rep = full_report(spec, {1.0}, mesh, 0);
    CHECK(rep.tau > 0.5);  // strongly dependent reference case
}
