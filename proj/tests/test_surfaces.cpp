#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "taildep/measures.hpp"
#include "taildep/surfaces.hpp"

using namespace taildep;

namespace {

const SurfaceSelector kLXY{Side::lower, Direction::x_given_y};
const SurfaceSelector kLYX{Side::lower, Direction::y_given_x};
const SurfaceSelector kUXY{Side::upper, Direction::x_given_y};
const SurfaceSelector kUYX{Side::upper, Direction::y_given_x};

std::vector<CopulaSpec> probe_specs() {
    return {
        CopulaSpec{Family::independence},
        CopulaSpec::two_param(Family::frechet, 0.4, 0.2),
        CopulaSpec::one_param(Family::gumbel, 4.0),
        CopulaSpec::one_param(Family::clayton, 2.0),
        CopulaSpec::one_param(Family::frank, -4.0),
        CopulaSpec::one_param(Family::amh, 0.6),
        CopulaSpec::two_param(Family::marshall_olkin, 0.7, 0.9),
        CopulaSpec::one_param(Family::cuadras_auge, 0.5),
        CopulaSpec::one_param(Family::gaussian, 0.7),
        CopulaSpec::two_param(Family::student_t, 0.6, 2.0),
    };
}

}  // namespace

TEST_CASE("psi values for reference cases") {
    auto ind = make_copula(CopulaSpec{Family::independence});
    const auto s = psi(*ind, kLXY, {0.4, 0.6});
    CHECK_THAT(s.value, Catch::Matchers::WithinAbs(0.4, 1e-15));
    CHECK_THAT(s.grad_u, Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(s.grad_v, Catch::Matchers::WithinAbs(0.0, 1e-15));

    auto m = make_copula(CopulaSpec{Family::comonotone});
    CHECK_THAT(psi(*m, kLXY, {0.3, 0.6}).value, Catch::Matchers::WithinAbs(0.5, 1e-15));

    auto cl = make_copula(CopulaSpec::one_param(Family::clayton, 2.0));
    const auto sc = psi(*cl, kLXY, {0.5, 0.5});
    CHECK_THAT(sc.value, Catch::Matchers::WithinAbs(std::pow(7.0, -0.5) / 0.5, 1e-12));
    // hand-differentiated closed form: dPsi/du = Cu/v, dPsi/dv = Cv/v - C/v^2
    const double cu = std::pow(0.5, -3.0) * std::pow(7.0, -1.5);
    CHECK_THAT(sc.grad_u, Catch::Matchers::WithinAbs(cu / 0.5, 1e-12));
    CHECK_THAT(sc.grad_v, Catch::Matchers::WithinAbs(cu / 0.5 - std::pow(7.0, -0.5) / 0.25, 1e-12));
}

TEST_CASE("psi boundary identities hold in the limit") {
    auto g = make_copula(CopulaSpec::one_param(Family::gumbel, 3.0));
    CHECK_THAT(psi(*g, kLXY, {0.37, 1.0}).value, Catch::Matchers::WithinAbs(0.37, 1e-12));
    CHECK_THAT(psi(*g, kLXY, {1.0, 0.37}).value, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(psi(*g, kLXY, {0.0, 0.37}).value, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("psi domain errors at singular boundaries") {
    auto g = make_copula(CopulaSpec::one_param(Family::gumbel, 3.0));
    CHECK_THROWS_AS(psi(*g, kLXY, {0.5, 0.0}), std::domain_error);
    CHECK_THROWS_AS(psi(*g, kLYX, {0.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(psi(*g, kUXY, {0.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(psi(*g, kUYX, {1.0, 0.5}), std::domain_error);
    CHECK_NOTHROW(psi(*g, kUXY, {1.0, 0.5}));
}

TEST_CASE("reference surfaces") {
    CHECK_THAT(reference_surface(ReferenceKind::comonotone, kLXY, {0.3, 0.6}).value,
               Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THAT(reference_surface(ReferenceKind::countermonotone, kLXY, {0.3, 0.5}).value,
               Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(reference_surface(ReferenceKind::countermonotone, kLXY, {0.8, 0.5}).value,
               Catch::Matchers::WithinAbs(0.6, 1e-15));
    CHECK_THAT(reference_surface(ReferenceKind::independence, kLYX, {0.3, 0.5}).value,
               Catch::Matchers::WithinAbs(0.5, 1e-15));
    // upper-side independence surface is 1-u
    CHECK_THAT(reference_surface(ReferenceKind::independence, kUXY, {0.3, 0.5}).value,
               Catch::Matchers::WithinAbs(0.7, 1e-15));
}

TEST_CASE("conditional Frechet-Hoeffding sandwich at random interior points") {
    RngStream rng(31337, 0);
    for (const auto& spec : probe_specs()) {
        auto cop = make_copula(spec);
        for (const auto& sel : all_selectors()) {
            for (int i = 0; i < 2500; ++i) {
                const UnitSquarePoint p{rng.uniform(0.001, 0.999), rng.uniform(0.001, 0.999)};
                const double val = psi(*cop, sel, p).value;
                const double lo = reference_surface(ReferenceKind::countermonotone, sel, p).value;
                const double hi = reference_surface(ReferenceKind::comonotone, sel, p).value;
                CHECK(val >= lo - 1e-9);
                CHECK(val <= hi + 1e-9);
                CHECK(val >= -1e-12);
                CHECK(val <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("symmetric copulas mirror the two conditioning directions") {
    RngStream rng(5, 0);
    for (const auto& spec : probe_specs()) {
        if (spec.family == Family::marshall_olkin) continue;  // asymmetric witness
        auto cop = make_copula(spec);
        for (int i = 0; i < 500; ++i) {
            const double u = rng.uniform(0.01, 0.99), v = rng.uniform(0.01, 0.99);
            CHECK_THAT(psi(*cop, kLXY, {u, v}).value,
                       Catch::Matchers::WithinAbs(psi(*cop, kLYX, {v, u}).value, 1e-10));
        }
    }
}

TEST_CASE("analytic gradients match central finite differences of psi") {
    RngStream rng(2222, 0);
    for (const auto& spec : probe_specs()) {
        auto cop = make_copula(spec);
        for (const auto& sel : all_selectors()) {
            for (int i = 0; i < 120; ++i) {
                const double u = rng.uniform(0.05, 0.95), v = rng.uniform(0.05, 0.95);
                const bool near_ridge =
                    std::abs(u - v) < 1e-3 || std::abs(u + v - 1.0) < 1e-3 ||
                    (spec.family == Family::marshall_olkin &&
                     std::abs(std::pow(u, spec.p1) - std::pow(v, spec.p2)) < 1e-3) ||
                    (spec.family == Family::cuadras_auge && std::abs(u - v) < 1e-3);
                if (near_ridge) continue;
                const auto s = psi(*cop, sel, {u, v});
                const double h = 1e-6;
                const double fdu =
                    (psi(*cop, sel, {u + h, v}).value - psi(*cop, sel, {u - h, v}).value) / (2 * h);
                const double fdv =
                    (psi(*cop, sel, {u, v + h}).value - psi(*cop, sel, {u, v - h}).value) / (2 * h);
                CHECK_THAT(s.grad_u, Catch::Matchers::WithinAbs(fdu, 1e-5 * (1.0 + std::abs(fdu))));
                CHECK_THAT(s.grad_v, Catch::Matchers::WithinAbs(fdv, 1e-5 * (1.0 + std::abs(fdv))));
            }
        }
    }
}

TEST_CASE("upper countermonotone surface is the pi rotation of the lower one") {
    RngStream rng(10101, 0);
    for (int i = 0; i < 2000; ++i) {
        const double u = rng.uniform(0.001, 0.999), v = rng.uniform(0.001, 0.998);
        const double up = reference_surface(ReferenceKind::countermonotone, kUXY, {u, v}).value;
        const double lo =
            reference_surface(ReferenceKind::countermonotone, kLXY, {1.0 - u, 1.0 - v}).value;
        CHECK_THAT(up, Catch::Matchers::WithinAbs(lo, 1e-12));
    }
}

TEST_CASE("L operator reference cases") {
    auto ind = make_copula(CopulaSpec{Family::independence});
    RngStream rng(9, 0);
    for (int i = 0; i < 500; ++i) {
        const UnitSquarePoint p{rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99)};
        CHECK(l_operator(psi(*ind, kLXY, p)) == 0.0);
        CHECK(l_operator(reference_surface(ReferenceKind::countermonotone, kLXY, p)) == 0.0);
    }
    // comonotone surface inside the off-diagonal wedge: L = u / v^3
    const auto sm = reference_surface(ReferenceKind::comonotone, kLXY, {0.25, 0.5});
    CHECK_THAT(sm.grad_u, Catch::Matchers::WithinAbs(2.0, 1e-15));
    CHECK_THAT(sm.grad_v, Catch::Matchers::WithinAbs(-1.0, 1e-15));
    CHECK_THAT(l_operator(sm), Catch::Matchers::WithinAbs(2.0, 1e-15));
    for (int i = 0; i < 500; ++i) {
        double u = rng.uniform(), v = rng.uniform();
        if (u >= v) std::swap(u, v);
        if (u == v) continue;
        CHECK(l_operator(reference_surface(ReferenceKind::comonotone, kLXY, {u, v})) > 0.0);
    }
}

TEST_CASE("fused row evaluation agrees with psi for each selector") {
    // the transform used by the measure engine is the one psi exposes
    auto cop = make_copula(CopulaSpec::one_param(Family::clayton, 3.0));
    const int n = 64;
    std::vector<double> us(n), c(n), cu(n), cv(n);
    for (int i = 0; i < n; ++i) us[i] = (i + 0.5) / n;
    const double v = 0.3;
    cop->eval_row(us, v, c, cu, cv);
    for (const auto& sel : all_selectors()) {
        for (int i = 0; i < n; i += 7) {
            const auto direct = psi(*cop, sel, {us[i], v});
            const auto fused = detail::surface_from_cdf(sel, us[i], v, c[i], cu[i], cv[i], true);
            CHECK_THAT(fused.value, Catch::Matchers::WithinAbs(direct.value, 1e-13));
            CHECK_THAT(fused.grad_u, Catch::Matchers::WithinAbs(direct.grad_u, 1e-12));
            CHECK_THAT(fused.grad_v, Catch::Matchers::WithinAbs(direct.grad_v, 1e-12));
        }
    }
}
