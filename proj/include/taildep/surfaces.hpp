#pragma once

#include <cmath>
#include <stdexcept>

#include "taildep/copula.hpp"

namespace taildep {

struct SurfaceSelector {
    Side side = Side::lower;
    Direction direction = Direction::x_given_y;
};

inline const char* side_name(Side s) { return s == Side::lower ? "lower" : "upper"; }
inline const char* direction_name(Direction d) {
    return d == Direction::x_given_y ? "XgY" : "YgX";
}

struct SurfaceValue {
    double value = 0.0;
    double grad_u = 0.0;
    double grad_v = 0.0;
    bool analytic_grad = true;
};

enum class ReferenceKind { independence, comonotone, countermonotone };

namespace detail {

inline void check_surface_domain(const SurfaceSelector& sel, double u, double v) {
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
        throw std::domain_error("psi: point outside the unit square");
    const bool bad =
        (sel.direction == Direction::x_given_y)
            ? (sel.side == Side::lower ? v <= 0.0 : v >= 1.0)
            : (sel.side == Side::lower ? u <= 0.0 : u >= 1.0);
    if (bad)
        throw std::domain_error(
            "psi: conditioning coordinate sits on the singular boundary of this surface");
}

// transform copula-level values (c, cu, cv) into the selected surface
inline SurfaceValue surface_from_cdf(const SurfaceSelector& sel, double u, double v, double c,
                                     double cu, double cv, bool analytic) {
    SurfaceValue out;
    out.analytic_grad = analytic;
    if (sel.side == Side::lower) {
        if (sel.direction == Direction::x_given_y) {
            out.value = c / v;
            out.grad_u = cu / v;
            out.grad_v = cv / v - c / (v * v);
        } else {
            out.value = c / u;
            out.grad_u = cu / u - c / (u * u);
            out.grad_v = cv / u;
        }
    } else {
        const double num = 1.0 - u - v + c;
        if (sel.direction == Direction::x_given_y) {
            const double w = 1.0 - v;
            out.value = num / w;
            out.grad_u = (cu - 1.0) / w;
            out.grad_v = ((cv - 1.0) * w + num) / (w * w);
        } else {
            const double w = 1.0 - u;
            out.value = num / w;
            out.grad_u = ((cu - 1.0) * w + num) / (w * w);
            out.grad_v = (cv - 1.0) / w;
        }
    }
    return out;
}

}  // namespace detail

inline SurfaceValue psi(const Copula& cop, const SurfaceSelector& sel, UnitSquarePoint p) {
    detail::check_surface_domain(sel, p.u, p.v);
    const double c = cop.cdf(p.u, p.v);
    const Partials d = cop.partials(p.u, p.v);
    return detail::surface_from_cdf(sel, p.u, p.v, c, d.du, d.dv, d.analytic);
}

inline SurfaceValue psi(const CopulaSpec& spec, const SurfaceSelector& sel, UnitSquarePoint p) {
    return psi(*make_copula(spec), sel, p);
}

inline SurfaceValue reference_surface(ReferenceKind kind, const SurfaceSelector& sel,
                                      UnitSquarePoint p) {
    detail::check_surface_domain(sel, p.u, p.v);
    double c, cu, cv;
    switch (kind) {
        case ReferenceKind::independence:
            c = p.u * p.v; cu = p.v; cv = p.u;
            break;
        case ReferenceKind::comonotone: {
            const double s = sign0(p.u - p.v);
            c = std::min(p.u, p.v);
            cu = 0.5 * (1.0 - s);
            cv = 0.5 * (1.0 + s);
            break;
        }
        case ReferenceKind::countermonotone: {
            const double s = sign0(p.u + p.v - 1.0);
            c = std::max(p.u + p.v - 1.0, 0.0);
            cu = cv = 0.5 * (1.0 + s);
            break;
        }
        default:
            throw std::logic_error("reference_surface: unknown kind");
    }
    return detail::surface_from_cdf(sel, p.u, p.v, c, cu, cv, true);
}

// L(Q) = -min(dQ/dv * dQ/du, 0)
inline double l_operator(const SurfaceValue& sv) {
    return -std::min(sv.grad_v * sv.grad_u, 0.0);
}

inline double area_element(const SurfaceValue& sv) {
    return std::sqrt(1.0 + sv.grad_u * sv.grad_u + sv.grad_v * sv.grad_v);
}

// independence-plane height at a point for the selected surface
inline double independence_height(const SurfaceSelector& sel, double u, double v) {
    if (sel.side == Side::lower)
        return sel.direction == Direction::x_given_y ? u : v;
    return sel.direction == Direction::x_given_y ? 1.0 - u : 1.0 - v;
}

}  // namespace taildep
