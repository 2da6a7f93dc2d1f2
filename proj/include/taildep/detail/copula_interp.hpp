#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taildep {

inline void InterpolatedCopula::finalize() {
    const std::size_t nu_ = nu(), nv_ = nv();
    if (nu_ < 4 || nv_ < 4) throw std::invalid_argument("InterpolatedCopula: grid too small");
    auto build = [&](const std::vector<double>& tab, std::vector<double>& out) {
        out.resize(tab.size());
        std::vector<double> col(nv_), sl;
        for (std::size_t i = 0; i < nu_; ++i) {
            for (std::size_t j = 0; j < nv_; ++j) col[j] = tab[i * nv_ + j];
            sl = Pchip::slopes(grid_v, col);
            for (std::size_t j = 0; j < nv_; ++j) out[i * nv_ + j] = sl[j];
        }
    };
    build(cdf, slope_cdf);
    build(dcdu, slope_dcdu);
    build(dcdv, slope_dcdv);
}

inline const std::vector<double>* InterpolatedCopula::slopes_of(const std::vector<double>& tab) const {
    if (&tab == &cdf) return &slope_cdf;
    if (&tab == &dcdu) return &slope_dcdu;
    if (&tab == &dcdv) return &slope_dcdv;
    return nullptr;
}

inline void InterpolatedCopula::column_values_at(const std::vector<double>& tab, double v,
                                                 std::vector<double>& out) const {
    const std::size_t nu_ = nu(), nv_ = nv();
    out.resize(nu_);
    const double vq = std::clamp(v, grid_v.front(), grid_v.back());
    std::size_t j = static_cast<std::size_t>(
        std::upper_bound(grid_v.begin(), grid_v.end(), vq) - grid_v.begin());
    j = std::min(std::max<std::size_t>(j, 1), nv_ - 1) - 1;
    if (order == Order::linear) {
        const double t = (vq - grid_v[j]) / (grid_v[j + 1] - grid_v[j]);
        for (std::size_t i = 0; i < nu_; ++i) {
            const double y0 = tab[i * nv_ + j], y1 = tab[i * nv_ + j + 1];
            out[i] = y0 + t * (y1 - y0);
        }
        return;
    }
    const std::vector<double>* sl = slopes_of(tab);
    if (!sl || sl->empty()) throw std::logic_error("InterpolatedCopula: finalize() not called");
    for (std::size_t i = 0; i < nu_; ++i) {
        out[i] = Pchip::hermite(vq, grid_v[j], grid_v[j + 1], tab[i * nv_ + j], tab[i * nv_ + j + 1],
                                (*sl)[i * nv_ + j], (*sl)[i * nv_ + j + 1]);
    }
}

inline double InterpolatedCopula::interp(const std::vector<double>& tab, double u, double v) const {
    thread_local std::vector<double> col;
    column_values_at(tab, v, col);
    const double uq = std::clamp(u, grid_u.front(), grid_u.back());
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(grid_u.begin(), grid_u.end(), uq) - grid_u.begin());
    i = std::min(std::max<std::size_t>(i, 1), nu() - 1) - 1;
    if (order == Order::linear) {
        const double t = (uq - grid_u[i]) / (grid_u[i + 1] - grid_u[i]);
        return col[i] + t * (col[i + 1] - col[i]);
    }
    // local four-point slope estimate keeps single-point queries cheap
    const std::size_t lo = i >= 2 ? i - 2 : 0;
    const std::size_t hi = std::min(i + 3, nu() - 1);
    std::vector<double> gx(grid_u.begin() + lo, grid_u.begin() + hi + 1);
    std::vector<double> gy(col.begin() + lo, col.begin() + hi + 1);
    const auto m = Pchip::slopes(gx, gy);
    const std::size_t k = i - lo;
    return Pchip::hermite(uq, gx[k], gx[k + 1], gy[k], gy[k + 1], m[k], m[k + 1]);
}

inline void InterpolatedCopula::interp_row(const std::vector<double>& tab, double v,
                                           std::span<const double> us, std::span<double> out) const {
    thread_local std::vector<double> col;
    column_values_at(tab, v, col);
    thread_local std::vector<double> mrow;
    mrow = Pchip::slopes(grid_u, col);
    // merged scan over ascending query points
    std::size_t i = 0;
    const std::size_t n = nu();
    for (std::size_t q = 0; q < us.size(); ++q) {
        const double uq = std::clamp(us[q], grid_u.front(), grid_u.back());
        while (i + 2 < n && grid_u[i + 1] <= uq) ++i;
        if (order == Order::linear) {
            const double t = (uq - grid_u[i]) / (grid_u[i + 1] - grid_u[i]);
            out[q] = col[i] + t * (col[i + 1] - col[i]);
        } else {
            out[q] = Pchip::hermite(uq, grid_u[i], grid_u[i + 1], col[i], col[i + 1], mrow[i],
                                    mrow[i + 1]);
        }
    }
}

inline void InterpolatedCopula::validate() const {
    const std::size_t nu_ = nu(), nv_ = nv();
    if (cdf.size() != nu_ * nv_ || dcdu.size() != nu_ * nv_ || dcdv.size() != nu_ * nv_)
        throw std::invalid_argument("InterpolatedCopula: table size mismatch");
    for (std::size_t i = 1; i < nu_; ++i)
        if (!(grid_u[i] > grid_u[i - 1]))
            throw std::invalid_argument("InterpolatedCopula: grid_u not strictly increasing");
    for (std::size_t j = 1; j < nv_; ++j)
        if (!(grid_v[j] > grid_v[j - 1]))
            throw std::invalid_argument("InterpolatedCopula: grid_v not strictly increasing");
    constexpr double tol = 1e-9;
    for (std::size_t i = 0; i < nu_; ++i) {
        for (std::size_t j = 0; j < nv_; ++j) {
            const double u = grid_u[i], v = grid_v[j], c = at(cdf, i, j);
            if (c < std::max(u + v - 1.0, 0.0) - tol || c > std::min(u, v) + tol)
                throw std::invalid_argument("InterpolatedCopula: node violates the FH bounds");
            if (j > 0 && c < at(cdf, i, j - 1) - 1e-12)
                throw std::invalid_argument("InterpolatedCopula: cdf decreasing along v");
            if (i > 0 && c < at(cdf, i - 1, j) - 1e-12)
                throw std::invalid_argument("InterpolatedCopula: cdf decreasing along u");
        }
        // margin recovery at the boundary rows/columns
        if (std::abs(at(cdf, i, nv_ - 1) - grid_u[i]) > 1e-6)
            throw std::invalid_argument("InterpolatedCopula: margin C(u,1)=u violated");
    }
    for (std::size_t j = 0; j < nv_; ++j)
        if (std::abs(at(cdf, nu_ - 1, j) - grid_v[j]) > 1e-6)
            throw std::invalid_argument("InterpolatedCopula: margin C(1,v)=v violated");
}

}  // namespace taildep
