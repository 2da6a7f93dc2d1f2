#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace taildep {
namespace detail {

// Quantile nodes for cumulative integration of the t copula conditional over
// a cell-centered mesh row, cached per (nu, N). Each mesh cell [jh,(j+1)h]
// carries Gauss-Legendre nodes for the full cell and for its leading half
// (to reach the cell-center), with the first and last cells refined
// geometrically toward the endpoint kinks of the integrand.
struct StudentRowNodes {
    int n = 0;
    // per cell: node weights/abscissae in probability space and t-quantiles
    struct Seg {
        double w;   // quadrature weight (already scaled by interval half-width)
        double x;   // t quantile at the node
    };
    std::vector<std::vector<Seg>> full;  // integral over the whole cell j
    std::vector<std::vector<Seg>> half;  // integral over [jh, (j+1/2)h]
    std::vector<double> xq_center;       // quantile at cell centers
};

inline std::shared_ptr<const StudentRowNodes> student_row_nodes(double nu, int n) {
    static std::map<std::pair<double, int>, std::shared_ptr<const StudentRowNodes>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({nu, n});
        if (it != cache.end()) return it->second;
    }
    auto nodes = std::make_shared<StudentRowNodes>();
    nodes->n = n;
    nodes->full.resize(n);
    nodes->half.resize(n);
    nodes->xq_center.resize(n);
    const double h = 1.0 / n;
    const auto& gl = gauss_legendre(6);
    auto add_panel = [&](std::vector<StudentRowNodes::Seg>& out, double a, double b) {
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double w = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
            out.push_back({0.5 * (b - a) * gl.weights[i], student_t_quantile(w, nu)});
        }
    };
    auto add_graded_lo = [&](std::vector<StudentRowNodes::Seg>& out, double a, double b) {
        // endpoint kink at a: geometric panels shrinking toward a
        const double len = b - a;
        double lo = a + len * std::pow(0.25, 10);
        out.push_back({lo - a, student_t_quantile(a + 0.5 * (lo - a) + 1e-300, nu)});
        for (int k = 10; k >= 1; --k) {
            const double hi = a + len * std::pow(0.25, k - 1);
            add_panel(out, lo, hi);
            lo = hi;
        }
    };
    auto add_graded_hi = [&](std::vector<StudentRowNodes::Seg>& out, double a, double b) {
        const double len = b - a;
        double hi = b - len * std::pow(0.25, 10);
        out.push_back({b - hi, student_t_quantile(b - 0.5 * (b - hi), nu)});
        for (int k = 10; k >= 1; --k) {
            const double lo = b - len * std::pow(0.25, k - 1);
            add_panel(out, lo, hi);
            hi = lo;
        }
    };
    for (int j = 0; j < n; ++j) {
        const double a = j * h, b = (j + 1) * h, mid = (j + 0.5) * h;
        nodes->xq_center[j] = student_t_quantile(mid, nu);
        if (j == 0) {
            add_graded_lo(nodes->half[j], 0.0, mid);
            add_graded_lo(nodes->full[j], 0.0, b);
        } else if (j == n - 1) {
            add_panel(nodes->half[j], a, mid);
            add_graded_hi(nodes->full[j], a, b);
        } else {
            add_panel(nodes->half[j], a, mid);
            add_panel(nodes->full[j], a, b);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(nu, n), std::move(nodes)).first->second;
}

}  // namespace detail

inline void StudentTCopula::eval_row(std::span<const double> us, double v, std::span<double> c,
                                     std::span<double> cu, std::span<double> cv) const {
    const int n = static_cast<int>(us.size());
    // only the production mesh pattern (cell centers over [0,1]) is batched
    const double h = 1.0 / n;
    bool mesh_like = n >= 16;
    for (int i = 0; i < n && mesh_like; i += std::max(1, n / 7))
        mesh_like = std::abs(us[i] - (i + 0.5) * h) < 1e-12;
    if (!mesh_like) {
        Copula::eval_row(us, v, c, cu, cv);
        return;
    }
    const auto nodes = detail::student_row_nodes(nu_, n);
    const double y = student_t_quantile(v, nu_);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        double half = 0.0;
        for (const auto& s : nodes->half[j]) half += s.w * cond_cdf(y, s.x);
        c[j] = clamp01(acc + half);
        double fullint = 0.0;
        for (const auto& s : nodes->full[j]) fullint += s.w * cond_cdf(y, s.x);
        acc += fullint;
        const double x = nodes->xq_center[j];
        cu[j] = clamp01(cond_cdf(y, x));
        cv[j] = clamp01(cond_cdf(x, y));
    }
}

}  // namespace taildep
