#pragma once

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "taildep/mesh.hpp"
#include "taildep/surfaces.hpp"

namespace taildep {

inline constexpr std::array<SurfaceSelector, 4> all_selectors() {
    return {SurfaceSelector{Side::lower, Direction::x_given_y},
            SurfaceSelector{Side::lower, Direction::y_given_x},
            SurfaceSelector{Side::upper, Direction::x_given_y},
            SurfaceSelector{Side::upper, Direction::y_given_x}};
}

inline int selector_index(const SurfaceSelector& sel) {
    return (sel.side == Side::upper ? 2 : 0) + (sel.direction == Direction::y_given_x ? 1 : 0);
}

// ---------------------------------------------------------------------------
// one fused sweep over the mesh: value + gradient per surface, all measures
// ---------------------------------------------------------------------------

constexpr int kMaxP = 8;

struct RawSurfaceIntegrals {
    double area = 0.0;
    double s1 = 0.0;   // int |Q - I| dS
    double s2 = 0.0;   // int (Q - I) dS
    std::array<double, kMaxP> gamma{};  // int L(Q)^p dS per focus parameter
};

struct SweepResult {
    std::array<RawSurfaceIntegrals, 4> sel{};
    double tau_sum = 0.0, rho_sum = 0.0, sigma_sum = 0.0;
    std::vector<double> p_list;

    void combine(SweepResult& o) {
        for (int s = 0; s < 4; ++s) {
            sel[s].area += o.sel[s].area;
            sel[s].s1 += o.sel[s].s1;
            sel[s].s2 += o.sel[s].s2;
            for (int k = 0; k < kMaxP; ++k) sel[s].gamma[k] += o.sel[s].gamma[k];
        }
        tau_sum += o.tau_sum;
        rho_sum += o.rho_sum;
        sigma_sum += o.sigma_sum;
    }
};

inline SweepResult mesh_sweep(const Copula& cop, const std::vector<double>& p_list,
                              const MeshConfig& mesh, int threads) {
    if (p_list.size() > kMaxP) throw std::invalid_argument("mesh_sweep: too many focus parameters");
    for (double p : p_list)
        if (!(p > 0.0)) throw std::invalid_argument("mesh_sweep: focus parameter p must be positive");
    const int n = mesh.n_cells;
    const int np = static_cast<int>(p_list.size());
    std::array<bool, kMaxP> is_one{};
    for (int k = 0; k < np; ++k) is_one[k] = p_list[k] == 1.0;

    SweepResult total = mesh_reduce<SweepResult>(mesh, threads, [&](int /*j*/, double v, SweepResult& acc) {
        thread_local std::vector<double> us, c, cu, cv;
        if (static_cast<int>(us.size()) != n) {
            us.resize(n);
            for (int i = 0; i < n; ++i) us[i] = mesh.node(i);
            c.resize(n);
            cu.resize(n);
            cv.resize(n);
        }
        cop.eval_row(us, v, c, cu, cv);
        for (int i = 0; i < n; ++i) {
            const double u = us[i];
            acc.tau_sum += cu[i] * cv[i];
            const double dev = c[i] - u * v;
            acc.rho_sum += dev;
            acc.sigma_sum += std::abs(dev);
            for (const auto& s : all_selectors()) {
                const SurfaceValue sv =
                    detail::surface_from_cdf(s, u, v, c[i], cu[i], cv[i], true);
                const double ae = area_element(sv);
                auto& r = acc.sel[selector_index(s)];
                r.area += ae;
                const double d = sv.value - independence_height(s, u, v);
                r.s1 += std::abs(d) * ae;
                r.s2 += d * ae;
                const double L = l_operator(sv);
                if (L > 0.0) {
                    for (int k = 0; k < np; ++k)
                        r.gamma[k] += (is_one[k] ? L : std::pow(L, p_list[k])) * ae;
                }
            }
        }
    });
    const double cell = 1.0 / (static_cast<double>(n) * n);
    for (int s = 0; s < 4; ++s) {
        total.sel[s].area *= cell;
        total.sel[s].s1 *= cell;
        total.sel[s].s2 *= cell;
        for (int k = 0; k < np; ++k) total.sel[s].gamma[k] *= cell;
    }
    total.tau_sum *= cell;
    total.rho_sum *= cell;
    total.sigma_sum *= cell;
    total.p_list = p_list;
    return total;
}

// ---------------------------------------------------------------------------
// reference normalizers for M and W, cached per mesh/focus configuration
// ---------------------------------------------------------------------------

struct ReferenceIntegrals {
    SweepResult m;
    SweepResult w;
};

inline const ReferenceIntegrals& reference_integrals(const std::vector<double>& p_list,
                                                     const MeshConfig& mesh, int threads) {
    struct Key {
        int n, chunk;
        std::vector<double> ps;
        bool operator<(const Key& o) const {
            if (n != o.n) return n < o.n;
            if (chunk != o.chunk) return chunk < o.chunk;
            return ps < o.ps;
        }
    };
    static std::map<Key, ReferenceIntegrals> cache;
    static std::mutex mu;
    Key key{mesh.n_cells, mesh.parallel_chunk, p_list};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    ReferenceIntegrals ref;
    ref.m = mesh_sweep(*make_copula({Family::comonotone}), p_list, mesh, threads);
    ref.w = mesh_sweep(*make_copula({Family::countermonotone}), p_list, mesh, threads);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), std::move(ref)).first->second;
}

// ---------------------------------------------------------------------------
// tail dependence estimates (analytic closed forms or dyadic limits)
// ---------------------------------------------------------------------------

struct TdcEstimate {
    double value = 0.0;
    bool analytic = false;
    bool converged = true;
};

namespace detail {

// Aitken-accelerated limit of a dyadic sequence r_k, k = 6..24
inline TdcEstimate dyadic_limit(const std::vector<double>& r, double lo, double hi) {
    TdcEstimate est;
    const std::size_t n = r.size();
    double value = r.back();
    bool ok = true;
    const double d1 = r[n - 2] - r[n - 1];
    const double d2 = r[n - 3] - r[n - 2];
    if (std::abs(d1) < 1e-12) {
        value = r.back();
    } else if (std::abs(d2 - d1) > 1e-14) {
        value = r[n - 1] - d1 * d1 / (d2 - d1);  // Aitken delta-squared
        // differences must shrink and the extrapolation jump must stay small,
        // otherwise the sequence is still far from its limit
        ok = std::abs(d1) <= std::abs(d2) * 1.05 + 1e-12 &&
             std::abs(value - r.back()) <= 5.0 * std::abs(d1);
    } else {
        ok = false;
    }
    est.value = std::min(hi, std::max(lo, value));
    est.converged = ok && std::abs(d1) < 0.01;
    return est;
}

}  // namespace detail

inline TdcEstimate strong_tdc(const Copula& cop, Side side) {
    if (auto cf = cop.strong_tdc_closed()) {
        return {side == Side::lower ? cf->lower : cf->upper, true, true};
    }
    std::vector<double> r;
    for (int k = 6; k <= 24; ++k) {
        const double a = std::pow(2.0, -k);
        if (side == Side::lower) {
            r.push_back(cop.cdf(a, a) / a);
        } else {
            const double q = 1.0 - a;
            r.push_back((1.0 - 2.0 * q + cop.cdf(q, q)) / a);
        }
    }
    return detail::dyadic_limit(r, 0.0, 1.0);
}

inline TdcEstimate strong_tdc(const CopulaSpec& spec, Side side) {
    return strong_tdc(*make_copula(spec), side);
}

inline TdcEstimate weak_tdc(const Copula& cop, Side side) {
    if (auto cf = cop.weak_tdc_closed(side)) return {*cf, true, true};
    std::vector<double> r;
    for (int k = 6; k <= 24; ++k) {
        const double a = std::pow(2.0, -k);
        double ratio;
        if (side == Side::lower) {
            const double c = cop.cdf(a, a);
            ratio = c <= 0.0 ? 0.0 : 2.0 * std::log(a) / std::log(c) - 1.0;
        } else {
            const double q = 1.0 - a;
            const double t = 1.0 - 2.0 * q + cop.cdf(q, q);
            ratio = t <= 0.0 ? 0.0 : 2.0 * std::log(a) / std::log(t) - 1.0;
        }
        r.push_back(ratio);
    }
    return detail::dyadic_limit(r, -1.0, 1.0);
}

inline TdcEstimate weak_tdc(const CopulaSpec& spec, Side side) {
    return weak_tdc(*make_copula(spec), side);
}

// ---------------------------------------------------------------------------
// scalar measures
// ---------------------------------------------------------------------------

struct MeasureReport {
    CopulaSpec copula;
    MeshConfig mesh;
    std::vector<double> p_list;

    struct PerSelector {
        double area = 0.0;
        double delta = 0.0;
        double kappa = 0.0;
        double delta_bar = 0.0;
        std::vector<double> lambda;  // aligned with p_list
    };
    std::array<PerSelector, 4> sel{};
    double tau = 0.0, rho = 0.0, sigma = 0.0;
    TdcEstimate strong_lower, strong_upper;
    TdcEstimate weak_lower, weak_upper;
    std::vector<std::string> notes;  // clamping and diagnostic events

    const PerSelector& at(const SurfaceSelector& s) const { return sel[selector_index(s)]; }
};

namespace detail {

inline double clamp_logged(double x, double lo, double hi, const char* what,
                           std::vector<std::string>* notes) {
    if (x < lo || x > hi) {
        if (notes)
            notes->push_back(std::string(what) + " clamped from " + std::to_string(x));
        return x < lo ? lo : hi;
    }
    return x;
}

}  // namespace detail

inline MeasureReport assemble_report(const Copula& cop, const SweepResult& sw,
                                     const ReferenceIntegrals& ref, const MeshConfig& mesh) {
    MeasureReport rep;
    rep.copula = cop.spec();
    rep.mesh = mesh;
    rep.p_list = sw.p_list;
    const int np = static_cast<int>(sw.p_list.size());
    for (int s = 0; s < 4; ++s) {
        const auto& r = sw.sel[s];
        const auto& m = ref.m.sel[s];
        const auto& w = ref.w.sel[s];
        auto& out = rep.sel[s];
        out.area = r.area;
        out.delta = detail::clamp_logged((r.area - kSqrt2) / (m.area - kSqrt2), 0.0, 1.0,
                                         "delta", &rep.notes);
        out.kappa = detail::clamp_logged(2.0 * (r.s2 - w.s2) / (m.s2 - w.s2) - 1.0, -1.0, 1.0,
                                         "kappa", &rep.notes);
        out.delta_bar = detail::clamp_logged(r.s1 / m.s1, 0.0, 1.0, "delta_bar", &rep.notes);
        out.lambda.resize(np);
        for (int k = 0; k < np; ++k)
            out.lambda[k] = detail::clamp_logged(r.gamma[k] / m.gamma[k], 0.0, 1.0, "lambda",
                                                 &rep.notes);
    }
    rep.tau = detail::clamp_logged(1.0 - 4.0 * sw.tau_sum, -1.0, 1.0, "tau", &rep.notes);
    rep.rho = detail::clamp_logged(12.0 * sw.rho_sum, -1.0, 1.0, "rho", &rep.notes);
    rep.sigma = detail::clamp_logged(12.0 * sw.sigma_sum, 0.0, 1.0, "sigma", &rep.notes);
    rep.strong_lower = strong_tdc(cop, Side::lower);
    rep.strong_upper = strong_tdc(cop, Side::upper);
    rep.weak_lower = weak_tdc(cop, Side::lower);
    rep.weak_upper = weak_tdc(cop, Side::upper);
    return rep;
}

inline MeasureReport full_report(const Copula& cop, const std::vector<double>& p_list,
                                 const MeshConfig& mesh, int threads = 0) {
    const auto& ref = reference_integrals(p_list, mesh, threads);
    const SweepResult sw = mesh_sweep(cop, p_list, mesh, threads);
    return assemble_report(cop, sw, ref, mesh);
}

inline MeasureReport full_report(const CopulaSpec& spec, const std::vector<double>& p_list,
                                 const MeshConfig& mesh, int threads = 0) {
    return full_report(*make_copula(spec), p_list, mesh, threads);
}

// individual operations (each runs one fused sweep)

inline double surface_area(const CopulaSpec& spec, const SurfaceSelector& sel,
                           const MeshConfig& mesh, int threads = 0) {
    return mesh_sweep(*make_copula(spec), {}, mesh, threads).sel[selector_index(sel)].area;
}

inline double delta(const CopulaSpec& spec, const SurfaceSelector& sel, const MeshConfig& mesh,
                    int threads = 0) {
    const auto& ref = reference_integrals({}, mesh, threads);
    const auto sw = mesh_sweep(*make_copula(spec), {}, mesh, threads);
    const int s = selector_index(sel);
    return detail::clamp_logged((sw.sel[s].area - kSqrt2) / (ref.m.sel[s].area - kSqrt2), 0.0, 1.0,
                                "delta", nullptr);
}

inline double kappa(const CopulaSpec& spec, const SurfaceSelector& sel, const MeshConfig& mesh,
                    int threads = 0) {
    const auto& ref = reference_integrals({}, mesh, threads);
    const auto sw = mesh_sweep(*make_copula(spec), {}, mesh, threads);
    const int s = selector_index(sel);
    return detail::clamp_logged(
        2.0 * (sw.sel[s].s2 - ref.w.sel[s].s2) / (ref.m.sel[s].s2 - ref.w.sel[s].s2) - 1.0, -1.0,
        1.0, "kappa", nullptr);
}

inline double delta_bar(const CopulaSpec& spec, const SurfaceSelector& sel, const MeshConfig& mesh,
                        int threads = 0) {
    const auto& ref = reference_integrals({}, mesh, threads);
    const auto sw = mesh_sweep(*make_copula(spec), {}, mesh, threads);
    const int s = selector_index(sel);
    return detail::clamp_logged(sw.sel[s].s1 / ref.m.sel[s].s1, 0.0, 1.0, "delta_bar", nullptr);
}

inline double gamma_integral(const CopulaSpec& spec, const SurfaceSelector& sel, double p,
                             const MeshConfig& mesh, int threads = 0) {
    return mesh_sweep(*make_copula(spec), {p}, mesh, threads).sel[selector_index(sel)].gamma[0];
}

inline double lambda_tdc(const CopulaSpec& spec, const SurfaceSelector& sel, double p,
                         const MeshConfig& mesh, int threads = 0) {
    const auto& ref = reference_integrals({p}, mesh, threads);
    const auto sw = mesh_sweep(*make_copula(spec), {p}, mesh, threads);
    const int s = selector_index(sel);
    return detail::clamp_logged(sw.sel[s].gamma[0] / ref.m.sel[s].gamma[0], 0.0, 1.0, "lambda",
                                nullptr);
}

struct ClassicalConcordance {
    double tau, rho, sigma;
};

inline ClassicalConcordance classical_concordance(const CopulaSpec& spec, const MeshConfig& mesh,
                                                  int threads = 0) {
    const auto sw = mesh_sweep(*make_copula(spec), {}, mesh, threads);
    return {1.0 - 4.0 * sw.tau_sum, 12.0 * sw.rho_sum, 12.0 * sw.sigma_sum};
}

inline std::optional<double> analytic_tau(const CopulaSpec& spec) {
    return make_copula(spec)->analytic_tau();
}

}  // namespace taildep
