#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "taildep/detail/bvn.hpp"
#include "taildep/optim.hpp"
#include "taildep/special.hpp"

namespace taildep {

inline const char* family_name(Family f) {
    switch (f) {
        case Family::independence: return "independence";
        case Family::comonotone: return "comonotone";
        case Family::countermonotone: return "countermonotone";
        case Family::frechet: return "frechet";
        case Family::mardia: return "mardia";
        case Family::cuadras_auge: return "cuadras_auge";
        case Family::gumbel: return "gumbel";
        case Family::amh: return "amh";
        case Family::clayton: return "clayton";
        case Family::frank: return "frank";
        case Family::marshall_olkin: return "marshall_olkin";
        case Family::gaussian: return "gaussian";
        case Family::student_t: return "student_t";
        case Family::tabulated_gh: return "tabulated_gh";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    for (Family f : {Family::independence, Family::comonotone, Family::countermonotone,
                     Family::frechet, Family::mardia, Family::cuadras_auge, Family::gumbel,
                     Family::amh, Family::clayton, Family::frank, Family::marshall_olkin,
                     Family::gaussian, Family::student_t, Family::tabulated_gh})
        if (s == family_name(f)) return f;
    if (s == "t") return Family::student_t;
    if (s == "pi") return Family::independence;
    throw std::invalid_argument("unknown copula family: " + s);
}

inline void CopulaSpec::validate() const {
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(std::string(family_name(family)) + ": " + msg);
    };
    switch (family) {
        case Family::independence:
        case Family::comonotone:
        case Family::countermonotone:
            break;
        case Family::frechet:
            if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0)) fail("alpha, beta in [0,1] required");
            if (!(p1 + p2 <= 1.0)) fail("alpha + beta <= 1 required");
            break;
        case Family::mardia:
            if (!(p1 >= -1.0 && p1 <= 1.0)) fail("theta in [-1,1] required");
            break;
        case Family::cuadras_auge:
            if (!(p1 >= 0.0 && p1 <= 1.0)) fail("theta in [0,1] required");
            break;
        case Family::gumbel:
            if (!(p1 >= 1.0)) fail("theta >= 1 required");
            break;
        case Family::amh:
            if (!(p1 >= -1.0 && p1 <= 1.0)) fail("theta in [-1,1] required");
            break;
        case Family::clayton:
            if (!(p1 >= -1.0) || p1 == 0.0) fail("theta in [-1,0) or (0,inf) required");
            break;
        case Family::frank:
            if (p1 == 0.0 || !std::isfinite(p1)) fail("theta must be finite and nonzero");
            break;
        case Family::marshall_olkin:
            if (!(p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0)) fail("alpha, beta in (0,1) required");
            break;
        case Family::gaussian:
            if (!(p1 > -1.0 && p1 < 1.0)) fail("rho in (-1,1) required");
            break;
        case Family::student_t:
            if (!(p1 > -1.0 && p1 < 1.0)) fail("rho in (-1,1) required");
            if (!(p2 > 0.0)) fail("nu > 0 required");
            break;
        case Family::tabulated_gh:
            if (!table) fail("missing interpolation table");
            break;
    }
}

inline std::string CopulaSpec::label() const {
    char buf[96];
    switch (family) {
        case Family::frechet:
        case Family::marshall_olkin:
        case Family::student_t:
            std::snprintf(buf, sizeof buf, "%s(%g,%g)", family_name(family), p1, p2);
            return buf;
        case Family::independence:
        case Family::comonotone:
        case Family::countermonotone:
        case Family::tabulated_gh:
            return family_name(family);
        default:
            std::snprintf(buf, sizeof buf, "%s(%g)", family_name(family), p1);
            return buf;
    }
}

// ---------------------------------------------------------------------------
// base-class defaults
// ---------------------------------------------------------------------------

inline Partials Copula::partials(double u, double v) const {
    // central differences, step clamped so the stencil stays inside (0,1)
    auto fd = [&](double p) {
        double h = 1e-5;
        h = std::min({h, 0.5 * p, 0.5 * (1.0 - p)});
        return h;
    };
    const double hu = fd(u), hv = fd(v);
    Partials out;
    out.analytic = false;
    out.du = (cdf(u + hu, v) - cdf(u - hu, v)) / (2.0 * hu);
    out.dv = (cdf(u, v + hv) - cdf(u, v - hv)) / (2.0 * hv);
    out.du = clamp01(out.du);
    out.dv = clamp01(out.dv);
    return out;
}

inline double Copula::density(double, double) const {
    throw std::logic_error(std::string(family_name(spec_.family)) +
                           ": copula has a singular component, no density; "
                           "use sampling-based methods");
}

inline std::optional<double> Copula::weak_tdc_closed(Side side) const {
    // positive strong tail dependence forces the log-ratio limit to one
    if (auto s = strong_tdc_closed()) {
        const double lam = side == Side::lower ? s->lower : s->upper;
        if (lam > 0.0) return 1.0;
    }
    return std::nullopt;
}

inline void Copula::eval_row(std::span<const double> us, double v, std::span<double> c,
                             std::span<double> cu, std::span<double> cv) const {
    for (std::size_t i = 0; i < us.size(); ++i) {
        c[i] = cdf(us[i], v);
        const Partials p = partials(us[i], v);
        cu[i] = p.du;
        cv[i] = p.dv;
    }
}

namespace detail {

// conditional inversion sampler shared by the Archimedean families
template <class DuFn>
inline UnitSquarePoint conditional_inverse_sample(const DuFn& du, RngStream& rng) {
    const double u = rng.uniform();
    const double w = rng.uniform();
    constexpr double lo = 1e-12, hi = 1.0 - 1e-12;
    const double flo = du(u, lo), fhi = du(u, hi);
    if (w <= flo) return {u, lo};
    if (w >= fhi) return {u, hi};
    const double v = brent_root([&](double t) { return du(u, t) - w; }, lo, hi, 1e-13);
    return {u, v};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// reference copulas
// ---------------------------------------------------------------------------

class IndependenceCopula final : public Copula {
public:
    using Copula::Copula;
    double cdf(double u, double v) const override { return u * v; }
    Partials partials(double u, double v) const override { return {v, u, true}; }
    bool has_density() const override { return true; }
    double density(double, double) const override { return 1.0; }
    std::optional<double> analytic_tau() const override { return 0.0; }
    std::optional<TdcClosedForm> strong_tdc_closed() const override { return TdcClosedForm{0.0, 0.0}; }
    std::optional<double> weak_tdc_closed(Side) const override { return 0.0; }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out) {
            p.u = rng.uniform();
            p.v = rng.uniform();
        }
    }
};

class ComonotoneCopula final : public Copula {
public:
    using Copula::Copula;
    double cdf(double u, double v) const override { return std::min(u, v); }
    Partials partials(double u, double v) const override {
        const double s = sign0(u - v);
        return {0.5 * (1.0 - s), 0.5 * (1.0 + s), true};
    }
    std::optional<double> analytic_tau() const override { return 1.0; }
    std::optional<TdcClosedForm> strong_tdc_closed() const override { return TdcClosedForm{1.0, 1.0}; }
    std::optional<double> weak_tdc_closed(Side) const override { return 1.0; }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out) {
            p.u = rng.uniform();
            p.v = p.u;
        }
    }
};

class CountermonotoneCopula final : public Copula {
public:
    using Copula::Copula;
    double cdf(double u, double v) const override { return std::max(u + v - 1.0, 0.0); }
    Partials partials(double u, double v) const override {
        const double s = sign0(u + v - 1.0);
        const double g = 0.5 * (1.0 + s);
        return {g, g, true};
    }
    std::optional<double> analytic_tau() const override { return -1.0; }
    std::optional<TdcClosedForm> strong_tdc_closed() const override { return TdcClosedForm{0.0, 0.0}; }
    std::optional<double> weak_tdc_closed(Side) const override { return -1.0; }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out) {
            p.u = rng.uniform();
            p.v = 1.0 - p.u;
        }
    }
};

// ---------------------------------------------------------------------------
// mixtures of M, Pi, W
// ---------------------------------------------------------------------------

class FrechetMixCopula : public Copula {
public:
    FrechetMixCopula(CopulaSpec spec, double wm, double ww)
        : Copula(std::move(spec)), wm_(wm), ww_(ww), wp_(1.0 - wm - ww) {}

    double cdf(double u, double v) const override {
        return wm_ * std::min(u, v) + wp_ * u * v + ww_ * std::max(u + v - 1.0, 0.0);
    }
    Partials partials(double u, double v) const override {
        const double sm = sign0(u - v), sw = sign0(u + v - 1.0);
        const double gw = 0.5 * (1.0 + sw);
        return {wm_ * 0.5 * (1.0 - sm) + wp_ * v + ww_ * gw,
                wm_ * 0.5 * (1.0 + sm) + wp_ * u + ww_ * gw, true};
    }
    std::optional<double> analytic_tau() const override {
        return (wm_ - ww_) * (wm_ + ww_ + 2.0) / 3.0;
    }
    std::optional<TdcClosedForm> strong_tdc_closed() const override {
        return TdcClosedForm{wm_, wm_};
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out) {
            const double pick = rng.uniform();
            p.u = rng.uniform();
            if (pick < wm_) p.v = p.u;
            else if (pick < wm_ + ww_) p.v = 1.0 - p.u;
            else p.v = rng.uniform();
        }
    }

private:
    double wm_, ww_, wp_;
};

// ---------------------------------------------------------------------------
// Marshall-Olkin C = min(u^{1-a} v, u v^{1-b}); Cuadras-Auge is a = b = theta
// ---------------------------------------------------------------------------

class MarshallOlkinCopula : public Copula {
public:
    MarshallOlkinCopula(CopulaSpec spec, double a, double b)
        : Copula(std::move(spec)), a_(a), b_(b) {}

    double cdf(double u, double v) const override {
        return std::min(std::pow(u, 1.0 - a_) * v, u * std::pow(v, 1.0 - b_));
    }
    Partials partials(double u, double v) const override {
        const double t1 = std::pow(u, 1.0 - a_) * v;
        const double t2 = u * std::pow(v, 1.0 - b_);
        const double s = sign0(t1 - t2);
        const double du1 = (1.0 - a_) * std::pow(u, -a_) * v, dv1 = std::pow(u, 1.0 - a_);
        const double du2 = std::pow(v, 1.0 - b_), dv2 = (1.0 - b_) * u * std::pow(v, -b_);
        if (s < 0.0) return {du1, dv1, true};
        if (s > 0.0) return {du2, dv2, true};
        return {0.5 * (du1 + du2), 0.5 * (dv1 + dv2), true};
    }
    bool exchangeable() const override { return a_ == b_; }
    std::optional<double> analytic_tau() const override {
        return a_ * b_ / (a_ + b_ - a_ * b_);
    }
    std::optional<TdcClosedForm> strong_tdc_closed() const override {
        return TdcClosedForm{0.0, std::min(a_, b_)};
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        // shock representation: rates chosen so both margins are standard
        const double l1 = 1.0 - a_;
        const double l12 = a_;
        const double l2 = a_ * (1.0 - b_) / b_;
        out.resize(n);
        for (auto& p : out) {
            const double z1 = l1 > 0.0 ? rng.exponential() / l1 : std::numeric_limits<double>::infinity();
            const double z2 = l2 > 0.0 ? rng.exponential() / l2 : std::numeric_limits<double>::infinity();
            const double z12 = rng.exponential() / l12;
            const double x = std::min(z1, z12);
            const double y = std::min(z2, z12);
            p.u = std::exp(-x);
            p.v = std::exp(-(a_ / b_) * y);
        }
    }

protected:
    double a_, b_;
};

class CuadrasAugeCopula final : public MarshallOlkinCopula {
public:
    CuadrasAugeCopula(CopulaSpec spec, double theta)
        : MarshallOlkinCopula(std::move(spec), theta, theta) {}
    std::optional<double> analytic_tau() const override {
        return a_ / (2.0 - a_);
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        if (a_ <= 0.0) {  // theta = 0 degenerates to independence
            out.resize(n);
            for (auto& p : out) {
                p.u = rng.uniform();
                p.v = rng.uniform();
            }
            return;
        }
        if (a_ >= 1.0) {  // theta = 1 is comonotone
            out.resize(n);
            for (auto& p : out) {
                p.u = rng.uniform();
                p.v = p.u;
            }
            return;
        }
        MarshallOlkinCopula::sample(n, rng, out);
    }
};

// ---------------------------------------------------------------------------
// Archimedean families
// ---------------------------------------------------------------------------

class GumbelCopula final : public Copula {
public:
    GumbelCopula(CopulaSpec spec, double theta) : Copula(std::move(spec)), th_(theta) {}

    double cdf(double u, double v) const override {
        if (th_ == 1.0) return u * v;
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0) return v;
        if (v >= 1.0) return u;
        return std::exp(-std::pow(spow(u) + spow(v), 1.0 / th_));
    }
    Partials partials(double u, double v) const override {
        if (th_ == 1.0) return {v, u, true};
        const double lu = -std::log(u), lv = -std::log(v);
        const double S = std::pow(lu, th_) + std::pow(lv, th_);
        const double A = std::pow(S, 1.0 / th_);
        const double C = std::exp(-A);
        const double f = C * std::pow(S, 1.0 / th_ - 1.0);
        return {clamp01(f * std::pow(lu, th_ - 1.0) / u), clamp01(f * std::pow(lv, th_ - 1.0) / v), true};
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override {
        if (th_ == 1.0) return 1.0;
        const double lu = -std::log(u), lv = -std::log(v);
        const double S = std::pow(lu, th_) + std::pow(lv, th_);
        const double A = std::pow(S, 1.0 / th_);
        const double logc = -A + (th_ - 1.0) * (std::log(lu) + std::log(lv)) - std::log(u * v) +
                            (2.0 / th_ - 2.0) * std::log(S) + std::log1p((th_ - 1.0) / A);
        return std::exp(logc);
    }
    std::optional<double> analytic_tau() const override { return 1.0 - 1.0 / th_; }
    std::optional<TdcClosedForm> strong_tdc_closed() const override {
        return TdcClosedForm{0.0, th_ > 1.0 ? 2.0 - std::pow(2.0, 1.0 / th_) : 0.0};
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out)
            p = detail::conditional_inverse_sample(
                [this](double u, double v) { return partials(u, v).du; }, rng);
    }

private:
    double spow(double x) const { return std::pow(-std::log(x), th_); }
    double th_;
};

class ClaytonCopula final : public Copula {
public:
    ClaytonCopula(CopulaSpec spec, double theta) : Copula(std::move(spec)), th_(theta) {}

    double cdf(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0) return v;
        if (v >= 1.0) return u;
        const double s = std::pow(u, -th_) + std::pow(v, -th_) - 1.0;
        if (th_ < 0.0 && s <= 0.0) return 0.0;
        return std::pow(s, -1.0 / th_);
    }
    Partials partials(double u, double v) const override {
        const double s = std::pow(u, -th_) + std::pow(v, -th_) - 1.0;
        if (th_ < 0.0 && s < 0.0) return {0.0, 0.0, true};
        if (th_ < 0.0 && s == 0.0) {
            const double e = -1.0 / th_ - 1.0;
            const double base = std::pow(s, e);  // zero for e > 0
            return {0.5 * base * std::pow(u, -th_ - 1.0), 0.5 * base * std::pow(v, -th_ - 1.0), true};
        }
        const double f = std::pow(s, -1.0 / th_ - 1.0);
        return {clamp01(f * std::pow(u, -th_ - 1.0)), clamp01(f * std::pow(v, -th_ - 1.0)), true};
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override {
        const double s = std::pow(u, -th_) + std::pow(v, -th_) - 1.0;
        if (th_ < 0.0 && s <= 0.0) return 0.0;
        return (1.0 + th_) * std::pow(u * v, -th_ - 1.0) * std::pow(s, -1.0 / th_ - 2.0);
    }
    std::optional<double> analytic_tau() const override { return th_ / (th_ + 2.0); }
    std::optional<TdcClosedForm> strong_tdc_closed() const override {
        return TdcClosedForm{th_ > 0.0 ? std::pow(2.0, -1.0 / th_) : 0.0, 0.0};
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out)
            p = detail::conditional_inverse_sample(
                [this](double u, double v) { return partials(u, v).du; }, rng);
    }

private:
    double th_;
};

class FrankCopula final : public Copula {
public:
    FrankCopula(CopulaSpec spec, double theta) : Copula(std::move(spec)), th_(theta) {}

    double cdf(double u, double v) const override {
        const double em1 = std::expm1(-th_);
        const double gu = std::expm1(-th_ * u), gv = std::expm1(-th_ * v);
        return -std::log1p(gu * gv / em1) / th_;
    }
    Partials partials(double u, double v) const override {
        const double em1 = std::expm1(-th_);
        const double gu = std::expm1(-th_ * u), gv = std::expm1(-th_ * v);
        const double den = em1 + gu * gv;
        return {clamp01(std::exp(-th_ * u) * gv / den), clamp01(std::exp(-th_ * v) * gu / den), true};
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override {
        const double em1 = std::expm1(-th_);
        const double den = em1 + std::expm1(-th_ * u) * std::expm1(-th_ * v);
        return -th_ * em1 * std::exp(-th_ * (u + v)) / (den * den);
    }
    std::optional<TdcClosedForm> strong_tdc_closed() const override { return TdcClosedForm{0.0, 0.0}; }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out)
            p = detail::conditional_inverse_sample(
                [this](double u, double v) { return partials(u, v).du; }, rng);
    }

private:
    double th_;
};

class AmhCopula final : public Copula {
public:
    AmhCopula(CopulaSpec spec, double theta) : Copula(std::move(spec)), th_(theta) {}

    double cdf(double u, double v) const override {
        return u * v / (1.0 - th_ * (1.0 - u) * (1.0 - v));
    }
    Partials partials(double u, double v) const override {
        const double D = 1.0 - th_ * (1.0 - u) * (1.0 - v);
        return {clamp01(v * (D - u * th_ * (1.0 - v)) / (D * D)),
                clamp01(u * (D - v * th_ * (1.0 - u)) / (D * D)), true};
    }
    bool has_density() const override { return std::abs(th_) < 1.0; }
    double density(double u, double v) const override {
        if (!has_density())
            throw std::logic_error("amh: density restricted to theta in (-1,1)");
        const double D = 1.0 - th_ * (1.0 - u) * (1.0 - v);
        return (1.0 + th_ * ((1.0 + u) * (1.0 + v) - 3.0) + th_ * th_ * (1.0 - u) * (1.0 - v)) /
               (D * D * D);
    }
    std::optional<double> analytic_tau() const override {
        if (th_ == 0.0) return 0.0;
        if (th_ == 1.0) return 1.0 / 3.0;
        return 1.0 - 2.0 * (th_ + sqr(1.0 - th_) * std::log1p(-th_)) / (3.0 * th_ * th_);
    }
    std::optional<TdcClosedForm> strong_tdc_closed() const override {
        return TdcClosedForm{th_ == 1.0 ? 0.5 : 0.0, 0.0};
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out)
            p = detail::conditional_inverse_sample(
                [this](double u, double v) { return partials(u, v).du; }, rng);
    }

private:
    double th_;
};

// ---------------------------------------------------------------------------
// Gaussian copula
// ---------------------------------------------------------------------------

class GaussianCopula final : public Copula {
public:
    GaussianCopula(CopulaSpec spec, double rho)
        : Copula(std::move(spec)), rho_(rho), s_(std::sqrt(1.0 - rho * rho)) {}

    double cdf(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0) return v;
        if (v >= 1.0) return u;
        return detail::bvn_cdf(normal_quantile(u), normal_quantile(v), rho_);
    }
    Partials partials(double u, double v) const override {
        const double x = normal_quantile(u), y = normal_quantile(v);
        return {normal_cdf((y - rho_ * x) / s_), normal_cdf((x - rho_ * y) / s_), true};
    }
    bool has_density() const override { return true; }
    double density(double u, double v) const override {
        const double x = normal_quantile(u), y = normal_quantile(v);
        const double q = rho_ * rho_ * (x * x + y * y) - 2.0 * rho_ * x * y;
        return std::exp(-q / (2.0 * s_ * s_)) / s_;
    }
    std::optional<double> analytic_tau() const override { return 2.0 / kPi * std::asin(rho_); }
    std::optional<TdcClosedForm> strong_tdc_closed() const override { return TdcClosedForm{0.0, 0.0}; }
    std::optional<double> weak_tdc_closed(Side) const override { return rho_; }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out) {
            const double z1 = rng.normal(), z2 = rng.normal();
            p.u = normal_cdf(z1);
            p.v = normal_cdf(rho_ * z1 + s_ * z2);
        }
    }

private:
    double rho_, s_;
};

// ---------------------------------------------------------------------------
// Student t copula. Partials are the closed-form conditional CDFs; the CDF is
// the cumulative integral of the conditional over the probability scale,
// with geometric refinement of the cell touching each endpoint. Mesh rows
// reuse cached quantile nodes through eval_row.
// ---------------------------------------------------------------------------

class StudentTCopula final : public Copula {
public:
    StudentTCopula(CopulaSpec spec, double rho, double nu)
        : Copula(std::move(spec)), rho_(rho), nu_(nu),
          kf_(std::sqrt((nu + 1.0) / (1.0 - rho * rho))) {}

    double rho() const { return rho_; }
    double nu() const { return nu_; }

    // P(V <= y-quantile | U = x-quantile)
    double cond_cdf(double y, double x) const {
        return student_t_cdf((y - rho_ * x) * kf_ / std::sqrt(nu_ + x * x), nu_ + 1.0);
    }

    double cdf(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0) return v;
        if (v >= 1.0) return u;
        const double y = student_t_quantile(v, nu_);
        const auto& gl = gauss_legendre(8);
        auto seg = [&](double a, double b) {
            double acc = 0.0;
            for (int i = 0; i < 8; ++i) {
                const double w = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
                acc += gl.weights[i] * cond_cdf(y, student_t_quantile(w, nu_));
            }
            return acc * 0.5 * (b - a);
        };
        // cumulative over the probability scale with geometric panels resolving
        // the fractional-power behaviour of the integrand at the endpoint
        auto graded = [&](double len) {
            // integral over [0, len] of g(w) dw, endpoint at w = 0
            double total = len * std::pow(0.25, 14) * cond_cdf(y, student_t_quantile(0.5 * len * std::pow(0.25, 14), nu_));
            double lo = len * std::pow(0.25, 14);
            for (int k = 14; k >= 1; --k) {
                const double hi = len * std::pow(0.25, k - 1);
                total += seg(lo, hi);
                lo = hi;
            }
            return total;
        };
        if (u <= 0.75) return clamp01(graded(u));
        // near u = 1 integrate the complement from the w = 1 end instead
        auto graded_hi = [&](double len) {
            // integral over [1-len, 1] of g(w) dw
            const double stub = len * std::pow(0.25, 14);
            double total = stub * cond_cdf(y, student_t_quantile(1.0 - 0.5 * stub, nu_));
            double hi = 1.0 - stub;
            for (int k = 14; k >= 1; --k) {
                const double lo = 1.0 - len * std::pow(0.25, k - 1);
                total += seg(lo, hi);
                hi = lo;
            }
            return total;
        };
        return clamp01(v - graded_hi(1.0 - u));
    }

    Partials partials(double u, double v) const override {
        const double x = student_t_quantile(u, nu_), y = student_t_quantile(v, nu_);
        return {clamp01(cond_cdf(y, x)), clamp01(cond_cdf(x, y)), true};
    }

    void eval_row(std::span<const double> us, double v, std::span<double> c,
                  std::span<double> cu, std::span<double> cv) const override;

    bool has_density() const override { return true; }
    double density(double u, double v) const override {
        const double x = student_t_quantile(u, nu_), y = student_t_quantile(v, nu_);
        const double q = (x * x - 2.0 * rho_ * x * y + y * y) / (1.0 - rho_ * rho_);
        const double logf2 = std::lgamma(0.5 * nu_ + 1.0) - std::lgamma(0.5 * nu_) -
                             std::log(nu_ * kPi) - 0.5 * std::log1p(-rho_ * rho_) -
                             (0.5 * nu_ + 1.0) * std::log1p(q / nu_);
        return std::exp(logf2 - std::log(student_t_pdf(x, nu_)) - std::log(student_t_pdf(y, nu_)));
    }
    std::optional<double> analytic_tau() const override { return 2.0 / kPi * std::asin(rho_); }
    std::optional<TdcClosedForm> strong_tdc_closed() const override {
        // convention matching the published tables: CDF with nu degrees of freedom
        const double lam =
            2.0 * student_t_cdf(-std::sqrt((nu_ + 1.0) * (1.0 - rho_) / (1.0 + rho_)), nu_);
        return TdcClosedForm{lam, lam};
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        const double s = std::sqrt(1.0 - rho_ * rho_);
        out.resize(n);
        for (auto& p : out) {
            const double z1 = rng.normal(), z2 = rng.normal();
            const double w = std::sqrt(rng.chi_squared(nu_) / nu_);
            p.u = student_t_cdf(z1 / w, nu_);
            p.v = student_t_cdf((rho_ * z1 + s * z2) / w, nu_);
        }
    }

private:
    double rho_, nu_, kf_;
};

// ---------------------------------------------------------------------------
// copula backed by an interpolation table (implied copulas)
// ---------------------------------------------------------------------------

class TabulatedCopula final : public Copula {
public:
    explicit TabulatedCopula(CopulaSpec spec) : Copula(std::move(spec)), tab_(spec_.table) {}

    double cdf(double u, double v) const override {
        const double m = std::min(u, v);
        const double w = std::max(u + v - 1.0, 0.0);
        return std::min(m, std::max(w, tab_->value(u, v)));
    }
    Partials partials(double u, double v) const override {
        return {tab_->du(u, v), tab_->dv(u, v), true};
    }
    bool exchangeable() const override { return false; }
    std::optional<double> weak_tdc_closed(Side side) const override {
        if (tab_->elliptical && tab_->rho >= 0.0)
            return std::sqrt(2.0 * (1.0 + tab_->rho)) - 1.0;
        return Copula::weak_tdc_closed(side);
    }
    void eval_row(std::span<const double> us, double v, std::span<double> c,
                  std::span<double> cu, std::span<double> cv) const override {
        tab_->interp_row(tab_->cdf, v, us, c);
        tab_->interp_row(tab_->dcdu, v, us, cu);
        tab_->interp_row(tab_->dcdv, v, us, cv);
        for (std::size_t i = 0; i < us.size(); ++i) {
            const double m = std::min(us[i], v);
            const double w = std::max(us[i] + v - 1.0, 0.0);
            c[i] = std::min(m, std::max(w, c[i]));
            cu[i] = clamp01(cu[i]);
            cv[i] = clamp01(cv[i]);
        }
    }
    void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const override {
        out.resize(n);
        for (auto& p : out)
            p = detail::conditional_inverse_sample(
                [this](double u, double v) { return tab_->du(u, v); }, rng);
    }

private:
    std::shared_ptr<const InterpolatedCopula> tab_;
};

// ---------------------------------------------------------------------------

inline std::shared_ptr<const Copula> make_copula(const CopulaSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::independence: return std::make_shared<IndependenceCopula>(spec);
        case Family::comonotone: return std::make_shared<ComonotoneCopula>(spec);
        case Family::countermonotone: return std::make_shared<CountermonotoneCopula>(spec);
        case Family::frechet: return std::make_shared<FrechetMixCopula>(spec, spec.p1, spec.p2);
        case Family::mardia: {
            const double t = spec.p1;
            return std::make_shared<FrechetMixCopula>(spec, t * t * (1.0 + t) / 2.0,
                                                      t * t * (1.0 - t) / 2.0);
        }
        case Family::cuadras_auge: return std::make_shared<CuadrasAugeCopula>(spec, spec.p1);
        case Family::gumbel: return std::make_shared<GumbelCopula>(spec, spec.p1);
        case Family::amh: return std::make_shared<AmhCopula>(spec, spec.p1);
        case Family::clayton: return std::make_shared<ClaytonCopula>(spec, spec.p1);
        case Family::frank: return std::make_shared<FrankCopula>(spec, spec.p1);
        case Family::marshall_olkin:
            return std::make_shared<MarshallOlkinCopula>(spec, spec.p1, spec.p2);
        case Family::gaussian: return std::make_shared<GaussianCopula>(spec, spec.p1);
        case Family::student_t: return std::make_shared<StudentTCopula>(spec, spec.p1, spec.p2);
        case Family::tabulated_gh: return std::make_shared<TabulatedCopula>(spec);
    }
    throw std::logic_error("make_copula: unreachable");
}

}  // namespace taildep

#include "taildep/detail/copula_interp.hpp"
#include "taildep/detail/student_row.hpp"
