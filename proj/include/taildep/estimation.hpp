#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "taildep/ghdist.hpp"
#include "taildep/measures.hpp"

namespace taildep {

// ---------------------------------------------------------------------------
// pseudo-observations: average ranks over (n+1)
// ---------------------------------------------------------------------------

inline std::vector<double> average_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1.0;  // ranks are 1-based
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline std::vector<UnitSquarePoint> pseudo_observations(const std::vector<Vec2>& data) {
    const std::size_t n = data.size();
    if (n < 2) throw std::invalid_argument("pseudo_observations: need at least 2 points");
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = data[i].x;
        ys[i] = data[i].y;
    }
    if (std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs[0]; }) ||
        std::all_of(ys.begin(), ys.end(), [&](double v) { return v == ys[0]; }))
        throw std::invalid_argument("pseudo_observations: constant column is degenerate");
    const auto rx = average_ranks(xs), ry = average_ranks(ys);
    std::vector<UnitSquarePoint> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {rx[i] / (n + 1.0), ry[i] / (n + 1.0)};
    return out;
}

inline double sample_tau(const std::vector<UnitSquarePoint>& p) {
    // O(n^2) concordance count; adequate at desk scale
    const std::size_t n = p.size();
    long long conc = 0, disc = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = (p[i].u - p[j].u) * (p[i].v - p[j].v);
            if (s > 0) ++conc;
            else if (s < 0) ++disc;
        }
    const double m = 0.5 * n * (n - 1);
    return (conc - disc) / m;
}

// ---------------------------------------------------------------------------
// copula maximum likelihood on pseudo-observations
// ---------------------------------------------------------------------------

struct FitResult {
    CopulaSpec spec;
    double loglik = 0.0;
    bool converged = false;
    std::size_t n_obs = 0;
};

namespace detail {

struct Reparam {
    std::vector<double> x0;
    std::function<CopulaSpec(const std::vector<double>&)> to_spec;
};

inline Reparam make_reparam(Family family, double tau_hat) {
    Reparam rp;
    switch (family) {
        case Family::gumbel: {
            const double th = std::clamp(1.0 / std::max(1e-3, 1.0 - tau_hat), 1.0 + 1e-6, 50.0);
            rp.x0 = {std::log(th - 1.0)};
            rp.to_spec = [](const std::vector<double>& x) {
                return CopulaSpec::one_param(Family::gumbel, 1.0 + std::exp(std::clamp(x[0], -30.0, 8.0)));
            };
            break;
        }
        case Family::clayton: {
            const double t = std::clamp(tau_hat, 1e-3, 0.97);
            rp.x0 = {std::log(2.0 * t / (1.0 - t))};
            rp.to_spec = [](const std::vector<double>& x) {
                return CopulaSpec::one_param(Family::clayton, std::exp(std::clamp(x[0], -30.0, 8.0)));
            };
            break;
        }
        case Family::frank: {
            rp.x0 = {tau_hat >= 0 ? std::max(0.5, 7.0 * tau_hat) : std::min(-0.5, 7.0 * tau_hat)};
            rp.to_spec = [](const std::vector<double>& x) {
                double th = std::clamp(x[0], -80.0, 80.0);
                if (std::abs(th) < 1e-6) th = th < 0.0 ? -1e-6 : 1e-6;
                return CopulaSpec::one_param(Family::frank, th);
            };
            break;
        }
        case Family::amh: {
            rp.x0 = {std::atanh(std::clamp(2.0 * tau_hat, -0.9, 0.9))};
            rp.to_spec = [](const std::vector<double>& x) {
                return CopulaSpec::one_param(Family::amh, 0.999999 * std::tanh(x[0]));
            };
            break;
        }
        case Family::gaussian: {
            rp.x0 = {std::atanh(std::clamp(std::sin(0.5 * kPi * tau_hat), -0.99, 0.99))};
            rp.to_spec = [](const std::vector<double>& x) {
                return CopulaSpec::one_param(Family::gaussian, 0.9999999 * std::tanh(x[0]));
            };
            break;
        }
        case Family::student_t: {
            rp.x0 = {std::atanh(std::clamp(std::sin(0.5 * kPi * tau_hat), -0.99, 0.99)),
                     std::log(8.0)};
            rp.to_spec = [](const std::vector<double>& x) {
                return CopulaSpec::two_param(Family::student_t, 0.9999999 * std::tanh(x[0]),
                                             std::exp(std::clamp(x[1], -2.0, 7.0)));
            };
            break;
        }
        default:
            throw std::invalid_argument(
                std::string("copula_mle: family '") + family_name(family) +
                "' has a singular component or no parameters; use sampling-based methods");
    }
    return rp;
}

}  // namespace detail

inline FitResult copula_mle(Family family, const std::vector<UnitSquarePoint>& pseudo,
                            const OptimConfig& cfg) {
    if (pseudo.size() < 30) throw std::invalid_argument("copula_mle: need at least 30 points");
    {
        CopulaSpec probe;
        probe.family = family;
        // reject families without a density up front
        if (family == Family::frechet || family == Family::mardia ||
            family == Family::cuadras_auge || family == Family::marshall_olkin ||
            family == Family::comonotone || family == Family::countermonotone)
            throw std::invalid_argument(std::string("copula_mle: ") + family_name(family) +
                                        " has a singular component; density MLE unavailable");
    }
    if (family == Family::independence) {
        return {CopulaSpec{Family::independence}, 0.0, true, pseudo.size()};
    }
    auto rp = detail::make_reparam(family, sample_tau(pseudo));
    auto negll = [&](const std::vector<double>& x) -> double {
        try {
            const CopulaSpec spec = rp.to_spec(x);
            const auto cop = make_copula(spec);
            double s = 0.0;
            for (const auto& p : pseudo) {
                const double u = std::clamp(p.u, 1e-12, 1.0 - 1e-12);
                const double v = std::clamp(p.v, 1e-12, 1.0 - 1e-12);
                const double d = cop->density(u, v);
                if (!(d > 0.0) || !std::isfinite(d)) return 1e300;
                s -= std::log(d);
            }
            return s;
        } catch (const std::exception&) {
            return 1e300;
        }
    };
    const OptimResult r = nelder_mead(negll, rp.x0, cfg);
    FitResult out;
    out.spec = rp.to_spec(r.x);
    out.loglik = -r.fx;
    out.converged = r.converged;
    out.n_obs = pseudo.size();
    return out;
}

// ---------------------------------------------------------------------------
// measure selector used by bootstrap / simulation outputs
// ---------------------------------------------------------------------------

enum class MeasureKind { delta, kappa, delta_bar, lambda, tau, rho, sigma };

struct MeasureSelector {
    MeasureKind kind = MeasureKind::lambda;
    SurfaceSelector sel;
    double p = 1.0;
};

inline double pick_measure(const MeasureReport& rep, const MeasureSelector& ms) {
    const auto& s = rep.at(ms.sel);
    switch (ms.kind) {
        case MeasureKind::delta: return s.delta;
        case MeasureKind::kappa: return s.kappa;
        case MeasureKind::delta_bar: return s.delta_bar;
        case MeasureKind::lambda: {
            for (std::size_t k = 0; k < rep.p_list.size(); ++k)
                if (rep.p_list[k] == ms.p) return s.lambda[k];
            throw std::invalid_argument("pick_measure: focus parameter not in the report");
        }
        case MeasureKind::tau: return rep.tau;
        case MeasureKind::rho: return rep.rho;
        case MeasureKind::sigma: return rep.sigma;
    }
    throw std::logic_error("pick_measure: unreachable");
}

// ---------------------------------------------------------------------------
// parametric bootstrap
// ---------------------------------------------------------------------------

struct BootstrapBand {
    double point_estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    int B = 0;
    int failed = 0;
    bool reliable = true;
};

inline double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    const double w = pos - i;
    return v[i] * (1.0 - w) + v[i + 1] * w;
}

inline BootstrapBand parametric_bootstrap(const FitResult& fit, const MeasureSelector& measure,
                                          int B, double level, const RngStream& rng,
                                          const MeshConfig& mesh, int threads = 0) {
    if (B < 1) throw std::invalid_argument("parametric_bootstrap: B >= 1 required");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("parametric_bootstrap: level inside (0,1) required");
    if (!fit.converged) throw std::invalid_argument("parametric_bootstrap: fit did not converge");
    const auto cop = make_copula(fit.spec);
    const std::vector<double> ps = {measure.p};
    (void)reference_integrals(ps, mesh, threads);  // warm the cache before the worker pool
    BootstrapBand band;
    band.level = level;
    band.B = B;
    band.point_estimate = pick_measure(full_report(*cop, ps, mesh, threads), measure);
    OptimConfig cfg;
    std::vector<double> values(B, std::numeric_limits<double>::quiet_NaN());
    const int workers = std::max(1, std::min(resolve_threads(threads), B));
    std::atomic<int> next{0};
    auto run_rep = [&](int r) {
        RngStream stream = rng.derive(static_cast<std::uint64_t>(r));
        try {
            std::vector<UnitSquarePoint> smp;
            cop->sample(fit.n_obs, stream, smp);
            std::vector<Vec2> raw(smp.size());
            for (std::size_t i = 0; i < smp.size(); ++i) raw[i] = {smp[i].u, smp[i].v};
            const auto pseudo = pseudo_observations(raw);
            const FitResult refit = copula_mle(fit.spec.family, pseudo, cfg);
            if (!refit.converged) return;
            values[r] = pick_measure(full_report(refit.spec, ps, mesh, 1), measure);
        } catch (const std::exception&) {
            // counted below as a failed replicate
        }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&]() {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= B) return;
                run_rep(r);
            }
        }));
    for (auto& f : futs) f.get();
    std::vector<double> good;
    for (double v : values)
        if (std::isfinite(v)) good.push_back(v);
    band.failed = B - static_cast<int>(good.size());
    band.reliable = band.failed <= B / 20;
    if (good.empty()) {
        band.lower = band.upper = band.point_estimate;
        band.reliable = false;
        return band;
    }
    band.lower = percentile(good, 0.5 * (1.0 - level));
    band.upper = percentile(good, 1.0 - 0.5 * (1.0 - level));
    return band;
}

// ---------------------------------------------------------------------------
// simulation harness
// ---------------------------------------------------------------------------

struct GhModel {
    GHParams params;
    int grid_n = 512;
};

using SimModel = std::variant<CopulaSpec, GhModel>;

struct SimulationSummary {
    MeasureSelector measure;
    double true_value = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;  // population convention
    double mse = 0.0;      // squared bias plus variance
    int n = 0;
    int reps = 0;
    int failed = 0;
};

inline std::vector<MeasureSelector> lambda_selectors(const std::vector<double>& p_list) {
    std::vector<MeasureSelector> out;
    for (double p : p_list)
        for (const auto& s : all_selectors()) out.push_back({MeasureKind::lambda, s, p});
    return out;
}

inline std::vector<SimulationSummary> simulation_study(const SimModel& model, int n, int reps,
                                                       const std::vector<double>& p_list,
                                                       const MeshConfig& mesh,
                                                       const RngStream& rng, int threads = 0) {
    if (reps < 2) throw std::invalid_argument("simulation_study: reps >= 2 required");
    if (n < 50) throw std::invalid_argument("simulation_study: sample size >= 50 required");
    (void)reference_integrals(p_list, mesh, threads);
    const auto selectors = lambda_selectors(p_list);

    MeasureReport true_rep;
    if (std::holds_alternative<CopulaSpec>(model)) {
        true_rep = full_report(std::get<CopulaSpec>(model), p_list, mesh, threads);
    } else {
        const auto& gm = std::get<GhModel>(model);
        true_rep = full_report(gh_copula_spec(gm.params, gm.grid_n, threads), p_list, mesh, threads);
    }

    const int nm = static_cast<int>(selectors.size());
    std::vector<std::vector<double>> values(reps);
    std::vector<char> ok(reps, 0);
    OptimConfig cfg;
    const int workers = std::max(1, std::min(resolve_threads(threads), reps));
    std::atomic<int> next{0};
    auto run_rep = [&](int r) {
        // replicate r draws from stream_id = r for order-independent reproducibility
        RngStream stream(rng.seed(), static_cast<std::uint64_t>(r));
        try {
            MeasureReport rep;
            if (std::holds_alternative<CopulaSpec>(model)) {
                const auto& spec = std::get<CopulaSpec>(model);
                const auto cop = make_copula(spec);
                std::vector<UnitSquarePoint> smp;
                cop->sample(n, stream, smp);
                std::vector<Vec2> raw(smp.size());
                for (std::size_t i = 0; i < smp.size(); ++i) raw[i] = {smp[i].u, smp[i].v};
                const FitResult fit = copula_mle(spec.family, pseudo_observations(raw), cfg);
                if (!fit.converged) return;
                rep = full_report(fit.spec, p_list, mesh, 1);
            } else {
                const auto& gm = std::get<GhModel>(model);
                const auto data = gh_sample(gm.params, n, stream);
                OptimConfig gcfg;
                gcfg.max_iterations = 4000;
                const GHFitResult fit = gh_fit(data, gh_default_init(data), gcfg);
                if (!fit.converged) return;
                rep = full_report(gh_copula_spec(fit.params, gm.grid_n, 1), p_list, mesh, 1);
            }
            std::vector<double> row(nm);
            for (int k = 0; k < nm; ++k) row[k] = pick_measure(rep, selectors[k]);
            values[r] = std::move(row);
            ok[r] = 1;
        } catch (const std::exception&) {
        }
    };
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&]() {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= reps) return;
                run_rep(r);
            }
        }));
    for (auto& f : futs) f.get();

    std::vector<SimulationSummary> out(nm);
    for (int k = 0; k < nm; ++k) {
        auto& s = out[k];
        s.measure = selectors[k];
        s.true_value = pick_measure(true_rep, selectors[k]);
        s.n = n;
        s.reps = reps;
        double sum = 0.0;
        int cnt = 0;
        for (int r = 0; r < reps; ++r)
            if (ok[r]) {
                sum += values[r][k];
                ++cnt;
            }
        s.failed = reps - cnt;
        if (cnt == 0) continue;
        s.mean = sum / cnt;
        double ss = 0.0;
        for (int r = 0; r < reps; ++r)
            if (ok[r]) ss += sqr(values[r][k] - s.mean);
        s.std_dev = std::sqrt(ss / cnt);  // population variance
        s.mse = sqr(s.mean - s.true_value) + ss / cnt;
    }
    return out;
}

// ---------------------------------------------------------------------------
// rolling-window estimation on supplied innovation series
// ---------------------------------------------------------------------------

struct SeriesPoint {
    std::string date;
    double x = 0.0, y = 0.0;
};

struct RollingModel {
    // either a closed-form family fitted on pseudo-observations, or a GH fit
    // applied to the raw innovations
    bool use_gh = false;
    Family family = Family::gumbel;
    int gh_grid = 256;
};

struct RollingRow {
    std::string date;
    bool converged = false;
    bool carried_forward = false;
    std::array<double, 4> lambda{};  // selector order of all_selectors()
    std::array<double, 4> lo{}, hi{};
    bool has_band = false;
};

struct RollingResult {
    int window = 0;
    double p = 1.0;
    std::vector<RollingRow> rows;
};

inline RollingResult rolling_lambda(const std::vector<SeriesPoint>& series, int window,
                                    const RollingModel& model, double p, const MeshConfig& mesh,
                                    int bootstrap_B = 0, double bootstrap_level = 0.95,
                                    std::uint64_t seed = 1, int threads = 0) {
    if (window < 50) throw std::invalid_argument("rolling_lambda: window >= 50 required");
    if (static_cast<int>(series.size()) < window)
        throw std::invalid_argument("rolling_lambda: series shorter than the window");
    for (const auto& s : series)
        if (!std::isfinite(s.x) || !std::isfinite(s.y))
            throw std::invalid_argument("rolling_lambda: missing value inside the series");
    const std::vector<double> ps = {p};
    (void)reference_integrals(ps, mesh, threads);
    RollingResult out;
    out.window = window;
    out.p = p;
    const int n_windows = static_cast<int>(series.size()) - window + 1;
    out.rows.resize(n_windows);
    OptimConfig cfg;

    std::atomic<int> next{0};
    const int workers = std::max(1, std::min(resolve_threads(threads), n_windows));
    auto run_win = [&](int w) {
        RollingRow& row = out.rows[w];
        row.date = series[w + window - 1].date;
        std::vector<Vec2> data(window);
        for (int i = 0; i < window; ++i) data[i] = {series[w + i].x, series[w + i].y};
        try {
            CopulaSpec spec;
            bool conv = false;
            if (model.use_gh) {
                OptimConfig gcfg;
                gcfg.max_iterations = 4000;
                const GHFitResult fit = gh_fit(data, gh_default_init(data), gcfg);
                conv = fit.converged;
                spec = gh_copula_spec(fit.params, model.gh_grid, 1);
            } else {
                const FitResult fit = copula_mle(model.family, pseudo_observations(data), cfg);
                conv = fit.converged;
                spec = fit.spec;
            }
            const auto rep = full_report(spec, ps, mesh, 1);
            for (int k = 0; k < 4; ++k) row.lambda[k] = rep.sel[k].lambda[0];
            row.converged = conv;
            if (bootstrap_B > 0 && !model.use_gh) {
                FitResult fr;
                fr.spec = spec;
                fr.converged = conv;
                fr.n_obs = window;
                fr.loglik = 0.0;
                for (int k = 0; k < 4; ++k) {
                    MeasureSelector ms{MeasureKind::lambda, all_selectors()[k], p};
                    const auto band = parametric_bootstrap(fr, ms, bootstrap_B, bootstrap_level,
                                                           RngStream(seed, 7777 + w), mesh, 1);
                    row.lo[k] = band.lower;
                    row.hi[k] = band.upper;
                }
                row.has_band = true;
            }
        } catch (const std::exception&) {
            row.converged = false;
        }
    };
    std::vector<std::future<void>> futs;
    for (int t = 0; t < workers; ++t)
        futs.push_back(std::async(std::launch::async, [&]() {
            for (;;) {
                const int w = next.fetch_add(1);
                if (w >= n_windows) return;
                run_win(w);
            }
        }));
    for (auto& f : futs) f.get();
    // carry the previous window's values over failed fits, flagged
    for (int w = 0; w < n_windows; ++w) {
        if (!out.rows[w].converged && w > 0) {
            auto date = out.rows[w].date;
            const bool band = out.rows[w - 1].has_band;
            out.rows[w] = out.rows[w - 1];
            out.rows[w].date = std::move(date);
            out.rows[w].carried_forward = true;
            out.rows[w].has_band = band;
        }
    }
    return out;
}

}  // namespace taildep
