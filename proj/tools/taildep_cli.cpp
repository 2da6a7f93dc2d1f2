// Command-line front end: measure computation, reference-table regression,
// surface dumps, fitting, simulation, and rolling-window analysis.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "taildep/io.hpp"
#include "taildep/tables.hpp"

using namespace taildep;

namespace {

struct Common {
    int mesh_n = 1000;
    std::vector<double> p_list = {1.0};
    std::uint64_t seed = 20240915ULL;
    int threads = 0;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--mesh", c.mesh_n, "cells per axis of the integration mesh")->capture_default_str();
    cmd->add_option("--p", c.p_list, "focus parameter list")->delimiter(',');
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--threads", c.threads, "worker threads (0 = auto / TAILDEP_THREADS)");
    cmd->add_option("--out", c.out, "output path (default stdout)");
    cmd->add_option("--format", c.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
}

int env_threads() {
    if (const char* e = std::getenv("TAILDEP_THREADS")) {
        const int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 0;
}

int threads_of(const Common& c) { return c.threads > 0 ? c.threads : env_threads(); }

struct SpecFlags {
    std::string family;
    std::optional<double> theta, alpha, beta, rho, nu;
    std::string spec_file;
    std::string gh_file;
    int grid_n = 512;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
    cmd->add_option("--family", f.family, "copula family name");
    cmd->add_option("--theta", f.theta, "theta parameter");
    cmd->add_option("--alpha", f.alpha, "alpha parameter");
    cmd->add_option("--beta", f.beta, "beta parameter");
    cmd->add_option("--rho", f.rho, "correlation parameter");
    cmd->add_option("--nu", f.nu, "degrees of freedom");
    cmd->add_option("--spec", f.spec_file, "copula spec JSON file");
    cmd->add_option("--gh-params", f.gh_file, "GH parameter JSON file (family tabulated_gh)");
    cmd->add_option("--grid", f.grid_n, "tabulation grid for implied copulas")->capture_default_str();
}

CopulaSpec resolve_spec(const SpecFlags& f, int threads) {
    CopulaSpec spec;
    bool have = false;
    if (!f.spec_file.empty()) {
        std::ifstream in(f.spec_file);
        if (!in) throw std::runtime_error("cannot open spec file: " + f.spec_file);
        json j;
        in >> j;
        spec = copula_from_json(j);
        have = true;
    }
    if (!f.family.empty()) {
        if (have)
            std::cerr << "warning: inline family flags override --spec contents\n";
        spec = CopulaSpec{};
        spec.family = family_from_name(f.family);
        have = true;
        switch (spec.family) {
            case Family::frechet:
            case Family::marshall_olkin:
                spec.p1 = f.alpha.value_or(0.5);
                spec.p2 = f.beta.value_or(0.5);
                break;
            case Family::gaussian:
                spec.p1 = f.rho.value_or(0.5);
                break;
            case Family::student_t:
                spec.p1 = f.rho.value_or(0.5);
                spec.p2 = f.nu.value_or(4.0);
                break;
            case Family::tabulated_gh:
                break;
            default:
                spec.p1 = f.theta.value_or(f.alpha.value_or(1.0));
        }
    }
    if (spec.family == Family::tabulated_gh || (!have && !f.gh_file.empty())) {
        if (f.gh_file.empty())
            throw std::invalid_argument("tabulated_gh: provide --gh-params <file.json>");
        std::ifstream in(f.gh_file);
        if (!in) throw std::runtime_error("cannot open GH parameter file: " + f.gh_file);
        json j;
        in >> j;
        spec = gh_copula_spec(gh_from_json(j), f.grid_n, threads);
        have = true;
    }
    if (!have) throw std::invalid_argument("no copula specified: use --family or --spec");
    spec.validate();
    return spec;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        write_text_file(c.out, text);
}

void write_manifest(const Common& c, const std::string& command, const json& config,
                    double seconds) {
    if (c.out.empty()) return;
    RunManifest m;
    m.command = command;
    m.config = config;
    m.seed = c.seed;
    m.mesh.n_cells = c.mesh_n;
    m.duration_seconds = seconds;
    write_text_file(c.out + ".manifest.json", to_json(m).dump(2) + "\n");
}

json common_config(const Common& c) {
    return json{{"mesh", c.mesh_n}, {"p", c.p_list},       {"seed", c.seed},
                {"threads", c.threads}, {"format", c.format}, {"out", c.out}};
}

// ---------------------------------------------------------------------------

int cmd_measure(const Common& c, const SpecFlags& f) {
    const auto t0 = std::chrono::steady_clock::now();
    MeshConfig mesh;
    mesh.n_cells = c.mesh_n;
    const CopulaSpec spec = resolve_spec(f, threads_of(c));
    const MeasureReport rep = full_report(spec, c.p_list, mesh, threads_of(c));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.format == "csv")
        emit(c, report_csv(rep));
    else
        emit(c, to_json(rep).dump(2) + "\n");
    write_manifest(c, "measure", common_config(c), secs);
    return 0;
}

int cmd_table(const Common& c, int table_id, int grid_n) {
    const auto t0 = std::chrono::steady_clock::now();
    MeshConfig mesh;
    mesh.n_cells = c.mesh_n;
    const int threads = threads_of(c);
    std::ostringstream os;
    int failures = 0;
    os << "table," << table_id << ",fixture," << tables::kFixtureVersion << "\n";
    auto diffcol = [&](double got, double want) {
        return num17(got) + ',' + num17(want) + ',' + num17(got - want);
    };
    const std::vector<double> both_p = {1.0, 0.7};
    if (table_id == 2 || table_id == 3) {
        os << "row,status,entry,computed,reference,diff\n";
        const auto& ghs = tables::gh_entries();
        for (std::size_t r = 0; r < ghs.size(); ++r) {
            try {
                const auto spec = gh_copula_spec(ghs[r].params(), grid_n, threads);
                const auto rep = full_report(spec, both_p, mesh, threads);
                if (table_id == 2) {
                    const auto& row = tables::kappa_gh_rows()[r];
                    const double got[6] = {rep.sel[0].kappa, rep.sel[1].kappa, rep.sel[2].kappa,
                                           rep.sel[3].kappa, rep.tau, rep.rho};
                    const double want[6] = {row.kl_xy, row.kl_yx, row.ku_xy, row.ku_yx, row.tau, row.rho};
                    const char* names[6] = {"kappa_l_XgY", "kappa_l_YgX", "kappa_u_XgY",
                                            "kappa_u_YgX", "tau", "rho"};
                    for (int k = 0; k < 6; ++k)
                        os << ghs[r].name << ",ok," << names[k] << ',' << diffcol(got[k], want[k]) << '\n';
                } else {
                    const auto& row = tables::lambda_gh_rows()[r];
                    const double got[8] = {rep.sel[0].lambda[0], rep.sel[0].lambda[1],
                                           rep.sel[1].lambda[0], rep.sel[1].lambda[1],
                                           rep.sel[2].lambda[0], rep.sel[2].lambda[1],
                                           rep.sel[3].lambda[0], rep.sel[3].lambda[1]};
                    const double want[8] = {row.l_xy_1, row.l_xy_07, row.l_yx_1, row.l_yx_07,
                                            row.u_xy_1, row.u_xy_07, row.u_yx_1, row.u_yx_07};
                    const char* names[8] = {"lambda_l_XgY_p1",  "lambda_l_XgY_p07",
                                            "lambda_l_YgX_p1",  "lambda_l_YgX_p07",
                                            "lambda_u_XgY_p1",  "lambda_u_XgY_p07",
                                            "lambda_u_YgX_p1",  "lambda_u_YgX_p07"};
                    for (int k = 0; k < 8; ++k)
                        os << ghs[r].name << ",ok," << names[k] << ',' << diffcol(got[k], want[k]) << '\n';
                    os << ghs[r].name << ",ok,strong_l," << diffcol(rep.strong_lower.value, row.strong_l)
                       << (rep.strong_lower.converged ? "" : ",limit-not-converged") << '\n';
                    os << ghs[r].name << ",ok,strong_u," << diffcol(rep.strong_upper.value, row.strong_u)
                       << (rep.strong_upper.converged ? "" : ",limit-not-converged") << '\n';
                }
            } catch (const std::exception& e) {
                ++failures;
                os << ghs[r].name << ",failed," << e.what() << ",,,\n";
            }
        }
    } else if (table_id == 4) {
        os << "row,status,entry,computed,reference,diff\n";
        for (const auto& row : tables::kappa_rows()) {
            const CopulaSpec spec = tables::spec_of(row);
            try {
                const auto rep = full_report(spec, {1.0}, mesh, threads);
                const double got[6] = {rep.sel[0].kappa, rep.sel[1].kappa, rep.sel[2].kappa,
                                       rep.sel[3].kappa, rep.tau, rep.rho};
                const double want[6] = {row.kl_xy, row.kl_yx, row.ku_xy, row.ku_yx, row.tau, row.rho};
                const char* names[6] = {"kappa_l_XgY", "kappa_l_YgX", "kappa_u_XgY", "kappa_u_YgX",
                                        "tau", "rho"};
                for (int k = 0; k < 6; ++k)
                    os << spec.label() << ",ok," << names[k] << ',' << diffcol(got[k], want[k]) << '\n';
            } catch (const std::exception& e) {
                ++failures;
                os << spec.label() << ",failed," << e.what() << ",,,\n";
            }
        }
    } else if (table_id == 5 || table_id == 6) {
        os << "row,status,entry,computed,reference,diff\n";
        const auto& rows = table_id == 5 ? tables::lambda_rows_p1() : tables::lambda_rows_p07();
        const double p = table_id == 5 ? 1.0 : 0.7;
        for (const auto& row : rows) {
            const CopulaSpec spec = tables::spec_of(row);
            try {
                const auto rep = full_report(spec, {p}, mesh, threads);
                const double got[4] = {rep.sel[0].lambda[0], rep.sel[1].lambda[0],
                                       rep.sel[2].lambda[0], rep.sel[3].lambda[0]};
                const double want[4] = {row.l_xy, row.l_yx, row.u_xy, row.u_yx};
                const char* names[4] = {"lambda_l_XgY", "lambda_l_YgX", "lambda_u_XgY",
                                        "lambda_u_YgX"};
                for (int k = 0; k < 4; ++k)
                    os << spec.label() << ",ok," << names[k] << ',' << diffcol(got[k], want[k]) << '\n';
                os << spec.label() << ",ok,strong_l," << diffcol(rep.strong_lower.value, row.strong_l) << '\n';
                os << spec.label() << ",ok,strong_u," << diffcol(rep.strong_upper.value, row.strong_u) << '\n';
            } catch (const std::exception& e) {
                ++failures;
                os << spec.label() << ",failed," << e.what() << ",,,\n";
            }
        }
    } else {
        throw std::invalid_argument("table id must be one of 2,3,4,5,6");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(c, os.str());
    json cfg = common_config(c);
    cfg["table"] = table_id;
    cfg["grid"] = grid_n;
    write_manifest(c, "table", cfg, secs);
    return failures == 0 ? 0 : 3;
}

int cmd_surface(const Common& c, const SpecFlags& f, const SpecFlags& minus, bool have_minus,
                const std::string& side, const std::string& direction, int grid) {
    const auto t0 = std::chrono::steady_clock::now();
    if (grid < 32) throw std::invalid_argument("surface: --grid >= 32 required");
    SurfaceSelector sel;
    sel.side = side == "upper" ? Side::upper : Side::lower;
    sel.direction = direction == "YgX" ? Direction::y_given_x : Direction::x_given_y;
    const int threads = threads_of(c);
    const auto cop = make_copula(resolve_spec(f, threads));
    std::shared_ptr<const Copula> cop2;
    if (have_minus) cop2 = make_copula(resolve_spec(minus, threads));
    std::ostringstream os;
    os << "u,v,value\n";
    for (int j = 0; j < grid; ++j) {
        const double v = (j + 0.5) / grid;
        for (int i = 0; i < grid; ++i) {
            const double u = (i + 0.5) / grid;
            double z = psi(*cop, sel, {u, v}).value;
            if (cop2) z -= psi(*cop2, sel, {u, v}).value;
            os << num17(u) << ',' << num17(v) << ',' << num17(z) << '\n';
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(c, os.str());
    json cfg = common_config(c);
    cfg["side"] = side;
    cfg["direction"] = direction;
    cfg["grid"] = grid;
    write_manifest(c, "surface", cfg, secs);
    return 0;
}

int cmd_fit(const Common& c, const std::string& family, const std::string& input, int grid_n) {
    const auto t0 = std::chrono::steady_clock::now();
    const Family fam = family_from_name(family);
    json out;
    if (fam == Family::tabulated_gh) {
        const auto series = read_uv_csv(input);
        std::vector<Vec2> data(series.size());
        for (std::size_t i = 0; i < series.size(); ++i) data[i] = {series[i].u, series[i].v};
        OptimConfig cfg;
        cfg.max_iterations = 4000;
        const GHFitResult fit = gh_fit(data, gh_default_init(data), cfg);
        out = json{{"family", "tabulated_gh"},
                   {"gh", to_json(fit.params)},
                   {"loglik", fit.loglik},
                   {"converged", fit.converged},
                   {"n_obs", data.size()},
                   {"grid", grid_n}};
    } else {
        const auto pts = read_uv_csv(input);
        std::vector<Vec2> raw(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) raw[i] = {pts[i].u, pts[i].v};
        const auto pseudo = pseudo_observations(raw);
        OptimConfig cfg;
        const FitResult fit = copula_mle(fam, pseudo, cfg);
        out = json{{"spec", to_json(fit.spec)},
                   {"loglik", fit.loglik},
                   {"converged", fit.converged},
                   {"n_obs", fit.n_obs}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(c, out.dump(2) + "\n");
    json cfg = common_config(c);
    cfg["family"] = family;
    cfg["input"] = input;
    write_manifest(c, "fit", cfg, secs);
    return out.contains("converged") && !out["converged"].get<bool>() ? 4 : 0;
}

int cmd_simulate(const Common& c, const SpecFlags& f, int n, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    MeshConfig mesh;
    mesh.n_cells = c.mesh_n;
    const int threads = threads_of(c);
    SimModel model;
    if (!f.gh_file.empty()) {
        std::ifstream in(f.gh_file);
        if (!in) throw std::runtime_error("cannot open GH parameter file: " + f.gh_file);
        json j;
        in >> j;
        model = GhModel{gh_from_json(j), f.grid_n};
    } else {
        model = resolve_spec(f, threads);
    }
    const auto rows = simulation_study(model, n, reps, c.p_list, mesh, RngStream(c.seed, 0), threads);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.format == "csv") {
        emit(c, simulation_csv(rows));
    } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        emit(c, arr.dump(2) + "\n");
    }
    json cfg = common_config(c);
    cfg["n"] = n;
    cfg["reps"] = reps;
    write_manifest(c, "simulate", cfg, secs);
    return 0;
}

int cmd_rolling(const Common& c, const std::string& input, int window, const std::string& family,
                double p, int boot_b, double boot_level, int gh_grid) {
    const auto t0 = std::chrono::steady_clock::now();
    MeshConfig mesh;
    mesh.n_cells = c.mesh_n;
    const auto series = read_series_csv(input);
    RollingModel model;
    if (family == "gh" || family == "tabulated_gh" || family == "nig") {
        model.use_gh = true;
        model.gh_grid = gh_grid;
    } else {
        model.family = family_from_name(family);
    }
    const auto rr = rolling_lambda(series, window, model, p, mesh, boot_b, boot_level, c.seed,
                                   threads_of(c));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(c, rolling_csv(rr));
    json cfg = common_config(c);
    cfg["input"] = input;
    cfg["window"] = window;
    cfg["family"] = family;
    cfg["bootstrap_B"] = boot_b;
    write_manifest(c, "rolling", cfg, secs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surface-integral dependence and tail-dependence measures for bivariate copulas"};
    app.require_subcommand(1);

    Common c_measure, c_table, c_surface, c_fit, c_sim, c_roll;
    SpecFlags f_measure, f_surface, f_minus, f_sim;

    auto* measure = app.add_subcommand("measure", "compute all measures for one copula");
    add_common(measure, c_measure);
    add_spec_flags(measure, f_measure);

    auto* table = app.add_subcommand("table", "recompute a bundled reference table with diffs");
    int table_id = 4, table_grid = 512;
    add_common(table, c_table);
    table->add_option("--table", table_id, "table id (2..6)")->required();
    table->add_option("--grid", table_grid, "tabulation grid for implied copulas")->capture_default_str();

    auto* surface = app.add_subcommand("surface", "dump a conditional probability surface as CSV");
    add_common(surface, c_surface);
    add_spec_flags(surface, f_surface);
    std::string side = "lower", direction = "XgY";
    int surf_grid = 128;
    bool have_minus = false;
    std::string minus_spec;
    surface->add_option("--side", side, "lower|upper")->check(CLI::IsMember({"lower", "upper"}));
    surface->add_option("--direction", direction, "XgY|YgX")->check(CLI::IsMember({"XgY", "YgX"}));
    surface->add_option("--grid", surf_grid, "output grid per axis")->capture_default_str();
    surface->add_option("--minus", minus_spec, "subtract the surface of this spec JSON file");

    auto* fit = app.add_subcommand("fit", "fit a copula family to a two-column CSV");
    add_common(fit, c_fit);
    std::string fit_family = "gumbel", fit_input;
    int fit_grid = 512;
    fit->add_option("--family", fit_family, "family to fit (tabulated_gh fits GH on raw pairs)");
    fit->add_option("--input", fit_input, "input CSV (header + two numeric columns)")->required();
    fit->add_option("--grid", fit_grid, "tabulation grid for GH fits")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "estimator performance study");
    add_common(simulate, c_sim);
    add_spec_flags(simulate, f_sim);
    int sim_n = 500, sim_reps = 100;
    simulate->add_option("--n", sim_n, "sample size")->capture_default_str();
    simulate->add_option("--reps", sim_reps, "replicates")->capture_default_str();

    auto* rolling = app.add_subcommand("rolling", "rolling-window tail dependence on innovations");
    add_common(rolling, c_roll);
    std::string roll_input, roll_family = "gumbel";
    int roll_window = 500, roll_boot = 0, roll_grid = 256;
    double roll_p = 1.0, roll_level = 0.95;
    rolling->add_option("--input", roll_input, "CSV with header date,x,y")->required();
    rolling->add_option("--window", roll_window, "window length")->capture_default_str();
    rolling->add_option("--family", roll_family, "family (or gh / nig for raw GH fits)");
    rolling->add_option("--focus", roll_p, "focus parameter p")->capture_default_str();
    rolling->add_option("--boot", roll_boot, "bootstrap replicates per window (0 = off)");
    rolling->add_option("--level", roll_level, "bootstrap band level")->capture_default_str();
    rolling->add_option("--grid", roll_grid, "tabulation grid for GH windows")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (measure->parsed()) return cmd_measure(c_measure, f_measure);
        if (table->parsed()) return cmd_table(c_table, table_id, table_grid);
        if (surface->parsed()) {
            SpecFlags minus;
            if (!minus_spec.empty()) {
                minus.spec_file = minus_spec;
                have_minus = true;
            }
            return cmd_surface(c_surface, f_surface, minus, have_minus, side, direction, surf_grid);
        }
        if (fit->parsed()) return cmd_fit(c_fit, fit_family, fit_input, fit_grid);
        if (simulate->parsed()) return cmd_simulate(c_sim, f_sim, sim_n, sim_reps);
        if (rolling->parsed())
            return cmd_rolling(c_roll, roll_input, roll_window, roll_family, roll_p, roll_boot,
                               roll_level, roll_grid);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
