#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "taildep/estimation.hpp"
#include "taildep/version.hpp"

namespace taildep {

using nlohmann::json;

// numbers are printed through one fixed format so reruns are byte-identical
inline std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// JSON mappings
// ---------------------------------------------------------------------------

inline json to_json(const MeshConfig& m) {
    return json{{"n_cells_per_axis", m.n_cells}, {"rule", "cell-centered-midpoint"},
                {"parallel_chunk", m.parallel_chunk}};
}

inline MeshConfig mesh_from_json(const json& j) {
    MeshConfig m;
    m.n_cells = j.value("n_cells_per_axis", 1000);
    m.parallel_chunk = j.value("parallel_chunk", 16);
    m.validate();
    return m;
}

inline json to_json(const GHParams& g) {
    return json{{"lambda", g.lambda},
                {"alpha", g.alpha},
                {"beta", {g.beta.x, g.beta.y}},
                {"delta", g.delta},
                {"mu", {g.mu.x, g.mu.y}},
                {"Delta", {{g.Delta.a11, g.Delta.a12}, {g.Delta.a12, g.Delta.a22}}}};
}

inline GHParams gh_from_json(const json& j) {
    GHParams g;
    g.lambda = j.at("lambda").get<double>();
    g.alpha = j.at("alpha").get<double>();
    g.beta = {j.at("beta")[0].get<double>(), j.at("beta")[1].get<double>()};
    g.delta = j.at("delta").get<double>();
    g.mu = {j.at("mu")[0].get<double>(), j.at("mu")[1].get<double>()};
    const auto& D = j.at("Delta");
    g.Delta = {D[0][0].get<double>(), D[0][1].get<double>(), D[1][1].get<double>()};
    g.validate();
    return g;
}

inline json to_json(const CopulaSpec& spec) {
    json params = json::object();
    switch (spec.family) {
        case Family::frechet:
        case Family::marshall_olkin:
            params["alpha"] = spec.p1;
            params["beta"] = spec.p2;
            break;
        case Family::gaussian:
            params["rho"] = spec.p1;
            break;
        case Family::student_t:
            params["rho"] = spec.p1;
            params["nu"] = spec.p2;
            break;
        case Family::independence:
        case Family::comonotone:
        case Family::countermonotone:
        case Family::tabulated_gh:
            break;
        default:
            params["theta"] = spec.p1;
    }
    return json{{"family", family_name(spec.family)}, {"params", params}};
}

inline CopulaSpec copula_from_json(const json& j) {
    CopulaSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    const json params = j.value("params", json::object());
    switch (spec.family) {
        case Family::frechet:
        case Family::marshall_olkin:
            spec.p1 = params.at("alpha").get<double>();
            spec.p2 = params.at("beta").get<double>();
            break;
        case Family::gaussian:
            spec.p1 = params.at("rho").get<double>();
            break;
        case Family::student_t:
            spec.p1 = params.at("rho").get<double>();
            spec.p2 = params.at("nu").get<double>();
            break;
        case Family::independence:
        case Family::comonotone:
        case Family::countermonotone:
            break;
        case Family::tabulated_gh:
            throw std::invalid_argument(
                "copula spec: tabulated_gh must be built from GH parameters (use the gh field)");
        default:
            spec.p1 = params.at("theta").get<double>();
    }
    spec.validate();
    return spec;
}

inline json to_json(const TdcEstimate& e) {
    return json{{"value", e.value}, {"analytic", e.analytic}, {"converged", e.converged}};
}

inline json to_json(const MeasureReport& rep) {
    json sel = json::array();
    for (const auto& s : all_selectors()) {
        const auto& r = rep.at(s);
        json lam = json::array();
        for (std::size_t k = 0; k < rep.p_list.size(); ++k)
            lam.push_back(json{{"p", rep.p_list[k]}, {"value", r.lambda[k]}});
        sel.push_back(json{{"side", side_name(s.side)},
                           {"direction", direction_name(s.direction)},
                           {"area", r.area},
                           {"delta", r.delta},
                           {"kappa", r.kappa},
                           {"delta_bar", r.delta_bar},
                           {"lambda", lam}});
    }
    return json{{"copula", to_json(rep.copula)},
                {"mesh", to_json(rep.mesh)},
                {"surfaces", sel},
                {"tau", rep.tau},
                {"rho", rep.rho},
                {"sigma", rep.sigma},
                {"strong_tdc", {{"lower", to_json(rep.strong_lower)}, {"upper", to_json(rep.strong_upper)}}},
                {"weak_tdc", {{"lower", to_json(rep.weak_lower)}, {"upper", to_json(rep.weak_upper)}}},
                {"notes", rep.notes}};
}

// one CSV row per (copula, measure, side, direction, p)
inline std::string report_csv(const MeasureReport& rep) {
    std::ostringstream os;
    os << "family,params,measure,side,direction,p,value\n";
    const std::string fam = family_name(rep.copula.family);
    const std::string par = rep.copula.label();
    auto row = [&](const char* m, const char* sd, const char* dir, const std::string& p,
                   double val) {
        os << fam << ",\"" << par << "\"," << m << ',' << sd << ',' << dir << ',' << p << ','
           << num17(val) << '\n';
    };
    for (const auto& s : all_selectors()) {
        const auto& r = rep.at(s);
        const char* sd = side_name(s.side);
        const char* dir = direction_name(s.direction);
        row("area", sd, dir, "", r.area);
        row("delta", sd, dir, "", r.delta);
        row("kappa", sd, dir, "", r.kappa);
        row("delta_bar", sd, dir, "", r.delta_bar);
        for (std::size_t k = 0; k < rep.p_list.size(); ++k)
            row("lambda", sd, dir, num17(rep.p_list[k]), r.lambda[k]);
    }
    row("tau", "", "", "", rep.tau);
    row("rho", "", "", "", rep.rho);
    row("sigma", "", "", "", rep.sigma);
    row("strong_tdc", "lower", "", "", rep.strong_lower.value);
    row("strong_tdc", "upper", "", "", rep.strong_upper.value);
    row("weak_tdc", "lower", "", "", rep.weak_lower.value);
    row("weak_tdc", "upper", "", "", rep.weak_upper.value);
    return os.str();
}

inline json to_json(const SimulationSummary& s) {
    return json{{"measure", "lambda"},
                {"side", side_name(s.measure.sel.side)},
                {"direction", direction_name(s.measure.sel.direction)},
                {"p", s.measure.p},
                {"n", s.n},
                {"reps", s.reps},
                {"failed", s.failed},
                {"true_value", s.true_value},
                {"mean", s.mean},
                {"std_dev", s.std_dev},
                {"mse", s.mse},
                {"std_dev_convention", "population"}};
}

inline std::string simulation_csv(const std::vector<SimulationSummary>& rows) {
    std::ostringstream os;
    os << "measure,side,direction,p,n,reps,failed,true_value,mean,std_dev,mse\n";
    for (const auto& s : rows)
        os << "lambda," << side_name(s.measure.sel.side) << ','
           << direction_name(s.measure.sel.direction) << ',' << num17(s.measure.p) << ',' << s.n
           << ',' << s.reps << ',' << s.failed << ',' << num17(s.true_value) << ','
           << num17(s.mean) << ',' << num17(s.std_dev) << ',' << num17(s.mse) << '\n';
    return os.str();
}

inline std::string rolling_csv(const RollingResult& rr) {
    std::ostringstream os;
    os << "date,converged,carried_forward";
    const char* names[4] = {"lambda_l_XgY", "lambda_l_YgX", "lambda_u_XgY", "lambda_u_YgX"};
    for (const auto* n : names) os << ',' << n;
    if (!rr.rows.empty() && rr.rows.front().has_band)
        for (const auto* n : names) os << ',' << n << "_lo," << n << "_hi";
    os << '\n';
    for (const auto& r : rr.rows) {
        os << r.date << ',' << (r.converged ? 1 : 0) << ',' << (r.carried_forward ? 1 : 0);
        for (int k = 0; k < 4; ++k) os << ',' << num17(r.lambda[k]);
        if (r.has_band)
            for (int k = 0; k < 4; ++k) os << ',' << num17(r.lo[k]) << ',' << num17(r.hi[k]);
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// input series CSV: header "date,x,y"
// ---------------------------------------------------------------------------

inline std::vector<SeriesPoint> read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty series file: " + path);
    std::vector<SeriesPoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        SeriesPoint p;
        std::string sx, sy;
        if (!std::getline(ls, p.date, ',') || !std::getline(ls, sx, ',') || !std::getline(ls, sy))
            throw std::runtime_error("series file: malformed row '" + line + "'");
        p.x = std::stod(sx);
        p.y = std::stod(sy);
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<UnitSquarePoint> read_uv_csv(const std::string& path) {
    // two-column numeric CSV with header "u,v" (or "x,y" for raw pairs)
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    std::getline(in, line);
    std::vector<UnitSquarePoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string su, sv;
        if (!std::getline(ls, su, ',') || !std::getline(ls, sv))
            throw std::runtime_error("input file: malformed row '" + line + "'");
        out.push_back({std::stod(su), std::stod(sv)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// copula grid dump: text header lines, then row-major numeric tables
// ---------------------------------------------------------------------------

inline void write_copula_grid(std::ostream& os, const InterpolatedCopula& ic) {
    os << "taildep-copula-grid,v1\n";
    os << "nu," << ic.nu() << ",nv," << ic.nv() << ",order,"
       << (ic.order == InterpolatedCopula::Order::cubic_monotone ? "cubic-monotone" : "linear")
       << ",elliptical," << (ic.elliptical ? 1 : 0) << ",rho," << num17(ic.rho) << '\n';
    auto dump = [&](const char* name, const std::vector<double>& v) {
        os << name;
        for (double x : v) os << ',' << num17(x);
        os << '\n';
    };
    dump("grid_u", ic.grid_u);
    dump("grid_v", ic.grid_v);
    os << "cdf,dcdu,dcdv rows follow (row-major over grid_u)\n";
    for (std::size_t i = 0; i < ic.nu(); ++i) {
        for (std::size_t j = 0; j < ic.nv(); ++j) {
            os << num17(ic.at(ic.cdf, i, j)) << ',' << num17(ic.at(ic.dcdu, i, j)) << ','
               << num17(ic.at(ic.dcdv, i, j)) << '\n';
        }
    }
}

inline std::shared_ptr<InterpolatedCopula> read_copula_grid(std::istream& is) {
    auto ic = std::make_shared<InterpolatedCopula>();
    std::string line;
    std::getline(is, line);
    if (line.rfind("taildep-copula-grid", 0) != 0)
        throw std::runtime_error("copula grid: bad magic line");
    std::getline(is, line);
    std::size_t nu = 0, nv = 0;
    {
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(ls, tok, ',')) toks.push_back(tok);
        for (std::size_t k = 0; k + 1 < toks.size(); k += 2) {
            if (toks[k] == "nu") nu = std::stoul(toks[k + 1]);
            else if (toks[k] == "nv") nv = std::stoul(toks[k + 1]);
            else if (toks[k] == "order")
                ic->order = toks[k + 1] == "linear" ? InterpolatedCopula::Order::linear
                                                    : InterpolatedCopula::Order::cubic_monotone;
            else if (toks[k] == "elliptical") ic->elliptical = toks[k + 1] == "1";
            else if (toks[k] == "rho") ic->rho = std::stod(toks[k + 1]);
        }
    }
    auto read_grid = [&](const char* name, std::vector<double>& v, std::size_t n) {
        std::getline(is, line);
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ',');
        if (tok != name) throw std::runtime_error("copula grid: expected " + std::string(name));
        v.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::getline(ls, tok, ',');
            v[k] = std::stod(tok);
        }
    };
    read_grid("grid_u", ic->grid_u, nu);
    read_grid("grid_v", ic->grid_v, nv);
    std::getline(is, line);  // table banner
    ic->cdf.resize(nu * nv);
    ic->dcdu.resize(nu * nv);
    ic->dcdv.resize(nu * nv);
    for (std::size_t k = 0; k < nu * nv; ++k) {
        std::getline(is, line);
        std::istringstream ls(line);
        std::string a, b, c;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        std::getline(ls, c, ',');
        ic->cdf[k] = std::stod(a);
        ic->dcdu[k] = std::stod(b);
        ic->dcdv[k] = std::stod(c);
    }
    ic->finalize();
    return ic;
}

// ---------------------------------------------------------------------------
// run manifest
// ---------------------------------------------------------------------------

struct RunManifest {
    std::string command;
    json config;
    std::uint64_t seed = 0;
    MeshConfig mesh;
    double duration_seconds = 0.0;
};

inline json to_json(const RunManifest& m) {
    return json{{"command", m.command}, {"config", m.config},      {"seed", m.seed},
                {"mesh", to_json(m.mesh)}, {"version", kVersion}, {"duration_seconds", m.duration_seconds}};
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace taildep
