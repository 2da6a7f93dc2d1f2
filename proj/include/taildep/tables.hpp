#pragma once

// Bundled reference values for the measure engine: the regression targets the
// `table` command and the acceptance suite compare against. Version: v1.

#include <array>
#include <string>
#include <vector>

#include "taildep/copula.hpp"
#include "taildep/ghdist.hpp"

namespace taildep::tables {

inline constexpr const char* kFixtureVersion = "reference-tables-v1";

// ---------------------------------------------------------------------------
// reference GH parameter sets (table 1)
// ---------------------------------------------------------------------------

struct GhEntry {
    const char* name;
    double lambda, alpha, b1, b2, delta, m1, m2, d11, d12, d22;
    GHParams params() const {
        GHParams g;
        g.lambda = lambda;
        g.alpha = alpha;
        g.beta = {b1, b2};
        g.delta = delta;
        g.mu = {m1, m2};
        g.Delta = {d11, d12, d22};
        return g;
    }
};

inline const std::array<GhEntry, 12>& gh_entries() {
    static const std::array<GhEntry, 12> rows = {{
        {"GH1", 1.50, 1.10, 0.00, 0.00, 1, 0, 0, 2.29, 2.06, 2.29},
        {"GH2", 1.50, 0.80, -0.40, 0.30, 1, 0, 0, 2.29, 2.06, 2.29},
        {"GH3", 1.00, 1.30, 0.00, 0.00, 1, 0, 0, 1.77, 1.57, 1.96},
        {"GH4", 1.00, 1.30, -0.40, -0.30, 1, 0, 0, 3.43, 0.69, 0.43},
        {"NIG1", -0.50, 1.20, 0.00, 0.00, 1, 0, 0, 1.77, 1.57, 1.96},
        {"NIG2", -0.50, 1.20, -0.40, -0.30, 1, 0, 0, 1.77, 1.57, 1.96},
        {"NIG3", -0.50, 1.20, -0.40, -0.30, 1, 0, 0, 3.43, 0.69, 0.43},
        {"NIG4", -0.50, 1.20, -0.40, 0.30, 1, 0, 0, 3.43, 0.69, 0.43},
        {"VG1", 0.80, 1.30, 0.00, 0.00, 0, 0, 0, 1.77, 1.57, 1.96},
        {"VG2", 0.80, 1.30, -0.40, -0.30, 0, 0, 0, 1.77, 1.57, 1.96},
        {"VG3", 0.50, 1.10, -0.40, -0.30, 0, 0, 0, 1.77, 1.57, 1.96},
        {"VG4", 0.50, 1.10, -0.40, -0.30, 0, 0, 0, 3.43, 0.69, 0.43},
    }};
    return rows;
}

// ---------------------------------------------------------------------------
// concordance references: kappa lower/upper per direction, tau, rho
// ---------------------------------------------------------------------------

struct KappaRow {
    // gh_index >= 0 refers to gh_entries(); otherwise family/params apply
    int gh_index;
    Family family;
    double p1, p2;
    double kl_xy, kl_yx, ku_xy, ku_yx, tau, rho;
};

// table 2: implied GH copulas
inline const std::vector<KappaRow>& kappa_gh_rows() {
    static const std::vector<KappaRow> rows = {
        {0, Family::tabulated_gh, 0, 0, 0.85, 0.85, 0.85, 0.85, 0.71, 0.87},
        {1, Family::tabulated_gh, 0, 0, 0.85, 0.86, 0.83, 0.82, 0.70, 0.86},
        {2, Family::tabulated_gh, 0, 0, 0.78, 0.78, 0.78, 0.78, 0.64, 0.81},
        {3, Family::tabulated_gh, 0, 0, 0.71, 0.71, 0.59, 0.58, 0.53, 0.70},
        {4, Family::tabulated_gh, 0, 0, 0.78, 0.78, 0.78, 0.78, 0.64, 0.81},
        {5, Family::tabulated_gh, 0, 0, 0.89, 0.89, 0.80, 0.80, 0.71, 0.87},
        {6, Family::tabulated_gh, 0, 0, 0.67, 0.67, 0.53, 0.52, 0.47, 0.63},
        {7, Family::tabulated_gh, 0, 0, 0.55, 0.54, 0.45, 0.47, 0.39, 0.53},
        {8, Family::tabulated_gh, 0, 0, 0.78, 0.78, 0.78, 0.78, 0.64, 0.80},
        {9, Family::tabulated_gh, 0, 0, 0.91, 0.91, 0.82, 0.82, 0.76, 0.90},
        {10, Family::tabulated_gh, 0, 0, 0.94, 0.94, 0.84, 0.84, 0.80, 0.92},
        {11, Family::tabulated_gh, 0, 0, 0.77, 0.79, 0.59, 0.55, 0.58, 0.74},
    };
    return rows;
}

// table 4: closed-form families (36 rows)
inline const std::vector<KappaRow>& kappa_rows() {
    static const std::vector<KappaRow> rows = {
        {-1, Family::frechet, 0.3, 0.7, -0.40, -0.40, -0.40, -0.40, -0.39, -0.41},
        {-1, Family::frechet, 0.5, 0.5, 0.00, 0.00, 0.00, 0.00, 0.00, 0.01},
        {-1, Family::frechet, 0.7, 0.3, 0.40, 0.40, 0.40, 0.40, 0.40, 0.39},
        {-1, Family::gumbel, 4, 0, 0.84, 0.84, 0.91, 0.91, 0.75, 0.90},
        {-1, Family::gumbel, 6, 0, 0.91, 0.91, 0.96, 0.96, 0.83, 0.95},
        {-1, Family::gumbel, 10, 0, 0.96, 0.96, 0.99, 0.99, 0.90, 0.97},
        {-1, Family::clayton, 1, 0, 0.55, 0.55, 0.36, 0.36, 0.34, 0.47},
        {-1, Family::clayton, 2, 0, 0.75, 0.75, 0.53, 0.53, 0.50, 0.67},
        {-1, Family::clayton, 5, 0, 0.92, 0.92, 0.73, 0.73, 0.72, 0.87},
        {-1, Family::clayton, 10, 0, 0.97, 0.97, 0.84, 0.84, 0.83, 0.95},
        {-1, Family::clayton, 30, 0, 1.00, 1.00, 0.94, 0.94, 0.94, 0.98},
        {-1, Family::frank, 1.5, 0, 0.20, 0.20, 0.20, 0.20, 0.17, 0.23},
        {-1, Family::frank, 5, 0, 0.55, 0.55, 0.55, 0.55, 0.46, 0.63},
        {-1, Family::frank, 15, 0, 0.84, 0.84, 0.84, 0.84, 0.76, 0.92},
        {-1, Family::amh, 0.5, 0, 0.17, 0.17, 0.15, 0.15, 0.13, 0.18},
        {-1, Family::amh, 1, 0, 0.55, 0.55, 0.36, 0.36, 0.34, 0.47},
        {-1, Family::mardia, -0.9, 0, -0.71, -0.71, -0.71, -0.71, -0.68, -0.74},
        {-1, Family::mardia, 0.9, 0, 0.71, 0.71, 0.71, 0.71, 0.68, 0.72},
        {-1, Family::cuadras_auge, 0.5, 0, 0.35, 0.35, 0.41, 0.41, 0.34, 0.42},
        {-1, Family::cuadras_auge, 0.8, 0, 0.67, 0.67, 0.74, 0.74, 0.67, 0.74},
        {-1, Family::gaussian, 0.5, 0, 0.44, 0.44, 0.44, 0.44, 0.33, 0.47},
        {-1, Family::gaussian, 0.7, 0, 0.62, 0.62, 0.62, 0.62, 0.49, 0.67},
        {-1, Family::gaussian, 0.9, 0, 0.85, 0.85, 0.85, 0.85, 0.71, 0.88},
        {-1, Family::gaussian, 0.95, 0, 0.92, 0.92, 0.92, 0.92, 0.80, 0.93},
        {-1, Family::marshall_olkin, 0.5, 0.5, 0.35, 0.35, 0.41, 0.41, 0.34, 0.42},
        {-1, Family::marshall_olkin, 0.6, 0.1, 0.13, 0.09, 0.12, 0.15, 0.10, 0.12},
        {-1, Family::marshall_olkin, 0.7, 0.9, 0.68, 0.62, 0.71, 0.76, 0.65, 0.72},
        {-1, Family::student_t, 0.50, 4, 0.42, 0.42, 0.42, 0.42, 0.33, 0.46},
        {-1, Family::student_t, 0.90, 4, 0.85, 0.85, 0.85, 0.85, 0.71, 0.87},
        {-1, Family::student_t, 0.95, 4, 0.92, 0.92, 0.92, 0.92, 0.80, 0.93},
        {-1, Family::student_t, 0.50, 2, 0.42, 0.42, 0.42, 0.42, 0.33, 0.44},
        {-1, Family::student_t, 0.90, 2, 0.85, 0.85, 0.85, 0.85, 0.71, 0.86},
        {-1, Family::student_t, 0.95, 2, 0.92, 0.92, 0.92, 0.92, 0.80, 0.92},
        {-1, Family::student_t, 0.50, 1, 0.41, 0.41, 0.41, 0.41, 0.34, 0.42},
        {-1, Family::student_t, 0.90, 1, 0.83, 0.83, 0.83, 0.83, 0.71, 0.83},
        {-1, Family::student_t, 0.95, 1, 0.90, 0.90, 0.90, 0.90, 0.80, 0.90},
    };
    return rows;
}

// ---------------------------------------------------------------------------
// tail dependence references: Lambda per side/direction plus the strong TDCs
// ---------------------------------------------------------------------------

struct LambdaRow {
    int gh_index;
    Family family;
    double p1, p2;
    double l_xy, l_yx, u_xy, u_yx;  // Lambda entries at the table's focus p
    double strong_l, strong_u;
    const char* note;
};

// table 3: implied GH copulas at p = 1 and p = 0.7
struct GhLambdaRow {
    int gh_index;
    double l_xy_1, l_xy_07, l_yx_1, l_yx_07, u_xy_1, u_xy_07, u_yx_1, u_yx_07;
    double strong_l, strong_u;
};

inline const std::vector<GhLambdaRow>& lambda_gh_rows() {
    static const std::vector<GhLambdaRow> rows = {
        {0, 0.19, 0.36, 0.19, 0.36, 0.19, 0.36, 0.19, 0.36, 0, 0},
        {1, 0.23, 0.40, 0.19, 0.35, 0.13, 0.29, 0.19, 0.35, 1, 1},
        {2, 0.13, 0.28, 0.13, 0.28, 0.13, 0.28, 0.13, 0.28, 0, 0},
        {3, 0.12, 0.27, 0.10, 0.25, 0.01, 0.06, 0.02, 0.10, 0, 0},
        {4, 0.14, 0.30, 0.14, 0.30, 0.14, 0.30, 0.14, 0.30, 0, 0},
        {5, 0.37, 0.52, 0.36, 0.51, 0.09, 0.23, 0.09, 0.24, 0, 0},
        {6, 0.16, 0.30, 0.13, 0.27, 0.01, 0.06, 0.02, 0.10, 0, 0},
        {7, 0.09, 0.23, 0.05, 0.15, 0.01, 0.05, 0.03, 0.13, 0, 0},
        {8, 0.14, 0.30, 0.14, 0.30, 0.14, 0.30, 0.18, 0.32, 0, 0},
        {9, 0.33, 0.50, 0.33, 0.50, 0.09, 0.24, 0.09, 0.25, 0, 0},
        {10, 0.42, 0.58, 0.38, 0.56, 0.09, 0.24, 0.11, 0.26, 0, 0},
        {11, 0.11, 0.28, 0.15, 0.32, 0.01, 0.06, 0.01, 0.09, 0, 0},
    };
    return rows;
}

// table 5: p = 1 (the Gumbel row printed with parameter "1" is stored as 1.5,
// the only reading consistent with its strong-TDC column and the p = 0.7 table)
inline const std::vector<LambdaRow>& lambda_rows_p1() {
    static const std::vector<LambdaRow> rows = {
        {-1, Family::frechet, 0.3, 0.7, 0.03, 0.03, 0.03, 0.03, 0.3, 0.3, ""},
        {-1, Family::frechet, 0.5, 0.5, 0.13, 0.13, 0.13, 0.13, 0.5, 0.5, ""},
        {-1, Family::frechet, 0.7, 0.3, 0.34, 0.34, 0.34, 0.34, 0.7, 0.7, ""},
        {-1, Family::gumbel, 1.5, 0, 0.00, 0.00, 0.09, 0.09, 0, 0.41, "printed parameter reads 1"},
        {-1, Family::gumbel, 4, 0, 0.07, 0.07, 0.48, 0.48, 0, 0.81, ""},
        {-1, Family::gumbel, 6, 0, 0.15, 0.15, 0.62, 0.62, 0, 0.88, ""},
        {-1, Family::gumbel, 10, 0, 0.29, 0.29, 0.77, 0.77, 0, 0.93, ""},
        {-1, Family::clayton, 1, 0, 0.14, 0.14, 0.00, 0.00, 0.50, 0, ""},
        {-1, Family::clayton, 2, 0, 0.32, 0.32, 0.00, 0.00, 0.71, 0, ""},
        {-1, Family::clayton, 5, 0, 0.61, 0.61, 0.00, 0.00, 0.87, 0, ""},
        {-1, Family::clayton, 10, 0, 0.78, 0.78, 0.01, 0.01, 0.93, 0, ""},
        {-1, Family::clayton, 30, 0, 0.92, 0.92, 0.02, 0.02, 0.98, 0, ""},
        {-1, Family::frank, 5, 0, 0.00, 0.00, 0.00, 0.00, 0, 0, ""},
        {-1, Family::frank, 15, 0, 0.01, 0.01, 0.01, 0.01, 0, 0, ""},
        {-1, Family::cuadras_auge, 0.2, 0, 0.00, 0.00, 0.01, 0.01, 0, 0.20, ""},
        {-1, Family::cuadras_auge, 0.5, 0, 0.00, 0.00, 0.13, 0.13, 0, 0.50, ""},
        {-1, Family::cuadras_auge, 0.8, 0, 0.04, 0.04, 0.51, 0.51, 0, 0.80, ""},
        {-1, Family::marshall_olkin, 0.1, 0.6, 0.00, 0.00, 0.17, 0.00, 0, 0.10, ""},
        {-1, Family::marshall_olkin, 0.5, 0.5, 0.00, 0.00, 0.13, 0.13, 0, 0.50, ""},
        {-1, Family::marshall_olkin, 0.6, 0.1, 0.00, 0.00, 0.00, 0.17, 0, 0.10, ""},
        {-1, Family::marshall_olkin, 0.7, 0.9, 0.01, 0.15, 0.65, 0.30, 0, 0.70, ""},
        {-1, Family::gaussian, 0.700, 0, 0.04, 0.04, 0.04, 0.04, 0, 0, ""},
        {-1, Family::gaussian, 0.900, 0, 0.15, 0.15, 0.15, 0.15, 0, 0, ""},
        {-1, Family::gaussian, 0.950, 0, 0.25, 0.25, 0.25, 0.25, 0, 0, ""},
        {-1, Family::gaussian, 0.990, 0, 0.53, 0.53, 0.53, 0.53, 0, 0, ""},
        {-1, Family::student_t, 0.500, 2, 0.07, 0.07, 0.07, 0.07, 0.42, 0.42, ""},
        {-1, Family::student_t, 0.900, 2, 0.33, 0.33, 0.33, 0.33, 0.73, 0.73, ""},
        {-1, Family::student_t, 0.950, 2, 0.46, 0.46, 0.46, 0.46, 0.81, 0.81, ""},
        {-1, Family::student_t, 0.500, 1, 0.11, 0.11, 0.11, 0.11, 0.56, 0.56, ""},
        {-1, Family::student_t, 0.900, 1, 0.42, 0.42, 0.42, 0.42, 0.80, 0.80, ""},
        {-1, Family::student_t, 0.950, 1, 0.54, 0.54, 0.54, 0.54, 0.86, 0.86, ""},
    };
    return rows;
}

// table 6: p = 0.7
inline const std::vector<LambdaRow>& lambda_rows_p07() {
    static const std::vector<LambdaRow> rows = {
        {-1, Family::frechet, 0.3, 0.7, 0.06, 0.06, 0.06, 0.06, 0.30, 0.3, ""},
        {-1, Family::frechet, 0.5, 0.5, 0.19, 0.19, 0.19, 0.19, 0.50, 0.5, ""},
        {-1, Family::frechet, 0.7, 0.3, 0.43, 0.43, 0.43, 0.43, 0.70, 0.7, ""},
        {-1, Family::gumbel, 1.5, 0, 0.05, 0.05, 0.21, 0.21, 0.00, 0.41, ""},
        {-1, Family::gumbel, 4, 0, 0.22, 0.22, 0.60, 0.60, 0.00, 0.81, ""},
        {-1, Family::gumbel, 6, 0, 0.33, 0.33, 0.72, 0.72, 0.00, 0.88, ""},
        {-1, Family::gumbel, 10, 0, 0.48, 0.48, 0.83, 0.83, 0.00, 0.93, ""},
        {-1, Family::clayton, 1, 0, 0.27, 0.27, 0.02, 0.02, 0.50, 0.0, ""},
        {-1, Family::clayton, 2, 0, 0.44, 0.44, 0.04, 0.04, 0.71, 0.0, ""},
        {-1, Family::clayton, 5, 0, 0.69, 0.69, 0.06, 0.06, 0.87, 0.0, ""},
        {-1, Family::clayton, 10, 0, 0.83, 0.83, 0.09, 0.09, 0.93, 0.0, ""},
        {-1, Family::clayton, 30, 0, 0.94, 0.94, 0.17, 0.17, 0.98, 0.0, ""},
        {-1, Family::frank, 5, 0, 0.05, 0.05, 0.05, 0.05, 0.00, 0.0, ""},
        {-1, Family::frank, 15, 0, 0.10, 0.10, 0.10, 0.10, 0.00, 0.0, ""},
        {-1, Family::cuadras_auge, 0.2, 0, 0.01, 0.01, 0.04, 0.04, 0.00, 0.2, ""},
        {-1, Family::cuadras_auge, 0.5, 0, 0.03, 0.03, 0.21, 0.21, 0.00, 0.5, ""},
        {-1, Family::cuadras_auge, 0.8, 0, 0.16, 0.16, 0.59, 0.59, 0.00, 0.8, ""},
        {-1, Family::marshall_olkin, 0.1, 0.6, 0.00, 0.04, 0.29, 0.01, 0.00, 0.1, ""},
        {-1, Family::marshall_olkin, 0.5, 0.5, 0.03, 0.03, 0.21, 0.21, 0.00, 0.5, ""},
        {-1, Family::marshall_olkin, 0.6, 0.1, 0.04, 0.00, 0.01, 0.29, 0.00, 0.1, ""},
        {-1, Family::marshall_olkin, 0.7, 0.9, 0.08, 0.31, 0.73, 0.43, 0.00, 0.7, ""},
        {-1, Family::gaussian, 0.700, 0, 0.15, 0.15, 0.15, 0.15, 0.00, 0.00, ""},
        {-1, Family::gaussian, 0.900, 0, 0.32, 0.32, 0.32, 0.32, 0.00, 0.00, ""},
        {-1, Family::gaussian, 0.950, 0, 0.43, 0.43, 0.43, 0.43, 0.00, 0.00, ""},
        {-1, Family::gaussian, 0.990, 0, 0.68, 0.68, 0.68, 0.68, 0.00, 0.00, ""},
        {-1, Family::student_t, 0.500, 2, 0.16, 0.16, 0.16, 0.16, 0.42, 0.42, ""},
        {-1, Family::student_t, 0.900, 2, 0.46, 0.46, 0.46, 0.46, 0.73, 0.73, ""},
        {-1, Family::student_t, 0.950, 2, 0.58, 0.58, 0.58, 0.58, 0.81, 0.81, ""},
        {-1, Family::student_t, 0.500, 1, 0.20, 0.20, 0.20, 0.20, 0.56, 0.56, ""},
        {-1, Family::student_t, 0.900, 1, 0.53, 0.53, 0.53, 0.53, 0.80, 0.80, ""},
        {-1, Family::student_t, 0.950, 1, 0.64, 0.64, 0.64, 0.64, 0.86, 0.86, ""},
    };
    return rows;
}

// ---------------------------------------------------------------------------
// estimator-performance references (reduced-scale targets for `simulate`);
// the published study runs at p = 0.7
// ---------------------------------------------------------------------------

struct SimRefRow {
    const char* model;
    const char* entry;  // side/direction label
    double true_value;
    double mean500, sd500;
    double mean1000, sd1000;
};

inline const std::vector<SimRefRow>& sim_reference() {
    static const std::vector<SimRefRow> rows = {
        {"gumbel10", "lambda_l", 0.48, 0.484, 0.011, 0.483, 0.008},
        {"gumbel10", "lambda_u", 0.83, 0.828, 0.0064, 0.827, 0.0046},
        {"gh2", "lambda_l_YgX", 0.40, 0.372, 0.018, 0.392, 0.012},
        {"gh2", "lambda_l_XgY", 0.35, 0.346, 0.017, 0.351, 0.011},
        {"gh2", "lambda_u_YgX", 0.29, 0.313, 0.019, 0.301, 0.011},
        {"gh2", "lambda_u_XgY", 0.35, 0.3451, 0.016, 0.348, 0.013},
        {"t_0.8_3", "lambda_l", 0.30, 0.2994, 0.0158, 0.3002, 0.0119},
        {"t_0.8_3", "lambda_u", 0.30, 0.2994, 0.0157, 0.3004, 0.0119},
    };
    return rows;
}

inline CopulaSpec spec_of(const KappaRow& r) {
    CopulaSpec s;
    s.family = r.family;
    s.p1 = r.p1;
    s.p2 = r.p2;
    return s;
}

inline CopulaSpec spec_of(const LambdaRow& r) {
    CopulaSpec s;
    s.family = r.family;
    s.p1 = r.p1;
    s.p2 = r.p2;
    return s;
}

}  // namespace taildep::tables
