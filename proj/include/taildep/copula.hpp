#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taildep/common.hpp"
#include "taildep/pchip.hpp"
#include "taildep/rng.hpp"

namespace taildep {

struct UnitSquarePoint {
    double u = 0.0;
    double v = 0.0;
};

enum class Family {
    independence,
    comonotone,
    countermonotone,
    frechet,
    mardia,
    cuadras_auge,
    gumbel,
    amh,
    clayton,
    frank,
    marshall_olkin,
    gaussian,
    student_t,
    tabulated_gh,
};

const char* family_name(Family f);
Family family_from_name(const std::string& s);

enum class Side { lower, upper };
enum class Direction { x_given_y, y_given_x };

// Tabulated copula on strictly increasing probability grids. Values at the
// nodes are exact up to quadrature error; between nodes evaluation is
// monotone cubic (or bilinear) in each direction, value and partial tables
// interpolated independently.
struct InterpolatedCopula {
    enum class Order { linear, cubic_monotone };

    std::vector<double> grid_u, grid_v;     // include the exact endpoints 0 and 1
    std::vector<double> cdf;                // row-major (u index major)
    std::vector<double> dcdu, dcdv;
    Order order = Order::cubic_monotone;

    // provenance, used for analytic tail overrides of elliptical sources
    bool elliptical = false;
    double rho = 0.0;

    std::size_t nu() const { return grid_u.size(); }
    std::size_t nv() const { return grid_v.size(); }
    double at(const std::vector<double>& tab, std::size_t i, std::size_t j) const {
        return tab[i * nv() + j];
    }

    double value(double u, double v) const { return interp(cdf, u, v); }
    double du(double u, double v) const { return clamp01(interp(dcdu, u, v)); }
    double dv(double u, double v) const { return clamp01(interp(dcdv, u, v)); }

    void validate() const;

    // precompute per-column slopes along v; call once after the tables are filled
    void finalize();

    // interpolate one table at (u, v); cubic path does v-direction first
    double interp(const std::vector<double>& tab, double u, double v) const;

    // row evaluation helper: values of one table along fixed v at sorted us
    void interp_row(const std::vector<double>& tab, double v, std::span<const double> us,
                    std::span<double> out) const;

    // slope caches along the v direction, one entry per table cell
    std::vector<double> slope_cdf, slope_dcdu, slope_dcdv;

private:
    const std::vector<double>* slopes_of(const std::vector<double>& tab) const;
    void column_values_at(const std::vector<double>& tab, double v, std::vector<double>& out) const;
};

struct CopulaSpec {
    Family family = Family::independence;
    double p1 = 0.0;  // theta | alpha | rho
    double p2 = 0.0;  // beta | nu
    std::shared_ptr<const InterpolatedCopula> table;  // tabulated_gh only

    void validate() const;  // throws std::invalid_argument naming the violated constraint
    std::string label() const;

    static CopulaSpec one_param(Family f, double theta) { return {f, theta, 0.0, nullptr}; }
    static CopulaSpec two_param(Family f, double a, double b) { return {f, a, b, nullptr}; }
};

struct Partials {
    double du = 0.0;
    double dv = 0.0;
    bool analytic = true;
};

struct TdcClosedForm {
    double lower;
    double upper;
};

class Copula {
public:
    explicit Copula(CopulaSpec spec) : spec_(std::move(spec)) {}
    virtual ~Copula() = default;

    const CopulaSpec& spec() const { return spec_; }

    virtual double cdf(double u, double v) const = 0;
    virtual Partials partials(double u, double v) const;  // default: central differences
    virtual bool has_density() const { return false; }
    virtual double density(double, double) const;
    virtual bool exchangeable() const { return true; }
    virtual std::optional<double> analytic_tau() const { return std::nullopt; }
    virtual std::optional<TdcClosedForm> strong_tdc_closed() const { return std::nullopt; }
    virtual std::optional<double> weak_tdc_closed(Side side) const;
    virtual void sample(std::size_t n, RngStream& rng, std::vector<UnitSquarePoint>& out) const = 0;

    // batch evaluation along one mesh row (fixed v, ascending us)
    virtual void eval_row(std::span<const double> us, double v, std::span<double> c,
                          std::span<double> cu, std::span<double> cv) const;

    std::vector<UnitSquarePoint> sample(std::size_t n, RngStream& rng) const {
        std::vector<UnitSquarePoint> out;
        sample(n, rng, out);
        return out;
    }

protected:
    CopulaSpec spec_;
};

std::shared_ptr<const Copula> make_copula(const CopulaSpec& spec);

}  // namespace taildep

#include "taildep/detail/copula_families.hpp"
