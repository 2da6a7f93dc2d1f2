#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace taildep {

// Shape-preserving (Fritsch-Carlson) monotone cubic interpolant on a fixed
// strictly increasing grid. Stores Hermite slopes; evaluation is a binary
// search plus a cubic.
class Pchip {
public:
    Pchip() = default;

    Pchip(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw std::invalid_argument("Pchip: need >= 2 nodes");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("Pchip: grid not strictly increasing");
        m_ = slopes(x_, y_);
    }

    static std::vector<double> slopes(const std::vector<double>& x, const std::vector<double>& y) {
        const std::size_t n = x.size();
        std::vector<double> h(n - 1), d(n - 1), m(n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            d[i] = (y[i + 1] - y[i]) / h[i];
        }
        if (n == 2) {
            m[0] = m[1] = d[0];
            return m;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0.0) != (d[i] > 0.0)) {
                m[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        m[0] = edge_slope(h[0], h[1], d[0], d[1]);
        m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
        return m;
    }

    double operator()(double xq) const { return eval(xq); }

    double eval(double xq) const {
        const std::size_t i = interval(xq);
        return hermite(xq, x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1]);
    }

    double derivative(double xq) const {
        const std::size_t i = interval(xq);
        const double h = x_[i + 1] - x_[i];
        const double t = (xq - x_[i]) / h;
        const double a = 6.0 * t * t - 6.0 * t;
        return (a * y_[i] - a * y_[i + 1]) / h + (3.0 * t * t - 4.0 * t + 1.0) * m_[i] +
               (3.0 * t * t - 2.0 * t) * m_[i + 1];
    }

    static double hermite(double xq, double x0, double x1, double y0, double y1, double m0, double m1) {
        const double h = x1 - x0;
        const double t = (xq - x0) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * m0 +
               (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * m1;
    }

    const std::vector<double>& grid() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    static double edge_slope(double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) m = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0)) m = 3.0 * d0;
        return m;
    }

    std::size_t interval(double xq) const {
        if (xq <= x_.front()) return 0;
        if (xq >= x_.back()) return x_.size() - 2;
        const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
        return static_cast<std::size_t>(it - x_.begin()) - 1;
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace taildep
