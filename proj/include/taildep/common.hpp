#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace taildep {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Symmetric 2x2 matrix.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a22 = 1.0;

    double det() const { return a11 * a22 - a12 * a12; }

    Mat2 inverse() const {
        const double d = det();
        if (d <= 0.0) throw std::invalid_argument("Mat2: matrix not positive definite");
        return {a22 / d, -a12 / d, a11 / d};
    }

    // quadratic form z' A z
    double quad(double zx, double zy) const {
        return a11 * zx * zx + 2.0 * a12 * zx * zy + a22 * zy * zy;
    }

    // lower Cholesky factor L with L L' = A
    std::array<double, 3> cholesky() const {  // {l11, l21, l22}
        if (a11 <= 0.0) throw std::invalid_argument("Mat2: not positive definite");
        const double l11 = std::sqrt(a11);
        const double l21 = a12 / l11;
        const double rem = a22 - l21 * l21;
        if (rem <= 0.0) throw std::invalid_argument("Mat2: not positive definite");
        return {l11, l21, std::sqrt(rem)};
    }
};

// sign with sign(0) = 0; kinked surfaces get the mean of their one-sided limits.
inline double sign0(double x) { return (x > 0.0) - (x < 0.0); }

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

inline double sqr(double x) { return x * x; }

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace taildep
