#pragma once

#include <cmath>

namespace pseudohyp {

// Second-order forward-mode jet in two variables (x, y).
struct Jet {
    double v = 0, x = 0, y = 0, xx = 0, xy = 0, yy = 0;

    Jet() = default;
    Jet(double c) : v(c) {}  // NOLINT: implicit constants are the point
    Jet(double v_, double x_, double y_, double xx_, double xy_, double yy_)
        : v(v_), x(x_), y(y_), xx(xx_), xy(xy_), yy(yy_) {}

    static Jet var_x(double a) { return {a, 1, 0, 0, 0, 0}; }
    static Jet var_y(double a) { return {a, 0, 1, 0, 0, 0}; }
};

inline Jet operator+(const Jet& a, const Jet& b) {
    return {a.v + b.v, a.x + b.x, a.y + b.y, a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
}
inline Jet operator-(const Jet& a, const Jet& b) {
    return {a.v - b.v, a.x - b.x, a.y - b.y, a.xx - b.xx, a.xy - b.xy, a.yy - b.yy};
}
inline Jet operator-(const Jet& a) { return {-a.v, -a.x, -a.y, -a.xx, -a.xy, -a.yy}; }
inline Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v,
            a.x * b.v + a.v * b.x,
            a.y * b.v + a.v * b.y,
            a.xx * b.v + 2 * a.x * b.x + a.v * b.xx,
            a.xy * b.v + a.x * b.y + a.y * b.x + a.v * b.xy,
            a.yy * b.v + 2 * a.y * b.y + a.v * b.yy};
}

// Chain rule for a scalar function with f, f', f'' at a.v.
inline Jet apply(const Jet& a, double f, double f1, double f2) {
    return {f,
            f1 * a.x,
            f1 * a.y,
            f1 * a.xx + f2 * a.x * a.x,
            f1 * a.xy + f2 * a.x * a.y,
            f1 * a.yy + f2 * a.y * a.y};
}

inline Jet inv(const Jet& a) {
    double r = 1.0 / a.v;
    return apply(a, r, -r * r, 2 * r * r * r);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }

inline Jet sqrt(const Jet& a) {
    double s = std::sqrt(a.v);
    return apply(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline double inv(double a) { return 1.0 / a; }

inline double value_of(double a) { return a; }
inline double value_of(const Jet& a) { return a.v; }

}  // namespace pseudohyp
