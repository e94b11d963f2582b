#pragma once

#include <cmath>
#include <span>
#include <utility>

namespace ddfv {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

using Point = Vec2;

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator/(Vec2 a, double s) { return a *= (1.0 / s); }
constexpr bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point& a, const Point& b) { return norm(b - a); }

/// Counter-clockwise quarter turn.
constexpr Vec2 rot_ccw(const Vec2& a) { return {-a.y, a.x}; }
/// Clockwise quarter turn.
constexpr Vec2 rot_cw(const Vec2& a) { return {a.y, -a.x}; }

/// Symmetric 2x2 matrix.
struct Mat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 1.0}; }

    constexpr Vec2 operator*(const Vec2& v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
    constexpr double det() const { return xx * yy - xy * xy; }
    constexpr double trace() const { return xx + yy; }

    /// Eigenvalues, smallest first.
    std::pair<double, double> eigenvalues() const
    {
        const double mean = 0.5 * (xx + yy);
        const double rad = std::hypot(0.5 * (xx - yy), xy);
        return {mean - rad, mean + rad};
    }
};

constexpr Mat2 operator+(const Mat2& a, const Mat2& b) { return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy}; }
constexpr Mat2 operator*(double s, const Mat2& a) { return {s * a.xx, s * a.xy, s * a.yy}; }

/// Signed area of triangle (a, b, c); positive when counter-clockwise.
constexpr double signed_area(const Point& a, const Point& b, const Point& c)
{
    return 0.5 * cross(b - a, c - a);
}

inline double triangle_area(const Point& a, const Point& b, const Point& c)
{
    return std::abs(signed_area(a, b, c));
}

constexpr Point triangle_centroid(const Point& a, const Point& b, const Point& c)
{
    return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

/// Shoelace signed area of a closed polygon.
double polygon_signed_area(std::span<const Point> poly);

/// Area centroid of a simple polygon with nonzero area.
Point polygon_centroid(std::span<const Point> poly);

/// True when no two non-adjacent edges of the closed polygon intersect.
bool polygon_is_simple(std::span<const Point> poly);

} // namespace ddfv
