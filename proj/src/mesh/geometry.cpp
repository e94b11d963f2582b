#include "ddfv/geometry.hpp"

#include <algorithm>

namespace ddfv {

double polygon_signed_area(std::span<const Point> poly)
{
    double twice = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        twice += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * twice;
}

Point polygon_centroid(std::span<const Point> poly)
{
    // Shift to the first vertex to limit cancellation.
    const Point o = poly.front();
    double twice_area = 0.0;
    Vec2 moment;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i] - o;
        const Vec2 b = poly[(i + 1) % n] - o;
        const double c = cross(a, b);
        twice_area += c;
        moment += c * (a + b);
    }
    return o + moment / (3.0 * twice_area);
}

namespace {

int orientation(const Point& a, const Point& b, const Point& c)
{
    const double v = cross(b - a, c - a);
    const double scale = std::max({std::abs(b.x - a.x), std::abs(b.y - a.y), std::abs(c.x - a.x), std::abs(c.y - a.y)});
    if (std::abs(v) <= 1e-14 * scale * scale)
        return 0;
    return v > 0 ? 1 : -1;
}

bool on_segment(const Point& a, const Point& b, const Point& p)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2)
{
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
        return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

} // namespace

bool polygon_is_simple(std::span<const Point> poly)
{
    const std::size_t n = poly.size();
    if (n < 3)
        return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (poly[i] == poly[j])
                return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent)
                continue;
            if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

} // namespace ddfv
