#include "ddfv/errors.hpp"
#include "ddfv/harness.hpp"

#include <cmath>
#include <numbers>

namespace ddfv {

double drift_alpha() { return std::numbers::pi * std::numbers::pi + 0.25; }

TestCase exact_case_drift()
{
    using std::numbers::pi;
    const double alpha = drift_alpha();
    TestCase c;
    c.name = "drift";
    c.t_final = 0.25;
    c.exact = [alpha](const Point& x, double t) {
        return std::exp(-alpha * t + 0.5 * x.y) * (pi * std::cos(pi * x.y) + 0.5 * std::sin(pi * x.y)) +
               pi * std::exp(x.y - 0.5);
    };
    c.exact_gradient = [alpha](const Point& x, double t) {
        const double dy = std::exp(-alpha * t + 0.5 * x.y) * (pi * std::cos(pi * x.y) + (0.25 - pi * pi) * std::sin(pi * x.y)) +
                          pi * std::exp(x.y - 0.5);
        return Vec2{0.0, dy};
    };
    c.u0 = [f = c.exact](const Point& x) { return f(x, 0.0); };
    c.potential = [](const Point& x) { return -x.y; };
    return c;
}

TestCase constant_case(double value)
{
    TestCase c;
    c.name = "constant";
    c.exact = [value](const Point&, double) { return value; };
    c.exact_gradient = [](const Point&, double) { return Vec2{}; };
    c.u0 = [value](const Point&) { return value; };
    c.potential = [](const Point&) { return 0.0; };
    return c;
}

TestCase relaxation_case()
{
    using std::numbers::pi;
    TestCase c;
    c.name = "relax";
    c.u0 = [](const Point& x) { return 1.0 + 0.5 * std::cos(pi * x.x) * std::cos(pi * x.y); };
    c.potential = [](const Point&) { return 0.0; };
    return c;
}

TestCase case_by_name(const std::string& name)
{
    if (name == "drift")
        return exact_case_drift();
    if (name == "constant")
        return constant_case();
    if (name == "relax")
        return relaxation_case();
    throw BadParameter("unknown case '" + name + "' (expected drift, constant or relax)");
}

} // namespace ddfv
