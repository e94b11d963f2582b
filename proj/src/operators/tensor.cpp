#include "ddfv/tensor.hpp"

#include "ddfv/ddfv_mesh.hpp"
#include "ddfv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>
#include <vector>

namespace ddfv {

namespace {

void require_spd(const Mat2& m, const char* what)
{
    const auto [lo, hi] = m.eigenvalues();
    if (!(lo > 0.0) || !std::isfinite(hi))
        throw NotSPD(std::string(what) + " is not symmetric positive definite");
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& body, std::size_t expected, const std::string& text)
{
    std::vector<double> values;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw BadParameter("bad tensor description '" + text + "'");
        }
    }
    if (values.size() != expected)
        throw BadParameter("bad tensor description '" + text + "': expected " + std::to_string(expected) + " values");
    return values;
}

} // namespace

TensorSpec TensorSpec::identity() { return {}; }

TensorSpec TensorSpec::constant(const Mat2& value)
{
    require_spd(value, "tensor");
    TensorSpec t;
    t.kind_ = Kind::Constant;
    t.value_ = value;
    std::tie(t.lambda_min_, t.lambda_max_) = value.eigenvalues();
    t.text_ = "const:" + fmt(value.xx) + "," + fmt(value.xy) + "," + fmt(value.yy);
    return t;
}

TensorSpec TensorSpec::rotated(double l1, double l2, double angle)
{
    if (!(l1 > 0.0) || !(l2 > 0.0))
        throw NotSPD("rotated tensor needs positive eigenvalues");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    TensorSpec t;
    t.kind_ = Kind::RotatedDiagonal;
    t.value_ = {c * c * l1 + s * s * l2, c * s * (l1 - l2), s * s * l1 + c * c * l2};
    t.lambda_min_ = std::min(l1, l2);
    t.lambda_max_ = std::max(l1, l2);
    t.text_ = "rotated:" + fmt(l1) + "," + fmt(l2) + "," + fmt(angle);
    return t;
}

TensorSpec TensorSpec::field(Function fn, double lambda_min, double lambda_max)
{
    if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
        throw NotSPD("tensor field needs 0 < lambda_min <= lambda_max");
    TensorSpec t;
    t.kind_ = Kind::Field;
    t.fn_ = std::move(fn);
    t.lambda_min_ = lambda_min;
    t.lambda_max_ = lambda_max;
    t.text_ = "field";
    return t;
}

TensorSpec TensorSpec::parse(const std::string& text)
{
    if (text == "identity")
        return identity();
    if (text.rfind("const:", 0) == 0) {
        const auto v = parse_list(text.substr(6), 3, text);
        return constant({v[0], v[1], v[2]});
    }
    if (text.rfind("rotated:", 0) == 0) {
        const auto v = parse_list(text.substr(8), 3, text);
        return rotated(v[0], v[1], v[2]);
    }
    throw BadParameter("unknown tensor description '" + text + "' (identity, const:xx,xy,yy or rotated:l1,l2,angle)");
}

Mat2 TensorSpec::at(const Point& x) const
{
    if (kind_ != Kind::Field)
        return value_;
    const Mat2 m = fn_(x);
    const auto [lo, hi] = m.eigenvalues();
    const double slack = 1e-12 * lambda_max_;
    if (!(lo >= lambda_min_ - slack) || !(hi <= lambda_max_ + slack))
        throw NotSPD("tensor field leaves its ellipticity bounds");
    return m;
}

Mat2 TensorSpec::diamond_average(const Diamond& d) const
{
    if (kind_ != Kind::Field)
        return value_;
    return at(d.barycenter());
}

std::string TensorSpec::describe() const { return text_; }

} // namespace ddfv
