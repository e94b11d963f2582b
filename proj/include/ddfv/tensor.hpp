#pragma once

#include "ddfv/geometry.hpp"

#include <functional>
#include <string>

namespace ddfv {

struct Diamond;

/// Anisotropy tensor Lambda with stored ellipticity bounds
///   lambda_min |v|^2 <= Lambda v . v <= lambda_max |v|^2.
class TensorSpec {
public:
    enum class Kind { Identity, Constant, RotatedDiagonal, Field };
    using Function = std::function<Mat2(const Point&)>;

    static TensorSpec identity();
    /// Throws NotSPD.
    static TensorSpec constant(const Mat2& value);
    /// R(angle) diag(l1, l2) R(angle)^T. Throws NotSPD unless l1, l2 > 0.
    static TensorSpec rotated(double l1, double l2, double angle);
    /// Spatially varying tensor; values outside the bounds raise NotSPD when evaluated.
    static TensorSpec field(Function fn, double lambda_min, double lambda_max);

    /// "identity", "const:xx,xy,yy" or "rotated:l1,l2,angle". Throws BadParameter.
    static TensorSpec parse(const std::string& text);

    Kind kind() const noexcept { return kind_; }
    double lambda_min() const noexcept { return lambda_min_; }
    double lambda_max() const noexcept { return lambda_max_; }

    Mat2 at(const Point& x) const;

    /// Lambda^D, the mean of Lambda over the diamond. Exact for constant
    /// tensors, one-point barycenter rule for fields.
    Mat2 diamond_average(const Diamond& d) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::Identity;
    Mat2 value_ = Mat2::identity();
    Function fn_;
    double lambda_min_ = 1.0;
    double lambda_max_ = 1.0;
    std::string text_ = "identity";
};

} // namespace ddfv
