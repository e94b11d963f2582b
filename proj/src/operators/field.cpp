#include "ddfv/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddfv {

DiscreteField::DiscreteField(const DDFVMesh& mesh, double fill)
    : values_(mesh.num_unknowns(), fill), num_primal_(mesh.num_primal()), num_boundary_(mesh.num_boundary()),
      num_dual_(mesh.num_dual())
{
}

DiscreteField::DiscreteField(const DDFVMesh& mesh, std::vector<double> values)
    : values_(std::move(values)), num_primal_(mesh.num_primal()), num_boundary_(mesh.num_boundary()),
      num_dual_(mesh.num_dual())
{
    if (values_.size() != mesh.num_unknowns())
        throw std::invalid_argument("field size " + std::to_string(values_.size()) + " does not match mesh with " +
                                    std::to_string(mesh.num_unknowns()) + " unknowns");
}

bool DiscreteField::matches(const DDFVMesh& mesh) const noexcept
{
    return num_primal_ == mesh.num_primal() && num_boundary_ == mesh.num_boundary() && num_dual_ == mesh.num_dual();
}

double DiscreteField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double DiscreteField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool DiscreteField::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

} // namespace ddfv
