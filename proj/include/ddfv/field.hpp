#pragma once

#include "ddfv/ddfv_mesh.hpp"

#include <span>
#include <vector>

namespace ddfv {

/// Scalar field on the unknown layout of a DDFVMesh: interior primal cells,
/// degenerate boundary cells, then dual cells.
class DiscreteField {
public:
    DiscreteField() = default;
    explicit DiscreteField(const DDFVMesh& mesh, double fill = 0.0);
    /// Throws std::invalid_argument when the size does not match the mesh.
    DiscreteField(const DDFVMesh& mesh, std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double& operator[](Index i) { return values_[i]; }
    double operator[](Index i) const { return values_[i]; }

    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }

    std::span<double> primal() { return {values_.data(), num_primal_}; }
    std::span<const double> primal() const { return {values_.data(), num_primal_}; }
    std::span<double> boundary() { return {values_.data() + num_primal_, num_boundary_}; }
    std::span<const double> boundary() const { return {values_.data() + num_primal_, num_boundary_}; }
    std::span<double> dual() { return {values_.data() + num_primal_ + num_boundary_, num_dual_}; }
    std::span<const double> dual() const { return {values_.data() + num_primal_ + num_boundary_, num_dual_}; }

    bool matches(const DDFVMesh& mesh) const noexcept;
    double min() const;
    double max() const;
    bool all_finite() const;

private:
    std::vector<double> values_;
    std::size_t num_primal_ = 0;
    std::size_t num_boundary_ = 0;
    std::size_t num_dual_ = 0;
};

/// Per-diamond scalars (r^D, fluxes) and vectors (gradients).
using DiamondScalars = std::vector<double>;
using DiamondVectors = std::vector<Vec2>;

} // namespace ddfv
