#pragma once

#include "ddfv/geometry.hpp"
#include "ddfv/primal_mesh.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ddfv {

class TensorSpec;

/// Tolerance on sin(alpha_D) below which a diamond is rejected.
inline constexpr double kMinSinAlpha = 1e-10;

/// Geometry of a diamond D_{sigma,sigma*} with diagonals sigma = (x_K*, x_L*)
/// and sigma* = (x_K, x_L). Indices refer to the unknown layout of DDFVMesh.
struct Diamond {
    Index k = 0;  ///< interior primal cell
    Index l = 0;  ///< interior primal cell, or degenerate boundary cell
    Index ks = 0; ///< dual cell (vertex) K*
    Index ls = 0; ///< dual cell (vertex) L*
    bool boundary = false;

    Point xk, xl, xks, xls;
    Point xd; ///< intersection of sigma and sigma*

    double m_sigma = 0.0;      ///< |x_L* - x_K*|
    double m_sigma_star = 0.0; ///< |x_L - x_K|
    double m_d = 0.0;
    double sin_alpha = 0.0;
    double diameter = 0.0;

    Vec2 n_sigma_k;      ///< unit normal to sigma, outward K
    Vec2 n_sigma_star_k; ///< unit normal to sigma*, outward K*
    Vec2 tau_ks_ls;      ///< unit tangent to sigma, from K* to L*
    Vec2 tau_k_l;        ///< unit tangent to sigma*, from K to L

    // quarter diamonds
    double m_dk = 0.0;
    double m_dl = 0.0; ///< zero for boundary diamonds
    double m_dks = 0.0;
    double m_dls = 0.0;

    /// Area-weighted centroid of the diamond.
    Point barycenter() const;
};

/// Builds the geometry of one diamond from its four vertices. x_D must lie
/// on both diagonals (for a boundary diamond x_L lies on sigma). Throws
/// MeshError(NonConvexDiamond) otherwise.
Diamond make_diamond(const Point& xk, const Point& xl, const Point& xks, const Point& xls, bool boundary = false);

/// Area of K intersected with K*, accumulated over quarter diamonds.
struct Overlap {
    Index k = 0;
    Index ks = 0;
    double area = 0.0;
};

/// Immutable DDFV geometric database.
///
/// Unknowns are laid out as
///   [0, P)           interior primal cells K
///   [P, P + B)       degenerate boundary cells L (one per boundary edge)
///   [P + B, P + B + V) dual cells K*, one per primal vertex
class DDFVMesh {
public:
    std::size_t num_primal() const noexcept { return num_primal_; }
    std::size_t num_boundary() const noexcept { return num_boundary_; }
    std::size_t num_dual() const noexcept { return num_dual_; }
    std::size_t num_unknowns() const noexcept { return num_primal_ + num_boundary_ + num_dual_; }
    std::size_t num_diamonds() const noexcept { return diamonds_.size(); }

    Index boundary_offset() const noexcept { return num_primal_; }
    Index dual_offset() const noexcept { return num_primal_ + num_boundary_; }
    bool is_primal(Index i) const noexcept { return i < num_primal_; }
    bool is_boundary(Index i) const noexcept { return i >= num_primal_ && i < dual_offset(); }
    bool is_dual(Index i) const noexcept { return i >= dual_offset(); }
    /// Dual cell attached to a vertex on the boundary of the domain.
    bool is_boundary_dual(Index i) const noexcept { return is_dual(i) && boundary_vertex_[i - dual_offset()]; }

    /// x_K (centroid), x_L (edge midpoint) or x_K* (vertex).
    const Point& center(Index i) const { return centers_[i]; }
    std::span<const Point> centers() const noexcept { return centers_; }
    /// m_K, m_K*, and zero for boundary cells.
    double measure(Index i) const { return measures_[i]; }
    std::span<const double> measures() const noexcept { return measures_; }

    const std::vector<Diamond>& diamonds() const noexcept { return diamonds_; }
    const Diamond& diamond(Index d) const { return diamonds_[d]; }
    /// Diamonds touching unknown i.
    std::span<const Index> diamonds_of(Index i) const
    {
        return {cell_diamonds_.data() + cell_diamond_offsets_[i],
                cell_diamonds_.data() + cell_diamond_offsets_[i + 1]};
    }
    const std::vector<Overlap>& overlaps() const noexcept { return overlaps_; }

    const PrimalMesh& primal() const noexcept { return primal_; }
    /// Boundary edge (vertex pair) of degenerate cell i.
    const std::array<Index, 2>& boundary_edge(Index i) const { return primal_.boundary_edges()[i - num_primal_]; }
    double boundary_edge_length(Index i) const;

    /// size(T) = max diamond diameter.
    double size() const noexcept { return size_; }
    double domain_area() const noexcept { return area_; }
    double perimeter() const noexcept { return perimeter_; }

    /// Vertices of dual cell i, ordered by angle around x_K*. For a boundary
    /// vertex the polygon starts at x_K* itself.
    std::vector<Point> dual_polygon(Index i) const;

    friend DDFVMesh build_ddfv(const PrimalMesh& primal);

private:
    PrimalMesh primal_;
    std::size_t num_primal_ = 0;
    std::size_t num_boundary_ = 0;
    std::size_t num_dual_ = 0;
    std::vector<Point> centers_;
    std::vector<double> measures_;
    std::vector<bool> boundary_vertex_;
    std::vector<Diamond> diamonds_;
    std::vector<Index> cell_diamond_offsets_;
    std::vector<Index> cell_diamonds_;
    std::vector<Overlap> overlaps_;
    double size_ = 0.0;
    double area_ = 0.0;
    double perimeter_ = 0.0;
};

/// Throws MeshError(NonConvexDiamond) when a diamond has sigma and sigma*
/// disjoint or sin(alpha_D) <= kMinSinAlpha.
DDFVMesh build_ddfv(const PrimalMesh& primal);

struct QualityReport {
    std::vector<double> theta;       ///< theta_D
    std::vector<double> theta_tilde; ///< theta~_D
    double theta_star = 1.0;         ///< max over D of both factors
    double max_theta = 1.0;          ///< max of theta_D alone
    double max_theta_interior = 1.0; ///< max of theta_D over interior diamonds
    double min_sin_alpha = 1.0;
    double size = 0.0;
    std::size_t num_cells = 0;
    std::size_t num_boundary_edges = 0;
    std::size_t num_vertices = 0;
    std::size_t num_diamonds = 0;

    /// Filled when a tensor is supplied.
    std::optional<double> max_cond_a;
    std::optional<double> cond_bound; ///< 4 theta*^2 lambda^M / lambda_m
    bool cond_bound_holds = true;
};

QualityReport quality(const DDFVMesh& mesh, const TensorSpec* lambda = nullptr);

std::string format_quality(const QualityReport& report);

} // namespace ddfv
