#pragma once

#include "ddfv/geometry.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace ddfv {

using Index = std::size_t;

/// Polygonal partition of a connected domain: vertex coordinates and
/// counter-clockwise vertex loops.
class PrimalMesh {
public:
    PrimalMesh() = default;

    /// Validates the cell list and derives the boundary edges.
    /// Throws MeshError on non-manifold edges, non-simple or negatively
    /// oriented cells, unused vertices or a disconnected domain.
    PrimalMesh(std::vector<Point> vertices, std::vector<std::vector<Index>> cells);

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const std::vector<std::vector<Index>>& cells() const noexcept { return cells_; }
    /// Edges with exactly one incident cell, oriented as in that cell.
    const std::vector<std::array<Index, 2>>& boundary_edges() const noexcept { return boundary_edges_; }

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_cells() const noexcept { return cells_.size(); }

    std::vector<Point> cell_polygon(Index c) const;

private:
    std::vector<Point> vertices_;
    std::vector<std::vector<Index>> cells_;
    std::vector<std::array<Index, 2>> boundary_edges_;
};

bool operator==(const PrimalMesh& a, const PrimalMesh& b);

// ---------------------------------------------------------------------------
// generators on the unit square
// ---------------------------------------------------------------------------

/// n x n uniform grid of (0,1)^2.
PrimalMesh gen_uniform_quad(int n);

/// Uniform grid with the smooth displacement
///   (x, y) -> (x + a sin(2 pi x) sin(2 pi y), y + a sin(2 pi x) sin(2 pi y)).
/// Requires n >= 2 and 0 <= a < 0.25.
PrimalMesh gen_quad_fvca(int n, double amplitude = 0.1);

/// Layered zigzag (Kershaw-type) grid. The square is cut into max(1, n/4)
/// horizontal bands; inside each band the vertical grid lines are sheared
/// sideways and back, with zigzag slope 4 * distortion * (1 - |2x - 1|).
/// Requires n >= 2 and 0 <= distortion < 0.25.
PrimalMesh gen_kershaw(int n, double distortion = 0.12);

enum class MeshFamily { Uniform, Quad, Kershaw };

MeshFamily parse_family(const std::string& name);
std::string to_string(MeshFamily family);

/// Generator dispatch with the default distortion of each family.
PrimalMesh generate(MeshFamily family, int n);

// ---------------------------------------------------------------------------
// text format
//
//   # comment
//   vertices N
//   x y            (N lines)
//   cells M
//   k i1 ... ik    (M lines, 0-based)
// ---------------------------------------------------------------------------

struct MeshReadResult {
    PrimalMesh mesh;
    std::vector<std::string> warnings;
};

/// Parses the text format. Clockwise cells are reoriented and reported in
/// the warnings. Throws ParseError (with line number) or MeshError.
MeshReadResult parse_mesh(const std::string& text);
MeshReadResult read_mesh(const std::filesystem::path& path);

std::string format_mesh(const PrimalMesh& mesh);
void write_mesh(const PrimalMesh& mesh, const std::filesystem::path& path);

} // namespace ddfv
