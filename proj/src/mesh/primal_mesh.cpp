#include "ddfv/primal_mesh.hpp"

#include "ddfv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>

namespace ddfv {

namespace {

using EdgeKey = std::pair<Index, Index>;

EdgeKey edge_key(Index a, Index b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

[[noreturn]] void fail(MeshError::Kind kind, const std::string& what) { throw MeshError(kind, what); }

} // namespace

PrimalMesh::PrimalMesh(std::vector<Point> vertices, std::vector<std::vector<Index>> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells))
{
    if (cells_.empty())
        fail(MeshError::Kind::Validation, "mesh has no cells");

    std::vector<bool> used(vertices_.size(), false);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& cell = cells_[c];
        if (cell.size() < 3)
            fail(MeshError::Kind::Validation, "cell " + std::to_string(c) + " has fewer than 3 vertices");
        for (Index v : cell) {
            if (v >= vertices_.size())
                fail(MeshError::Kind::Validation, "cell " + std::to_string(c) + " references missing vertex " + std::to_string(v));
            used[v] = true;
        }
        const auto poly = cell_polygon(c);
        if (!polygon_is_simple(poly))
            fail(MeshError::Kind::Validation, "cell " + std::to_string(c) + " is not a simple polygon");
        if (polygon_signed_area(poly) <= 0.0)
            fail(MeshError::Kind::NegativeArea, "cell " + std::to_string(c) + " has non-positive signed area");
    }
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v])
            fail(MeshError::Kind::Validation, "vertex " + std::to_string(v) + " belongs to no cell");

    // edge -> incident (cell, directed a->b)
    struct Incidence {
        std::vector<Index> cells;
        std::vector<Index> from;
    };
    std::map<EdgeKey, Incidence> edges;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& cell = cells_[c];
        for (std::size_t i = 0; i < cell.size(); ++i) {
            const Index a = cell[i];
            const Index b = cell[(i + 1) % cell.size()];
            auto& inc = edges[edge_key(a, b)];
            inc.cells.push_back(c);
            inc.from.push_back(a);
        }
    }
    for (const auto& [key, inc] : edges) {
        if (inc.cells.size() > 2)
            fail(MeshError::Kind::NonManifoldEdge,
                 "edge (" + std::to_string(key.first) + ", " + std::to_string(key.second) + ") shared by more than two cells");
        if (inc.cells.size() == 2 && inc.from[0] == inc.from[1])
            fail(MeshError::Kind::NonManifoldEdge,
                 "cells " + std::to_string(inc.cells[0]) + " and " + std::to_string(inc.cells[1]) + " overlap along an edge");
    }

    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& cell = cells_[c];
        for (std::size_t i = 0; i < cell.size(); ++i) {
            const Index a = cell[i];
            const Index b = cell[(i + 1) % cell.size()];
            if (edges.at(edge_key(a, b)).cells.size() == 1)
                boundary_edges_.push_back({a, b});
        }
    }

    // connectivity through interior edges
    std::vector<std::vector<Index>> neighbours(cells_.size());
    for (const auto& [key, inc] : edges) {
        if (inc.cells.size() == 2) {
            neighbours[inc.cells[0]].push_back(inc.cells[1]);
            neighbours[inc.cells[1]].push_back(inc.cells[0]);
        }
    }
    std::vector<bool> seen(cells_.size(), false);
    std::queue<Index> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        const Index c = todo.front();
        todo.pop();
        for (Index n : neighbours[c]) {
            if (!seen[n]) {
                seen[n] = true;
                ++reached;
                todo.push(n);
            }
        }
    }
    if (reached != cells_.size())
        fail(MeshError::Kind::Validation, "domain is not connected");
}

std::vector<Point> PrimalMesh::cell_polygon(Index c) const
{
    std::vector<Point> poly;
    poly.reserve(cells_[c].size());
    for (Index v : cells_[c])
        poly.push_back(vertices_[v]);
    return poly;
}

bool operator==(const PrimalMesh& a, const PrimalMesh& b)
{
    return a.vertices() == b.vertices() && a.cells() == b.cells();
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

namespace {

template <class Map>
PrimalMesh structured(int n, Map&& map)
{
    const auto np = static_cast<Index>(n + 1);
    std::vector<Point> vertices;
    vertices.reserve(np * np);
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            vertices.push_back(map(static_cast<double>(i) / n, static_cast<double>(j) / n));

    auto id = [np](int i, int j) { return static_cast<Index>(j) * np + static_cast<Index>(i); };
    std::vector<std::vector<Index>> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            std::vector<Index> cell{id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)};
            std::vector<Point> poly{vertices[cell[0]], vertices[cell[1]], vertices[cell[2]], vertices[cell[3]]};
            if (polygon_signed_area(poly) <= 0.0 || !polygon_is_simple(poly))
                fail(MeshError::Kind::DegenerateCell,
                     "cell (" + std::to_string(i) + ", " + std::to_string(j) + ") is inverted");
            cells.push_back(std::move(cell));
        }
    }
    return PrimalMesh(std::move(vertices), std::move(cells));
}

void check_distorted_args(int n, double amount, const char* name)
{
    if (n < 2)
        throw BadParameter(std::string(name) + ": n must be >= 2");
    if (!(amount >= 0.0 && amount < 0.25))
        throw BadParameter(std::string(name) + ": distortion must lie in [0, 0.25)");
}

} // namespace

PrimalMesh gen_uniform_quad(int n)
{
    if (n < 1)
        throw BadParameter("uniform: n must be >= 1");
    return structured(n, [](double x, double y) { return Point{x, y}; });
}

PrimalMesh gen_quad_fvca(int n, double amplitude)
{
    check_distorted_args(n, amplitude, "quad");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return structured(n, [amplitude](double x, double y) {
        // sin is not exactly zero at 1; keep the boundary in place
        const bool on_boundary = x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0;
        const double s = on_boundary ? 0.0 : amplitude * std::sin(two_pi * x) * std::sin(two_pi * y);
        return Point{x + s, y + s};
    });
}

PrimalMesh gen_kershaw(int n, double distortion)
{
    check_distorted_args(n, distortion, "kershaw");
    const int bands = std::max(1, n / 4);
    const double band = 1.0 / bands;
    return structured(n, [=](double x, double y) {
        const double phase = std::fmod(y, band);
        const double ramp = 0.5 * band - std::abs(phase - 0.5 * band); // distance to nearest band edge
        const double tent = 1.0 - std::abs(2.0 * x - 1.0);
        const bool on_boundary = x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0;
        const double shift = on_boundary ? 0.0 : 4.0 * distortion * tent * ramp;
        return Point{x + shift, y};
    });
}

MeshFamily parse_family(const std::string& name)
{
    if (name == "uniform")
        return MeshFamily::Uniform;
    if (name == "quad")
        return MeshFamily::Quad;
    if (name == "kershaw")
        return MeshFamily::Kershaw;
    throw BadParameter("unknown mesh family '" + name + "' (expected uniform, quad or kershaw)");
}

std::string to_string(MeshFamily family)
{
    switch (family) {
    case MeshFamily::Uniform: return "uniform";
    case MeshFamily::Quad: return "quad";
    case MeshFamily::Kershaw: return "kershaw";
    }
    return "unknown";
}

PrimalMesh generate(MeshFamily family, int n)
{
    switch (family) {
    case MeshFamily::Uniform: return gen_uniform_quad(n);
    case MeshFamily::Quad: return gen_quad_fvca(n);
    case MeshFamily::Kershaw: return gen_kershaw(n);
    }
    throw BadParameter("unknown mesh family");
}

} // namespace ddfv
