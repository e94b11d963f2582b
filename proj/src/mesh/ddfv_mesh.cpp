#include "ddfv/ddfv_mesh.hpp"

#include "ddfv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ddfv {

namespace {

[[noreturn]] void non_convex(const std::string& what) { throw MeshError(MeshError::Kind::NonConvexDiamond, what); }

} // namespace

Point Diamond::barycenter() const
{
    // split along sigma into (K, K*, L*) and (L, L*, K*)
    const double a1 = m_dk;
    const double a2 = m_dl;
    const Point c1 = triangle_centroid(xk, xks, xls);
    if (a2 == 0.0)
        return c1;
    const Point c2 = triangle_centroid(xl, xls, xks);
    return (a1 * c1 + a2 * c2) / (a1 + a2);
}

Diamond make_diamond(const Point& xk, const Point& xl, const Point& xks, const Point& xls, bool boundary)
{
    Diamond d;
    d.xk = xk;
    d.xl = xl;
    d.xks = xks;
    d.xls = xls;
    d.boundary = boundary;

    const Vec2 dual_diag = xl - xk;    // sigma*
    const Vec2 primal_diag = xls - xks; // sigma
    d.m_sigma = norm(primal_diag);
    d.m_sigma_star = norm(dual_diag);
    if (d.m_sigma == 0.0 || d.m_sigma_star == 0.0)
        non_convex("diamond with a zero-length diagonal");
    d.tau_ks_ls = primal_diag / d.m_sigma;
    d.tau_k_l = dual_diag / d.m_sigma_star;

    const double det = cross(dual_diag, primal_diag);
    d.sin_alpha = std::abs(det) / (d.m_sigma * d.m_sigma_star);
    if (!(d.sin_alpha > kMinSinAlpha))
        non_convex("diamond with sin(alpha) <= 1e-10");

    // x_K + t (x_L - x_K) = x_K* + s (x_L* - x_K*)
    const Vec2 r = xks - xk;
    const double t = cross(r, primal_diag) / det;
    const double s = cross(r, dual_diag) / det;
    constexpr double eps = 1e-12;
    const bool t_ok = boundary ? std::abs(t - 1.0) <= 1e-9 : (t > eps && t < 1.0 - eps);
    if (!t_ok || !(s > eps && s < 1.0 - eps))
        non_convex("primal edge and dual edge do not intersect");
    d.xd = boundary ? xl : xk + t * dual_diag;

    // orientation-free normals: n_sigma_K points to the L side, n_sigma*_K* to the L* side
    d.n_sigma_k = dot(rot_ccw(d.tau_ks_ls), dual_diag) > 0.0 ? rot_ccw(d.tau_ks_ls) : rot_cw(d.tau_ks_ls);
    d.n_sigma_star_k = dot(rot_cw(d.tau_k_l), primal_diag) > 0.0 ? rot_cw(d.tau_k_l) : rot_ccw(d.tau_k_l);

    d.m_d = 0.5 * d.m_sigma * d.m_sigma_star * d.sin_alpha;
    d.m_dk = triangle_area(xk, xks, xls);
    d.m_dl = boundary ? 0.0 : triangle_area(xl, xls, xks);
    d.m_dks = triangle_area(xks, xk, xl);
    d.m_dls = triangle_area(xls, xl, xk);

    const Point pts[4] = {xk, xl, xks, xls};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            d.diameter = std::max(d.diameter, distance(pts[i], pts[j]));
    return d;
}

double DDFVMesh::boundary_edge_length(Index i) const
{
    const auto& e = boundary_edge(i);
    return distance(primal_.vertices()[e[0]], primal_.vertices()[e[1]]);
}

std::vector<Point> DDFVMesh::dual_polygon(Index i) const
{
    const Point c = centers_[i];
    std::vector<Index> around;
    for (Index d : diamonds_of(i)) {
        around.push_back(diamonds_[d].k);
        around.push_back(diamonds_[d].l);
    }
    std::sort(around.begin(), around.end());
    around.erase(std::unique(around.begin(), around.end()), around.end());

    std::vector<std::pair<double, Point>> ring;
    for (Index j : around) {
        const Vec2 v = centers_[j] - c;
        ring.emplace_back(std::atan2(v.y, v.x), centers_[j]);
    }
    std::sort(ring.begin(), ring.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Point> poly;
    if (is_boundary_dual(i)) {
        // the exterior of the domain is the widest angular gap; start right after it
        std::size_t start = 0;
        double widest = -1.0;
        for (std::size_t j = 0; j < ring.size(); ++j) {
            const double prev = j == 0 ? ring.back().first - 2.0 * std::numbers::pi : ring[j - 1].first;
            const double gap = ring[j].first - prev;
            if (gap > widest) {
                widest = gap;
                start = j;
            }
        }
        poly.push_back(c);
        for (std::size_t j = 0; j < ring.size(); ++j)
            poly.push_back(ring[(start + j) % ring.size()].second);
    } else {
        for (const auto& [angle, p] : ring)
            poly.push_back(p);
    }
    return poly;
}

DDFVMesh build_ddfv(const PrimalMesh& primal)
{
    DDFVMesh m;
    m.primal_ = primal;
    m.num_primal_ = primal.num_cells();
    m.num_boundary_ = primal.boundary_edges().size();
    m.num_dual_ = primal.num_vertices();
    const std::size_t n = m.num_unknowns();
    const Index boff = m.boundary_offset();
    const Index doff = m.dual_offset();
    const auto& verts = primal.vertices();

    m.centers_.resize(n);
    m.measures_.assign(n, 0.0);
    m.boundary_vertex_.assign(m.num_dual_, false);

    for (Index c = 0; c < m.num_primal_; ++c) {
        const auto poly = primal.cell_polygon(c);
        m.centers_[c] = polygon_centroid(poly);
        m.measures_[c] = polygon_signed_area(poly);
    }
    std::map<std::pair<Index, Index>, Index> boundary_of_edge;
    for (Index b = 0; b < m.num_boundary_; ++b) {
        const auto& e = primal.boundary_edges()[b];
        m.centers_[boff + b] = 0.5 * (verts[e[0]] + verts[e[1]]);
        m.boundary_vertex_[e[0]] = true;
        m.boundary_vertex_[e[1]] = true;
        boundary_of_edge[{std::min(e[0], e[1]), std::max(e[0], e[1])}] = b;
        m.perimeter_ += distance(verts[e[0]], verts[e[1]]);
    }
    for (Index v = 0; v < m.num_dual_; ++v)
        m.centers_[doff + v] = verts[v];

    // One diamond per edge, in order of first appearance. For the first
    // incident cell K with CCW edge a->b, K* = b and L* = a so that
    // (tau_K*L*, n_sigma_K) is a direct basis.
    struct EdgeRecord {
        Index k, ks, ls;
        std::optional<Index> l;
    };
    std::vector<EdgeRecord> records;
    std::map<std::pair<Index, Index>, Index> record_of_edge;
    for (Index c = 0; c < m.num_primal_; ++c) {
        const auto& cell = primal.cells()[c];
        for (std::size_t i = 0; i < cell.size(); ++i) {
            const Index a = cell[i];
            const Index b = cell[(i + 1) % cell.size()];
            const std::pair<Index, Index> key{std::min(a, b), std::max(a, b)};
            auto it = record_of_edge.find(key);
            if (it == record_of_edge.end()) {
                record_of_edge.emplace(key, records.size());
                records.push_back({c, doff + b, doff + a, std::nullopt});
            } else {
                records[it->second].l = c;
            }
        }
    }

    std::map<std::pair<Index, Index>, double> overlap;
    m.diamonds_.reserve(records.size());
    for (const auto& rec : records) {
        const bool boundary = !rec.l.has_value();
        Index l = 0;
        if (boundary) {
            const Index a = rec.ls - doff;
            const Index b = rec.ks - doff;
            l = boff + boundary_of_edge.at({std::min(a, b), std::max(a, b)});
        } else {
            l = *rec.l;
        }
        Diamond d;
        try {
            d = make_diamond(m.centers_[rec.k], m.centers_[l], m.centers_[rec.ks], m.centers_[rec.ls], boundary);
        } catch (const MeshError& e) {
            throw MeshError(e.kind(), std::string(e.what()) + " (edge between vertices " + std::to_string(rec.ks - doff) +
                                          " and " + std::to_string(rec.ls - doff) + ")");
        }
        d.k = rec.k;
        d.l = l;
        d.ks = rec.ks;
        d.ls = rec.ls;

        overlap[{d.k, d.ks}] += triangle_area(d.xk, d.xd, d.xks);
        overlap[{d.k, d.ls}] += triangle_area(d.xk, d.xd, d.xls);
        if (!boundary) {
            overlap[{d.l, d.ks}] += triangle_area(d.xl, d.xd, d.xks);
            overlap[{d.l, d.ls}] += triangle_area(d.xl, d.xd, d.xls);
        }
        m.measures_[d.ks] += d.m_dks;
        m.measures_[d.ls] += d.m_dls;
        m.size_ = std::max(m.size_, d.diameter);
        m.diamonds_.push_back(d);
    }
    for (const auto& [key, area] : overlap)
        m.overlaps_.push_back({key.first, key.second, area});

    // unknown -> diamonds (CSR)
    std::vector<std::vector<Index>> lists(n);
    for (Index di = 0; di < m.diamonds_.size(); ++di) {
        const auto& d = m.diamonds_[di];
        for (Index i : {d.k, d.l, d.ks, d.ls})
            lists[i].push_back(di);
    }
    m.cell_diamond_offsets_.assign(n + 1, 0);
    for (Index i = 0; i < n; ++i)
        m.cell_diamond_offsets_[i + 1] = m.cell_diamond_offsets_[i] + lists[i].size();
    m.cell_diamonds_.reserve(m.cell_diamond_offsets_[n]);
    for (const auto& list : lists)
        m.cell_diamonds_.insert(m.cell_diamonds_.end(), list.begin(), list.end());

    for (Index c = 0; c < m.num_primal_; ++c)
        m.area_ += m.measures_[c];
    return m;
}

} // namespace ddfv
