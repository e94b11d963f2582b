#include "ddfv/operators.hpp"

#include "ddfv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ddfv {

Vec2 grad_diamond(const Diamond& d, double uk, double ul, double uks, double uls)
{
    return (d.m_sigma * (ul - uk) * d.n_sigma_k + d.m_sigma_star * (uls - uks) * d.n_sigma_star_k) / (2.0 * d.m_d);
}

Vec2 grad_diamond_sin(const Diamond& d, double uk, double ul, double uks, double uls)
{
    return ((ul - uk) / d.m_sigma_star * d.n_sigma_k + (uls - uks) / d.m_sigma * d.n_sigma_star_k) / d.sin_alpha;
}

DiamondVectors grad_d(const DDFVMesh& mesh, const DiscreteField& u)
{
    DiamondVectors g;
    g.reserve(mesh.num_diamonds());
    for (const auto& d : mesh.diamonds())
        g.push_back(grad_diamond(d, u[d.k], u[d.l], u[d.ks], u[d.ls]));
    return g;
}

DiscreteField divergence(const DDFVMesh& mesh, const DiamondVectors& xi)
{
    DiscreteField out(mesh);
    const auto& ds = mesh.diamonds();
    for (Index i = 0; i < ds.size(); ++i) {
        const auto& d = ds[i];
        const double fs = d.m_sigma * dot(xi[i], d.n_sigma_k);
        const double fd = d.m_sigma_star * dot(xi[i], d.n_sigma_star_k);
        out[d.k] += fs;
        if (!d.boundary)
            out[d.l] -= fs;
        out[d.ks] += fd;
        out[d.ls] -= fd;
    }
    for (Index i = 0; i < out.size(); ++i)
        out[i] = mesh.is_boundary(i) ? 0.0 : out[i] / mesh.measure(i);
    return out;
}

double reconstruct(const Diamond& d, const DiscreteField& u)
{
    return 0.25 * (u[d.k] + u[d.l] + u[d.ks] + u[d.ls]);
}

DiamondScalars reconstruct_diamond(const DDFVMesh& mesh, const DiscreteField& u)
{
    DiamondScalars r;
    r.reserve(mesh.num_diamonds());
    for (const auto& d : mesh.diamonds())
        r.push_back(reconstruct(d, u));
    return r;
}

std::array<double, 2> delta(const Diamond& d, const DiscreteField& u)
{
    return {u[d.k] - u[d.l], u[d.ks] - u[d.ls]};
}

double bracket_t(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& v)
{
    double s = 0.0;
    for (Index i = 0; i < mesh.num_unknowns(); ++i)
        if (!mesh.is_boundary(i))
            s += mesh.measure(i) * u[i] * v[i];
    return 0.5 * s;
}

double inner_lambda(const DDFVMesh& mesh, const TensorSpec& lambda, const DiamondVectors& xi,
                    const DiamondVectors& phi)
{
    double s = 0.0;
    const auto& ds = mesh.diamonds();
    for (Index i = 0; i < ds.size(); ++i)
        s += ds[i].m_d * dot(xi[i], lambda.diamond_average(ds[i]) * phi[i]);
    return s;
}

LocalMatrix LocalMatrix::dominant_diagonal() const
{
    return {std::abs(a_ss) + std::abs(a_sd), 0.0, std::abs(a_dd) + std::abs(a_sd)};
}

double LocalMatrix::cond2() const
{
    const auto [lo, hi] = Mat2{a_ss, a_sd, a_dd}.eigenvalues();
    if (!(lo > 0.0))
        return std::numeric_limits<double>::infinity();
    return hi / lo;
}

LocalMatrix local_matrix(const Diamond& d, const Mat2& lambda_d)
{
    const double c = 1.0 / (4.0 * d.m_d);
    const Vec2 ln = lambda_d * d.n_sigma_k;
    return {c * d.m_sigma * d.m_sigma * dot(ln, d.n_sigma_k),
            c * d.m_sigma * d.m_sigma_star * dot(ln, d.n_sigma_star_k),
            c * d.m_sigma_star * d.m_sigma_star * dot(lambda_d * d.n_sigma_star_k, d.n_sigma_star_k)};
}

std::vector<LocalMatrix> local_matrices(const DDFVMesh& mesh, const TensorSpec& lambda)
{
    std::vector<LocalMatrix> out;
    out.reserve(mesh.num_diamonds());
    for (const auto& d : mesh.diamonds()) {
        const Mat2 ld = lambda.diamond_average(d);
        const auto [lo, hi] = ld.eigenvalues();
        if (!(lo > 0.0) || !std::isfinite(hi))
            throw NotSPD("diamond tensor is not symmetric positive definite");
        out.push_back(local_matrix(d, ld));
    }
    return out;
}

void check_beta(double beta)
{
    if (!(beta > 0.0 && beta < 2.0))
        throw BadBeta("penalization exponent beta must lie in the open interval (0,2), got " + std::to_string(beta));
}

double penalization_bracket(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& v, double beta)
{
    check_beta(beta);
    double s = 0.0;
    for (const auto& o : mesh.overlaps())
        s += o.area * (u[o.k] - u[o.ks]) * (v[o.k] - v[o.ks]);
    return 0.5 * s / std::pow(mesh.size(), beta);
}

DiscreteField penalize(const DDFVMesh& mesh, const DiscreteField& u, double beta)
{
    check_beta(beta);
    DiscreteField out(mesh);
    for (const auto& o : mesh.overlaps()) {
        const double jump = o.area * (u[o.k] - u[o.ks]);
        out[o.k] += jump;
        out[o.ks] -= jump;
    }
    const double hb = std::pow(mesh.size(), beta);
    for (Index i = 0; i < out.size(); ++i)
        out[i] = mesh.is_boundary(i) ? 0.0 : out[i] / (mesh.measure(i) * hb);
    return out;
}

double norm_p(const DDFVMesh& mesh, const DiscreteField& u, double p)
{
    if (std::isinf(p)) {
        double m = 0.0;
        for (Index i = 0; i < mesh.num_unknowns(); ++i)
            if (!mesh.is_boundary(i))
                m = std::max(m, std::abs(u[i]));
        return m;
    }
    double s = 0.0;
    for (Index i = 0; i < mesh.num_unknowns(); ++i)
        if (!mesh.is_boundary(i))
            s += mesh.measure(i) * std::pow(std::abs(u[i]), p);
    return std::pow(0.5 * s, 1.0 / p);
}

double grad_norm_p(const DDFVMesh& mesh, const DiscreteField& u, double p)
{
    const auto g = grad_d(mesh, u);
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : g)
            m = std::max(m, norm(v));
        return m;
    }
    double s = 0.0;
    for (Index i = 0; i < g.size(); ++i)
        s += mesh.diamond(i).m_d * std::pow(norm(g[i]), p);
    return std::pow(s, 1.0 / p);
}

double norm_1p(const DDFVMesh& mesh, const DiscreteField& u, double p)
{
    if (std::isinf(p))
        return norm_p(mesh, u, p) + grad_norm_p(mesh, u, p);
    return std::pow(std::pow(norm_p(mesh, u, p), p) + std::pow(grad_norm_p(mesh, u, p), p), 1.0 / p);
}

double norm_1inf_star(const DDFVMesh& mesh, const DiscreteField& u, double beta)
{
    const double inf = std::numeric_limits<double>::infinity();
    return norm_1p(mesh, u, inf) + std::sqrt(penalization_bracket(mesh, u, u, beta));
}

double norm_q_1p(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, double dt, double q, double p)
{
    double s = 0.0;
    for (const auto& u : traj)
        s += dt * std::pow(norm_1p(mesh, u, p), q);
    return std::pow(s, 1.0 / q);
}

double norm_inf_1inf(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj)
{
    double m = 0.0;
    for (const auto& u : traj)
        m = std::max(m, norm_1p(mesh, u, std::numeric_limits<double>::infinity()));
    return m;
}

double norm_inf_0p(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, double p)
{
    double m = 0.0;
    for (const auto& u : traj)
        m = std::max(m, norm_p(mesh, u, p));
    return m;
}

BoundaryTrace trace_boundary(const DDFVMesh& mesh, const DiscreteField& u)
{
    BoundaryTrace t;
    double s = 0.0;
    for (Index b = 0; b < mesh.num_boundary(); ++b) {
        const Index i = mesh.boundary_offset() + b;
        t.values.push_back(u[i]);
        t.lengths.push_back(mesh.boundary_edge_length(i));
        s += t.lengths.back() * u[i] * u[i];
    }
    t.l2_norm = std::sqrt(s);
    return t;
}

} // namespace ddfv
