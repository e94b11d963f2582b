#include "ddfv/scheme.hpp"

#include "ddfv/errors.hpp"

#include <cmath>
#include <string>

namespace ddfv {

void SchemeParams::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw BadParameter("time step dt must be positive");
    if (!(t_final > 0.0) || !std::isfinite(t_final))
        throw BadParameter("final time must be positive");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw BadParameter("stabilization kappa must be nonnegative");
    check_beta(beta);
    newton.validate();
}

int SchemeParams::num_steps() const
{
    return std::max(1, static_cast<int>(std::ceil(t_final / dt - 1e-9)));
}

double SchemeParams::effective_dt() const { return t_final / num_steps(); }

DiscreteField project_potential(const DDFVMesh& mesh, const ScalarFunction& v)
{
    DiscreteField out(mesh);
    for (Index i = 0; i < mesh.num_unknowns(); ++i)
        out[i] = v(mesh.center(i));
    return out;
}

DiscreteField cell_means(const DDFVMesh& mesh, const ScalarFunction& f)
{
    DiscreteField out(mesh);
    auto tri = [&](const Point& a, const Point& b, const Point& c) {
        return triangle_area(a, b, c) * f(triangle_centroid(a, b, c));
    };
    for (Index k = 0; k < mesh.num_primal(); ++k) {
        const auto poly = mesh.primal().cell_polygon(k);
        double s = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i)
            s += tri(mesh.center(k), poly[i], poly[(i + 1) % poly.size()]);
        out[k] = s;
    }
    for (const auto& d : mesh.diamonds()) {
        out[d.ks] += tri(d.xks, d.xk, d.xl);
        out[d.ls] += tri(d.xls, d.xk, d.xl);
    }
    for (Index i = 0; i < mesh.num_unknowns(); ++i)
        if (!mesh.is_boundary(i))
            out[i] /= mesh.measure(i);
    return out;
}

DiscreteField project_initial(const DDFVMesh& mesh, const ScalarFunction& u0)
{
    DiscreteField out = cell_means(mesh, u0);
    for (Index i = 0; i < mesh.num_unknowns(); ++i) {
        if (mesh.is_boundary(i))
            continue;
        const double mean = out[i];
        if (mean < -1e-14)
            throw NegativeInitialData("initial datum has negative mean " + std::to_string(mean) + " on cell " +
                                      std::to_string(i));
        out[i] = std::max(mean, 0.0);
    }
    return out;
}

Scheme::Scheme(const DDFVMesh& mesh, SchemeParams params, DiscreteField potential)
    : mesh_(&mesh), params_(std::move(params)), potential_(std::move(potential))
{
    params_.validate();
    if (!potential_.matches(mesh))
        throw BadParameter("potential field does not match the mesh");
    local_ = local_matrices(mesh, params_.lambda);
    h_beta_ = std::pow(mesh.size(), params_.beta);
}

double Scheme::weight(Index i) const { return mesh_->is_boundary(i) ? 0.0 : 0.5 * mesh_->measure(i); }

DiscreteField Scheme::chemical_potential(const DiscreteField& u) const
{
    DiscreteField g(*mesh_);
    for (Index i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0) || !std::isfinite(u[i]))
            throw NonPositiveState("state is not strictly positive at unknown " + std::to_string(i));
        g[i] = std::log(u[i]) + potential_[i];
    }
    return g;
}

DiscreteField Scheme::variational_residual(const DiscreteField& u_prev, const DiscreteField& u) const
{
    const DiscreteField g = chemical_potential(u);
    DiscreteField f(*mesh_);
    const double dt = params_.dt;
    for (Index i = 0; i < f.size(); ++i)
        f[i] = weight(i) * (u[i] - u_prev[i]) / dt;

    const auto& ds = mesh_->diamonds();
    for (Index di = 0; di < ds.size(); ++di) {
        const auto& d = ds[di];
        const double r = reconstruct(d, u);
        const auto a = local_[di].apply(delta(d, g));
        f[d.k] += r * a[0];
        f[d.l] -= r * a[0];
        f[d.ks] += r * a[1];
        f[d.ls] -= r * a[1];
    }
    if (params_.kappa > 0.0) {
        const double c = 0.5 * params_.kappa / h_beta_;
        for (const auto& o : mesh_->overlaps()) {
            const double p = c * o.area * (g[o.k] - g[o.ks]);
            f[o.k] += p;
            f[o.ks] -= p;
        }
    }
    return f;
}

SparseMatrix Scheme::variational_jacobian(const DiscreteField& u) const
{
    const DiscreteField g = chemical_potential(u);
    const std::size_t n = mesh_->num_unknowns();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n + 16 * mesh_->num_diamonds() + 4 * mesh_->overlaps().size());
    const double dt = params_.dt;
    for (Index i = 0; i < n; ++i)
        trip.emplace_back(static_cast<int>(i), static_cast<int>(i), weight(i) / dt);

    const auto& ds = mesh_->diamonds();
    for (Index di = 0; di < ds.size(); ++di) {
        const auto& d = ds[di];
        const auto& m = local_[di];
        const double r = reconstruct(d, u);
        const auto a = m.apply(delta(d, g));
        const Index idx[4] = {d.k, d.l, d.ks, d.ls};
        // d(delta g)/du_j for the two components
        const double inv[4] = {1.0 / u[d.k], 1.0 / u[d.l], 1.0 / u[d.ks], 1.0 / u[d.ls]};
        const double dd1[4] = {inv[0], -inv[1], 0.0, 0.0};
        const double dd2[4] = {0.0, 0.0, inv[2], -inv[3]};
        const double sign[4] = {1.0, -1.0, 1.0, -1.0};
        for (int row = 0; row < 4; ++row) {
            const bool first = row < 2;
            const double a_row = first ? a[0] : a[1];
            const double c1 = first ? m.a_ss : m.a_sd;
            const double c2 = first ? m.a_sd : m.a_dd;
            for (int col = 0; col < 4; ++col) {
                const double v = 0.25 * a_row + r * (c1 * dd1[col] + c2 * dd2[col]);
                trip.emplace_back(static_cast<int>(idx[row]), static_cast<int>(idx[col]), sign[row] * v);
            }
        }
    }
    if (params_.kappa > 0.0) {
        const double c = 0.5 * params_.kappa / h_beta_;
        for (const auto& o : mesh_->overlaps()) {
            const double pk = c * o.area / u[o.k];
            const double pks = c * o.area / u[o.ks];
            const int k = static_cast<int>(o.k);
            const int ks = static_cast<int>(o.ks);
            trip.emplace_back(k, k, pk);
            trip.emplace_back(k, ks, -pks);
            trip.emplace_back(ks, k, -pk);
            trip.emplace_back(ks, ks, pks);
        }
    }
    SparseMatrix jac(static_cast<int>(n), static_cast<int>(n));
    jac.setFromTriplets(trip.begin(), trip.end());
    jac.makeCompressed();
    return jac;
}

DiscreteField Scheme::residual(const DiscreteField& u_prev, const DiscreteField& u) const
{
    DiscreteField f = variational_residual(u_prev, u);
    for (Index i = 0; i < f.size(); ++i)
        f[i] = mesh_->is_boundary(i) ? -2.0 * f[i] : f[i] / weight(i);
    return f;
}

SparseMatrix Scheme::jacobian(const DiscreteField& u) const
{
    SparseMatrix jac = variational_jacobian(u);
    Vector scale(jac.rows());
    for (Index i = 0; i < static_cast<Index>(jac.rows()); ++i)
        scale[static_cast<Eigen::Index>(i)] = mesh_->is_boundary(i) ? -2.0 : 1.0 / weight(i);
    SparseMatrix out = scale.asDiagonal() * jac;
    out.makeCompressed();
    return out;
}

double Scheme::flux_form(const DiscreteField& u, const DiscreteField& f, const DiscreteField& psi) const
{
    double s = 0.0;
    const auto& ds = mesh_->diamonds();
    for (Index di = 0; di < ds.size(); ++di)
        s += reconstruct(ds[di], u) * local_[di].form(delta(ds[di], f), delta(ds[di], psi));
    return s;
}

double entropy_density(double s)
{
    if (s == 0.0)
        return 1.0;
    return s * std::log(s) - s + 1.0;
}

double energy(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& potential)
{
    double s = 0.0;
    for (Index i = 0; i < mesh.num_unknowns(); ++i)
        if (!mesh.is_boundary(i))
            s += mesh.measure(i) * (entropy_density(u[i]) + potential[i] * u[i]);
    return 0.5 * s;
}

double relative_energy(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& u_inf)
{
    double s = 0.0;
    for (Index i = 0; i < mesh.num_unknowns(); ++i) {
        if (mesh.is_boundary(i))
            continue;
        // u log(u/w) - u + w = w [(1+x) log1p(x) - x] with x = (u - w)/w
        const double w = u_inf[i];
        double term = w;
        if (u[i] > 0.0) {
            const double x = (u[i] - w) / w;
            term = w * ((1.0 + x) * std::log1p(x) - x);
        }
        s += mesh.measure(i) * term;
    }
    return 0.5 * s;
}

Dissipation dissipation(const Scheme& scheme, const DiscreteField& u)
{
    const auto& mesh = scheme.mesh();
    const DiscreteField g = scheme.chemical_potential(u);
    DiscreteField logu(mesh);
    for (Index i = 0; i < u.size(); ++i)
        logu[i] = std::log(u[i]);
    Dissipation out;
    const auto& ds = mesh.diamonds();
    for (Index di = 0; di < ds.size(); ++di) {
        const auto& d = ds[di];
        const double r = reconstruct(d, u);
        const auto& a = scheme.local()[di];
        const auto b = a.dominant_diagonal();
        const auto dg = delta(d, g);
        const auto dl = delta(d, logu);
        out.i += r * a.form(dg, dg);
        out.i_b += r * b.form(dg, dg);
        out.i_hat += r * b.form(dl, dl);
    }
    out.penalty = penalization_bracket(mesh, g, g, scheme.params().beta);
    return out;
}

double fisher_norm(const DDFVMesh& mesh, const TensorSpec& lambda, const DiscreteField& u)
{
    DiscreteField root(mesh);
    for (Index i = 0; i < u.size(); ++i)
        root[i] = std::sqrt(std::max(u[i], 0.0));
    const auto g = grad_d(mesh, root);
    return inner_lambda(mesh, lambda, g, g);
}

double primal_mass(const DDFVMesh& mesh, const DiscreteField& u)
{
    double s = 0.0;
    for (Index k = 0; k < mesh.num_primal(); ++k)
        s += mesh.measure(k) * u[k];
    return s;
}

double dual_mass(const DDFVMesh& mesh, const DiscreteField& u)
{
    double s = 0.0;
    for (Index i = mesh.dual_offset(); i < mesh.num_unknowns(); ++i)
        s += mesh.measure(i) * u[i];
    return s;
}

double mass(const DDFVMesh& mesh, const DiscreteField& u)
{
    return 0.5 * (primal_mass(mesh, u) + dual_mass(mesh, u));
}

DiscreteField stationary_state(const DDFVMesh& mesh, const DiscreteField& potential, double pmass, double dmass)
{
    if (!(pmass > 0.0) || !(dmass > 0.0))
        throw BadParameter("stationary state requires a positive mass");
    double zp = 0.0;
    double zd = 0.0;
    for (Index k = 0; k < mesh.num_primal(); ++k)
        zp += mesh.measure(k) * std::exp(-potential[k]);
    for (Index i = mesh.dual_offset(); i < mesh.num_unknowns(); ++i)
        zd += mesh.measure(i) * std::exp(-potential[i]);
    const double rho = pmass / zp;
    const double rho_star = dmass / zd;
    DiscreteField out(mesh);
    for (Index i = 0; i < mesh.num_unknowns(); ++i)
        out[i] = (mesh.is_dual(i) ? rho_star : rho) * std::exp(-potential[i]);
    return out;
}

} // namespace ddfv
