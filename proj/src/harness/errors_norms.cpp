#include "ddfv/harness.hpp"

#include <algorithm>
#include <cmath>

namespace ddfv {

double error_u_at(const DDFVMesh& mesh, const DiscreteField& u, const SpaceTimeFunction& exact, double t)
{
    double s = 0.0;
    for (Index i = 0; i < mesh.num_unknowns(); ++i) {
        if (mesh.is_boundary(i))
            continue;
        const double e = u[i] - exact(mesh.center(i), t);
        s += mesh.measure(i) * e * e;
    }
    return std::sqrt(0.5 * s);
}

double error_gradient_sq_at(const DDFVMesh& mesh, const DiscreteField& u, const SpaceTimeGradient& grad, double t)
{
    double s = 0.0;
    const auto& ds = mesh.diamonds();
    for (const auto& d : ds) {
        const Vec2 e = grad_diamond(d, u[d.k], u[d.l], u[d.ks], u[d.ls]) - grad(d.xd, t);
        s += d.m_d * dot(e, e);
    }
    return s;
}

double primal_dual_gap_sq(const DDFVMesh& mesh, const DiscreteField& u)
{
    double s = 0.0;
    for (const auto& o : mesh.overlaps()) {
        const double e = u[o.k] - u[o.ks];
        s += o.area * e * e;
    }
    return s;
}

double error_u(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, const std::vector<double>& times,
               const SpaceTimeFunction& exact)
{
    double m = 0.0;
    for (std::size_t n = 0; n < traj.size(); ++n)
        m = std::max(m, error_u_at(mesh, traj[n], exact, times[n]));
    return m;
}

double error_gradient(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, const std::vector<double>& times,
                      double dt, const SpaceTimeGradient& grad)
{
    double s = 0.0;
    for (std::size_t n = 0; n < traj.size(); ++n)
        s += dt * error_gradient_sq_at(mesh, traj[n], grad, times[n]);
    return std::sqrt(s);
}

double norm_primal_dual_gap(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, double dt)
{
    double s = 0.0;
    for (const auto& u : traj)
        s += dt * primal_dual_gap_sq(mesh, u);
    return std::sqrt(s);
}

ErrorAccumulator::ErrorAccumulator(const DDFVMesh& mesh, const TestCase& test, double dt)
    : mesh_(&mesh), case_(&test), dt_(dt)
{
}

void ErrorAccumulator::add(const DiscreteField& u, double t)
{
    if (case_->has_exact()) {
        erru_ = std::max(erru_, error_u_at(*mesh_, u, case_->exact, t));
        errgu_sq_ += dt_ * error_gradient_sq_at(*mesh_, u, case_->exact_gradient, t);
    }
    gap_sq_ += dt_ * primal_dual_gap_sq(*mesh_, u);
}

double ErrorAccumulator::errgu() const { return std::sqrt(errgu_sq_); }
double ErrorAccumulator::normu() const { return std::sqrt(gap_sq_); }

} // namespace ddfv
