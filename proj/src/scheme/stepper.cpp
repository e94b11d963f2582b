#include "ddfv/stepper.hpp"

#include "ddfv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace ddfv {

namespace {

Vector to_vector(const DiscreteField& u) { return Eigen::Map<const Vector>(u.data(), static_cast<Eigen::Index>(u.size())); }

DiscreteField to_field(const DDFVMesh& mesh, const Vector& v)
{
    return DiscreteField(mesh, std::vector<double>(v.data(), v.data() + v.size()));
}

std::string fmt(const char* pattern, double a, double b)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

} // namespace

TimeStepper::TimeStepper(const Scheme& scheme, DiscreteField u0, InvariantTolerances tol)
    : scheme_(&scheme), u_(std::move(u0)), tol_(tol)
{
    if (!u_.matches(scheme.mesh()))
        throw BadParameter("initial field does not match the mesh");
    record_ = measure(0, 0.0);
    mass0_ = record_.mass;
}

StateRecord TimeStepper::measure(int step, double time) const
{
    const auto& mesh = scheme_->mesh();
    StateRecord r;
    r.step = step;
    r.time = time;
    r.mass = mass(mesh, u_);
    r.energy = energy(mesh, u_, scheme_->potential());
    r.min_u = u_.min();
    if (r.min_u > 0.0) {
        const Dissipation d = dissipation(*scheme_, u_);
        r.dissipation = d.i;
        r.i_hat = d.i_hat;
        r.penalty = d.penalty;
    }
    return r;
}

DiscreteField TimeStepper::initial_guess() const
{
    const auto& mesh = scheme_->mesh();
    DiscreteField guess = u_;
    // u^0 vanishes on the boundary primal cells by construction; start
    // those from the adjacent interior cell instead of the floor.
    for (Index b = 0; b < mesh.num_boundary(); ++b) {
        const Index l = mesh.boundary_offset() + b;
        if (guess[l] <= 0.0)
            guess[l] = u_[mesh.diamond(mesh.diamonds_of(l).front()).k];
    }
    return guess;
}

const StateRecord& TimeStepper::step()
{
    const auto& mesh = scheme_->mesh();
    const auto& params = scheme_->params();
    const DiscreteField prev = u_;

    const ResidualFn residual = [&](const Vector& x) {
        return to_vector(scheme_->variational_residual(prev, to_field(mesh, x)));
    };
    const JacobianFn jacobian = [&](const Vector& x) { return scheme_->variational_jacobian(to_field(mesh, x)); };

    NewtonResult res = newton_step_solve(residual, jacobian, to_vector(initial_guess()), params.newton, &solver_);
    u_ = to_field(mesh, res.u);

    const StateRecord old = record_;
    record_ = measure(old.step + 1, (old.step + 1) * params.dt);
    record_.newton = std::move(res.stats);
    record_.energy_balance =
        record_.energy - old.energy + params.dt * (record_.dissipation + params.kappa * record_.penalty);

    if (tol_.enforce) {
        if (!(record_.min_u > 0.0))
            throw InvariantViolation("positivity lost at step " + std::to_string(record_.step));
        const double drift = std::abs(record_.mass - mass0_) / std::abs(mass0_);
        if (!(drift <= tol_.mass_relative))
            throw InvariantViolation(fmt("mass drift %.3e exceeds %.1e", drift, tol_.mass_relative) + " at step " +
                                     std::to_string(record_.step));
        const double slack = tol_.energy_slack * (1.0 + std::abs(old.energy));
        if (!(record_.energy_balance <= slack))
            throw InvariantViolation(fmt("energy balance %.3e exceeds slack %.3e", record_.energy_balance, slack) +
                                     " at step " + std::to_string(record_.step));
    }
    return record_;
}

} // namespace ddfv
