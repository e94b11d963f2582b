#pragma once

#include "ddfv/scheme.hpp"

namespace ddfv {

/// Diagnostics of one time level.
struct StateRecord {
    int step = 0;
    double time = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double dissipation = 0.0; ///< I^n (zero at n = 0 if u^0 has zeros)
    double i_hat = 0.0;
    double penalty = 0.0;     ///< [[P g^n, g^n]]
    double min_u = 0.0;
    /// E^n - E^{n-1} + dt (I^n + kappa [[P g^n, g^n]]); zero at n = 0.
    double energy_balance = 0.0;
    NewtonStats newton;
};

struct InvariantTolerances {
    bool enforce = true;
    double mass_relative = 1e-11;
    double energy_slack = 1e-9; ///< scaled by (1 + |E^n|)
};

/// Implicit Euler time loop with per-step invariant checks.
class TimeStepper {
public:
    /// u0 is typically project_initial(...); its boundary primal values may be zero.
    TimeStepper(const Scheme& scheme, DiscreteField u0, InvariantTolerances tol = {});

    const Scheme& scheme() const noexcept { return *scheme_; }
    const DiscreteField& state() const noexcept { return u_; }
    int step_index() const noexcept { return record_.step; }
    double time() const noexcept { return record_.time; }
    const StateRecord& record() const noexcept { return record_; }
    double initial_mass() const noexcept { return mass0_; }

    /// Newton initial guess built from the current state.
    DiscreteField initial_guess() const;

    /// Advances one step. Throws SolverError or InvariantViolation.
    const StateRecord& step();

private:
    StateRecord measure(int step, double time) const;

    const Scheme* scheme_;
    DiscreteField u_;
    InvariantTolerances tol_;
    StateRecord record_;
    double mass0_ = 0.0;
    SparseLinearSolver solver_;
};

} // namespace ddfv
