#pragma once

#include "ddfv/ddfv_mesh.hpp"
#include "ddfv/field.hpp"
#include "ddfv/operators.hpp"
#include "ddfv/solver.hpp"
#include "ddfv/tensor.hpp"

#include <functional>

namespace ddfv {

using ScalarFunction = std::function<double(const Point&)>;

struct SchemeParams {
    double dt = 0.0;
    double t_final = 0.0;
    double kappa = 0.0;
    double beta = 1.0;
    TensorSpec lambda = TensorSpec::identity();
    NewtonConfig newton;

    /// Throws BadParameter or BadBeta.
    void validate() const;
    /// N_T = ceil(T / dt), with a small slack so that T/dt = 62.5000001 is not rounded up.
    int num_steps() const;
    /// T / N_T.
    double effective_dt() const;
};

// ---------------------------------------------------------------------------
// data projection
// ---------------------------------------------------------------------------

/// Means of f over primal and dual cells, zero on the boundary primal cells.
/// Primal cells are fan-triangulated from x_K, dual cells split into their
/// quarter-diamond triangles, with the centroid rule on each triangle.
DiscreteField cell_means(const DDFVMesh& mesh, const ScalarFunction& f);

/// cell_means of u0, with means in [-1e-14, 0) clamped to zero.
/// Throws NegativeInitialData below that.
DiscreteField project_initial(const DDFVMesh& mesh, const ScalarFunction& u0);

/// Nodal values V(x_K), V(x_L), V(x_K*).
DiscreteField project_potential(const DDFVMesh& mesh, const ScalarFunction& v);

// ---------------------------------------------------------------------------
// the nonlinear scheme
// ---------------------------------------------------------------------------

/// Per-step nonlinear system for u^{n+1}. Two equivalent forms are provided.
///
/// The variational form F has one row per unknown i, obtained by testing
/// with the indicator of i:
///   F_i = w_i (u_i - u_i^n)/dt + T_D(u; g, 1_i) + kappa [[P g, 1_i]],
/// with w_i = m_K/2, m_K*/2 and 0 on boundary primal cells.
///
/// The per-cell form R divides the primal and dual rows by w_i, and for a
/// boundary primal cell L holds the closure m_sigma J_D . n = -2 F_L.
class Scheme {
public:
    Scheme(const DDFVMesh& mesh, SchemeParams params, DiscreteField potential);

    const DDFVMesh& mesh() const noexcept { return *mesh_; }
    const SchemeParams& params() const noexcept { return params_; }
    const DiscreteField& potential() const noexcept { return potential_; }
    const std::vector<LocalMatrix>& local() const noexcept { return local_; }
    double weight(Index i) const;

    /// g = log u + V. Throws NonPositiveState.
    DiscreteField chemical_potential(const DiscreteField& u) const;

    DiscreteField variational_residual(const DiscreteField& u_prev, const DiscreteField& u) const;
    SparseMatrix variational_jacobian(const DiscreteField& u) const;

    DiscreteField residual(const DiscreteField& u_prev, const DiscreteField& u) const;
    SparseMatrix jacobian(const DiscreteField& u) const;

    /// T_D(u; f, psi) = sum_D r^D(u) delta f . A^D delta psi.
    double flux_form(const DiscreteField& u, const DiscreteField& f, const DiscreteField& psi) const;

private:
    const DDFVMesh* mesh_;
    SchemeParams params_;
    DiscreteField potential_;
    std::vector<LocalMatrix> local_;
    double h_beta_ = 1.0;
};

// ---------------------------------------------------------------------------
// energy and dissipation
// ---------------------------------------------------------------------------

/// H(s) = s log s - s + 1 with H(0) = 1.
double entropy_density(double s);

/// E = [[H(u), 1]] + [[V, u]]. Accepts u >= 0.
double energy(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& potential);

/// [[u log(u/u_inf) - u + u_inf, 1]], evaluated without cancellation.
double relative_energy(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& u_inf);

struct Dissipation {
    double i = 0.0;      ///< sum_D r^D delta g . A^D delta g
    double i_b = 0.0;    ///< same with B^D in place of A^D
    double i_hat = 0.0;  ///< sum_D r^D delta log u . B^D delta log u
    double penalty = 0.0; ///< [[P g, g]]
};

/// Throws NonPositiveState.
Dissipation dissipation(const Scheme& scheme, const DiscreteField& u);

/// ||grad^D sqrt(u)||^2_{Lambda,D}.
double fisher_norm(const DDFVMesh& mesh, const TensorSpec& lambda, const DiscreteField& u);

/// u_K = rho e^{-V_K}, u_K* = rho* e^{-V_K*} with sum m_K u_K = primal_mass and
/// sum m_K* u_K* = dual_mass; boundary primal cells use rho.
DiscreteField stationary_state(const DDFVMesh& mesh, const DiscreteField& potential, double primal_mass,
                               double dual_mass);
inline DiscreteField stationary_state(const DDFVMesh& mesh, const DiscreteField& potential, double mass)
{
    return stationary_state(mesh, potential, mass, mass);
}

/// [[u, 1]].
double mass(const DDFVMesh& mesh, const DiscreteField& u);
/// sum_K m_K u_K.
double primal_mass(const DDFVMesh& mesh, const DiscreteField& u);
/// sum_K* m_K* u_K*.
double dual_mass(const DDFVMesh& mesh, const DiscreteField& u);

} // namespace ddfv
