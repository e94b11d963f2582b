#pragma once

#include "ddfv/ddfv_mesh.hpp"
#include "ddfv/field.hpp"
#include "ddfv/tensor.hpp"

#include <array>
#include <vector>

namespace ddfv {

// ---------------------------------------------------------------------------
// gradient, divergence, reconstruction
// ---------------------------------------------------------------------------

/// grad^D from the four values (u_K, u_L, u_K*, u_L*), m_D form.
Vec2 grad_diamond(const Diamond& d, double uk, double ul, double uks, double uls);
/// Same gradient written with 1/sin(alpha_D).
Vec2 grad_diamond_sin(const Diamond& d, double uk, double ul, double uks, double uls);

DiamondVectors grad_d(const DDFVMesh& mesh, const DiscreteField& u);

/// div^T xi: primal and dual rows, zero on the boundary primal cells.
DiscreteField divergence(const DDFVMesh& mesh, const DiamondVectors& xi);

/// r^D(u) = (u_K + u_L + u_K* + u_L*) / 4.
double reconstruct(const Diamond& d, const DiscreteField& u);
DiamondScalars reconstruct_diamond(const DDFVMesh& mesh, const DiscreteField& u);

/// delta^D u = (u_K - u_L, u_K* - u_L*).
std::array<double, 2> delta(const Diamond& d, const DiscreteField& u);

// ---------------------------------------------------------------------------
// bilinear forms
// ---------------------------------------------------------------------------

/// [[u, v]]_T = (sum_K m_K u_K v_K + sum_K* m_K* u_K* v_K*) / 2.
double bracket_t(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& v);

/// (xi, phi)_{Lambda,D} = sum_D m_D xi_D . Lambda^D phi_D.
double inner_lambda(const DDFVMesh& mesh, const TensorSpec& lambda, const DiamondVectors& xi,
                    const DiamondVectors& phi);

// ---------------------------------------------------------------------------
// local matrices
// ---------------------------------------------------------------------------

struct LocalMatrix {
    double a_ss = 0.0;   ///< A_{sigma,sigma}
    double a_sd = 0.0;   ///< A_{sigma,sigma*}
    double a_dd = 0.0;   ///< A_{sigma*,sigma*}

    std::array<double, 2> apply(const std::array<double, 2>& w) const
    {
        return {a_ss * w[0] + a_sd * w[1], a_sd * w[0] + a_dd * w[1]};
    }
    double form(const std::array<double, 2>& w, const std::array<double, 2>& z) const
    {
        const auto aw = apply(w);
        return aw[0] * z[0] + aw[1] * z[1];
    }
    /// Diagonal matrix B^D.
    LocalMatrix dominant_diagonal() const;
    /// Ratio of the eigenvalues, infinite when singular.
    double cond2() const;
};

LocalMatrix local_matrix(const Diamond& d, const Mat2& lambda_d);
/// A^D for every diamond. Throws NotSPD when Lambda^D is not SPD.
std::vector<LocalMatrix> local_matrices(const DDFVMesh& mesh, const TensorSpec& lambda);

// ---------------------------------------------------------------------------
// penalization
// ---------------------------------------------------------------------------

/// Throws BadBeta unless 0 < beta < 2.
void check_beta(double beta);

/// [[P u, v]]_T = 1/(2 h^beta) sum m_{K cap K*} (u_K - u_K*)(v_K - v_K*).
double penalization_bracket(const DDFVMesh& mesh, const DiscreteField& u, const DiscreteField& v, double beta);

/// P^T u componentwise, zero on the boundary primal cells.
DiscreteField penalize(const DDFVMesh& mesh, const DiscreteField& u, double beta);

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

/// |u|_{p,T}; p = infinity gives the max norm over primal and dual cells.
double norm_p(const DDFVMesh& mesh, const DiscreteField& u, double p);
/// ||grad^h u||_p, with p = infinity allowed.
double grad_norm_p(const DDFVMesh& mesh, const DiscreteField& u, double p);
/// ||u||_{1,p,T}, with p = infinity allowed.
double norm_1p(const DDFVMesh& mesh, const DiscreteField& u, double p);
/// ||u||_{1,inf*,T} = ||u||_{1,inf,T} + [[P u, u]]^{1/2}.
double norm_1inf_star(const DDFVMesh& mesh, const DiscreteField& u, double beta);

/// Space-time norms of a trajectory u^1..u^N (u^0 excluded) with step dt.
double norm_q_1p(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, double dt, double q, double p);
double norm_inf_1inf(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj);
double norm_inf_0p(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, double p);

// ---------------------------------------------------------------------------
// boundary trace
// ---------------------------------------------------------------------------

struct BoundaryTrace {
    std::vector<double> values;  ///< u_L per boundary edge
    std::vector<double> lengths; ///< m_sigma per boundary edge
    double l2_norm = 0.0;
};

BoundaryTrace trace_boundary(const DDFVMesh& mesh, const DiscreteField& u);

} // namespace ddfv
