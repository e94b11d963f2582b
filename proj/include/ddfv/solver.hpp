#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <Eigen/SparseLU>

#include <functional>
#include <vector>

namespace ddfv {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

struct NewtonConfig {
    double tol = 1e-10; ///< stop when the l1 norm of the residual is below
    int max_iter = 50;
    double floor = 1e-12; ///< lower bound applied to the initial guess
    double damping = 1.0; ///< fixed step length in (0, 1]
    int max_backtracks = 30;

    /// Throws BadParameter.
    void validate() const;
};

struct NewtonStats {
    int iterations = 0;
    double residual = 0.0; ///< final l1 norm
    int backtracks = 0;
    bool floor_activated = false;
    std::vector<double> history; ///< l1 norm before each iteration and at exit
};

struct NewtonResult {
    Vector u;
    NewtonStats stats;
};

/// Sparse direct solver with row equilibration and iterative refinement.
/// The symbolic analysis is reused while the sparsity pattern is unchanged.
/// Guarantees |Ax - b|_inf <= 1e-12 (|A|_inf |x|_inf + |b|_inf) or throws
/// SingularMatrix / LinearSolveFailure.
class SparseLinearSolver {
public:
    Vector solve(const SparseMatrix& a, const Vector& b);

private:
    bool same_pattern(const SparseMatrix& a) const;

    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
    std::vector<int> outer_;
    std::vector<int> inner_;
    bool analyzed_ = false;
};

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<SparseMatrix(const Vector&)>;

/// Newton iteration from max(u_init, floor). Iterates are kept strictly
/// positive by halving the update. Throws NoConvergence, LinearSolveFailure
/// or PositivityBacktrackExhausted.
NewtonResult newton_step_solve(const ResidualFn& residual, const JacobianFn& jacobian, const Vector& u_init,
                               const NewtonConfig& config = {}, SparseLinearSolver* solver = nullptr);

/// One-shot SparseLinearSolver::solve.
Vector linear_solve(const SparseMatrix& a, const Vector& b);

double norm_inf(const SparseMatrix& a);

} // namespace ddfv
