#include "ddfv/errors.hpp"
#include "ddfv/solver.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>

namespace ddfv {

void NewtonConfig::validate() const
{
    if (!(tol > 0.0))
        throw BadParameter("newton tolerance must be positive");
    if (max_iter < 1)
        throw BadParameter("newton max_iter must be at least 1");
    if (!(floor > 0.0))
        throw BadParameter("newton floor must be positive");
    if (!(damping > 0.0 && damping <= 1.0))
        throw BadParameter("newton damping must lie in (0,1]");
    if (max_backtracks < 0)
        throw BadParameter("newton max_backtracks must be nonnegative");
}

double norm_inf(const SparseMatrix& a)
{
    Vector rows = Vector::Zero(a.rows());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(a, k); it; ++it)
            rows[it.row()] += std::abs(it.value());
    return a.rows() ? rows.maxCoeff() : 0.0;
}

bool SparseLinearSolver::same_pattern(const SparseMatrix& a) const
{
    if (!analyzed_ || static_cast<std::size_t>(a.outerSize() + 1) != outer_.size() ||
        static_cast<std::size_t>(a.nonZeros()) != inner_.size())
        return false;
    return std::equal(outer_.begin(), outer_.end(), a.outerIndexPtr()) &&
           std::equal(inner_.begin(), inner_.end(), a.innerIndexPtr());
}

Vector linear_solve(const SparseMatrix& a, const Vector& b)
{
    SparseLinearSolver solver;
    return solver.solve(a, b);
}

Vector SparseLinearSolver::solve(const SparseMatrix& a, const Vector& b)
{
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw LinearSolveFailure("linear system has mismatched dimensions");

    Vector scale = Vector::Zero(a.rows());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(a, k); it; ++it)
            scale[it.row()] = std::max(scale[it.row()], std::abs(it.value()));
    for (Eigen::Index i = 0; i < scale.size(); ++i) {
        if (!(scale[i] > 0.0) || !std::isfinite(scale[i]))
            throw SingularMatrix("row " + std::to_string(i) + " of the matrix is zero or not finite");
        scale[i] = 1.0 / scale[i];
    }
    SparseMatrix scaled = scale.asDiagonal() * a;
    scaled.makeCompressed();

    if (!same_pattern(scaled)) {
        lu_.analyzePattern(scaled);
        outer_.assign(scaled.outerIndexPtr(), scaled.outerIndexPtr() + scaled.outerSize() + 1);
        inner_.assign(scaled.innerIndexPtr(), scaled.innerIndexPtr() + scaled.nonZeros());
        analyzed_ = true;
    }
    auto& lu = lu_;
    lu.factorize(scaled);
    if (lu.info() != Eigen::Success)
        throw SingularMatrix("sparse LU factorization failed: " + lu.lastErrorMessage());

    const Vector sb = scale.asDiagonal() * b;
    Vector x = lu.solve(sb);
    if (lu.info() != Eigen::Success || !x.allFinite())
        throw SingularMatrix("sparse LU solve failed");

    const double norm_a = norm_inf(a);
    const double norm_b = b.lpNorm<Eigen::Infinity>();
    for (int refine = 0; refine < 4; ++refine) {
        const Vector r = b - a * x;
        const double bound = 1e-12 * (norm_a * x.lpNorm<Eigen::Infinity>() + norm_b);
        if (refine > 0 && r.lpNorm<Eigen::Infinity>() <= bound)
            return x;
        x += lu.solve(scale.asDiagonal() * r);
    }
    const Vector r = b - a * x;
    if (r.lpNorm<Eigen::Infinity>() <= 1e-12 * (norm_a * x.lpNorm<Eigen::Infinity>() + norm_b))
        return x;
    throw LinearSolveFailure("linear solve residual above tolerance after refinement");
}

NewtonResult newton_step_solve(const ResidualFn& residual, const JacobianFn& jacobian, const Vector& u_init,
                               const NewtonConfig& config, SparseLinearSolver* solver)
{
    SparseLinearSolver local;
    SparseLinearSolver& lin = solver ? *solver : local;
    config.validate();
    NewtonResult out;
    NewtonStats& st = out.stats;
    Vector u = u_init;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (!(u[i] >= config.floor)) {
            u[i] = config.floor;
            st.floor_activated = true;
        }
    }

    Vector r = residual(u);
    double rn = r.lpNorm<1>();
    st.history.push_back(rn);
    while (!(rn < config.tol)) {
        if (!std::isfinite(rn))
            throw NoConvergence("newton residual is not finite");
        if (st.iterations == config.max_iter)
            throw NoConvergence("newton did not converge in " + std::to_string(config.max_iter) +
                                " iterations (residual " + std::to_string(rn) + ")");
        const Vector du = lin.solve(jacobian(u), -r);
        double step = config.damping;
        Vector trial = u + step * du;
        int bt = 0;
        while ((trial.array() <= 0.0).any()) {
            if (bt == config.max_backtracks)
                throw PositivityBacktrackExhausted("newton update could not keep the state positive after " +
                                                   std::to_string(bt) + " halvings");
            step *= 0.5;
            trial = u + step * du;
            ++bt;
        }
        st.backtracks += bt;
        u = std::move(trial);
        r = residual(u);
        rn = r.lpNorm<1>();
        st.history.push_back(rn);
        ++st.iterations;
    }
    st.residual = rn;
    out.u = std::move(u);
    return out;
}

} // namespace ddfv
