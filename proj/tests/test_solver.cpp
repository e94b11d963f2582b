#include "ddfv/errors.hpp"
#include "ddfv/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace ddfv;
using doctest::Approx;

namespace {

SparseMatrix diagonal(const Vector& d)
{
    SparseMatrix a(d.size(), d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i)
        a.insert(i, i) = d[i];
    a.makeCompressed();
    return a;
}

SparseMatrix tridiagonal(int n, double lo, double mid, double hi)
{
    SparseMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        if (i > 0)
            a.insert(i, i - 1) = lo;
        a.insert(i, i) = mid;
        if (i + 1 < n)
            a.insert(i, i + 1) = hi;
    }
    a.makeCompressed();
    return a;
}

} // namespace

TEST_CASE("newton converges quadratically on u^2 = 2")
{
    const auto f = [](const Vector& u) { return Vector((u.array() * u.array() - 2.0).matrix()); };
    const auto j = [](const Vector& u) { return diagonal(2.0 * u); };
    const NewtonResult r = newton_step_solve(f, j, Vector::Constant(3, 1.0));
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(r.u[i] == Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(r.stats.residual < 1e-10);
    CHECK(r.stats.iterations <= 6);
    CHECK_FALSE(r.stats.floor_activated);
    const auto& h = r.stats.history;
    REQUIRE(h.size() >= 4);
    // quadratic: e_{k+1} <= C e_k^2 once in the asymptotic range
    CHECK(h[3] < 10.0 * h[2] * h[2]);
}

TEST_CASE("an exact initial guess takes zero iterations")
{
    const auto f = [](const Vector& u) { return Vector((u.array() - 1.0).matrix()); };
    const auto j = [](const Vector& u) { return diagonal(Vector::Ones(u.size())); };
    const NewtonResult r = newton_step_solve(f, j, Vector::Ones(4));
    CHECK(r.stats.iterations == 0);
    CHECK(r.stats.history.size() == 1);
}

TEST_CASE("initial guess floor")
{
    const auto f = [](const Vector& u) { return Vector((u.array() - 1.0).matrix()); };
    const auto j = [](const Vector& u) { return diagonal(Vector::Ones(u.size())); };
    Vector u0 = Vector::Ones(3);
    u0[1] = 0.0;
    const NewtonResult r = newton_step_solve(f, j, u0);
    CHECK(r.stats.floor_activated);
    CHECK(r.u[1] == Approx(1.0));
}

TEST_CASE("positivity backtracking")
{
    // root at u = 0.25; a full step from u = 1 on f = 1/u - 4 overshoots below zero
    const auto f = [](const Vector& u) { return Vector((1.0 / u.array() - 4.0).matrix()); };
    const auto j = [](const Vector& u) { return diagonal((-1.0 / (u.array() * u.array())).matrix()); };
    const NewtonResult r = newton_step_solve(f, j, Vector::Constant(1, 1.0));
    CHECK(r.u[0] == Approx(0.25).epsilon(1e-12));
    CHECK(r.stats.backtracks > 0);

    NewtonConfig strict;
    strict.max_backtracks = 0;
    CHECK_THROWS_AS(newton_step_solve(f, j, Vector::Constant(1, 1.0), strict), PositivityBacktrackExhausted);
}

TEST_CASE("iteration cap raises NoConvergence")
{
    const auto f = [](const Vector& u) { return Vector((u.array() * u.array() - 2.0).matrix()); };
    const auto j = [](const Vector& u) { return diagonal(2.0 * u); };
    NewtonConfig cfg;
    cfg.max_iter = 1;
    CHECK_THROWS_AS(newton_step_solve(f, j, Vector::Constant(2, 10.0), cfg), NoConvergence);
    CHECK_THROWS_AS(newton_step_solve(f, j, Vector::Constant(2, 10.0), cfg), SolverError);
}

TEST_CASE("config validation")
{
    NewtonConfig c;
    CHECK_NOTHROW(c.validate());
    c.tol = 0.0;
    CHECK_THROWS_AS(c.validate(), BadParameter);
    c = {};
    c.damping = 1.5;
    CHECK_THROWS_AS(c.validate(), BadParameter);
    c = {};
    c.max_iter = 0;
    CHECK_THROWS_AS(c.validate(), BadParameter);
}

TEST_CASE("sparse direct solve")
{
    const int n = 50;
    const SparseMatrix a = tridiagonal(n, -1.0, 2.5, -1.3);
    Vector x_true(n);
    for (int i = 0; i < n; ++i)
        x_true[i] = std::sin(0.3 * i) + 1.0;
    const Vector b = a * x_true;
    const Vector x = linear_solve(a, b);
    CHECK((x - x_true).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK(norm_inf(a) == Approx(4.8));
}

TEST_CASE("badly scaled rows are equilibrated")
{
    SparseMatrix a = tridiagonal(10, -1.0, 3.0, -1.0);
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(a, k); it; ++it)
            if (it.row() % 2 == 0)
                it.valueRef() *= 1e8;
    const Vector x_true = Vector::LinSpaced(10, 1.0, 2.0);
    const Vector x = linear_solve(a, a * x_true);
    CHECK((x - x_true).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("singular matrices are reported")
{
    SparseMatrix a(3, 3);
    a.insert(0, 0) = 1.0;
    a.insert(1, 1) = 1.0;
    a.insert(2, 0) = 1.0;
    a.makeCompressed();
    CHECK_THROWS_AS(linear_solve(a, Vector::Ones(3)), LinearSolveFailure);
}

TEST_CASE("the cached solver handles changing values on a fixed pattern")
{
    SparseLinearSolver solver;
    for (double mid : {2.5, 4.0, 10.0}) {
        const SparseMatrix a = tridiagonal(20, -1.0, mid, -1.0);
        const Vector x_true = Vector::LinSpaced(20, -1.0, 1.0);
        CHECK((solver.solve(a, a * x_true) - x_true).lpNorm<Eigen::Infinity>() < 1e-12);
    }
    const SparseMatrix b = diagonal(Vector::Constant(5, 2.0));
    CHECK(solver.solve(b, Vector::Ones(5))[0] == Approx(0.5));
}
