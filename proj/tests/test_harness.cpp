#include "ddfv/errors.hpp"
#include "ddfv/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ddfv;
using doctest::Approx;

TEST_CASE("the drift case solves the equation with zero flux")
{
    // u_t = div(grad u + u grad V) with V = -y, checked by central differences
    const TestCase c = exact_case_drift();
    const auto u = c.exact;
    const double e = 1e-4;
    for (const Point x : {Point{0.3, 0.2}, Point{0.7, 0.55}, Point{0.1, 0.9}}) {
        for (double t : {0.0, 0.1, 0.2}) {
            const double ut = (u(x, t + e) - u(x, t - e)) / (2 * e);
            const double uyy = (u({x.x, x.y + e}, t) - 2 * u(x, t) + u({x.x, x.y - e}, t)) / (e * e);
            const double uxx = (u({x.x + e, x.y}, t) - 2 * u(x, t) + u({x.x - e, x.y}, t)) / (e * e);
            const double uy = (u({x.x, x.y + e}, t) - u({x.x, x.y - e}, t)) / (2 * e);
            CHECK(ut == Approx(uxx + uyy - uy).epsilon(1e-5));
            const Vec2 g = c.exact_gradient(x, t);
            CHECK(g.x == Approx(0.0).scale(1.0));
            CHECK(g.y == Approx(uy).epsilon(1e-7));
        }
    }
    for (double t : {0.0, 0.25}) {
        for (double y : {0.0, 1.0}) {
            const Point x{0.4, y};
            CHECK(c.exact_gradient(x, t).y - c.exact(x, t) == Approx(0.0).scale(1.0).epsilon(1e-12));
        }
    }
    CHECK(drift_alpha() == Approx(std::numbers::pi * std::numbers::pi + 0.25));
    CHECK(c.u0({0.5, 0.0}) == Approx(c.exact({0.5, 0.0}, 0.0)));
    CHECK(c.u0({0.5, 0.0}) > 0.0);
}

TEST_CASE("case lookup")
{
    CHECK(case_by_name("drift").has_exact());
    CHECK(case_by_name("constant").has_exact());
    CHECK_FALSE(case_by_name("relax").has_exact());
    CHECK_THROWS_AS(case_by_name("nope"), BadParameter);
}

TEST_CASE("error measures vanish on sampled exact data")
{
    const DDFVMesh m = build_ddfv(gen_quad_fvca(6));
    const SpaceTimeFunction f = [](const Point& x, double t) { return 1.0 + t * x.x + 2.0 * x.y; };
    const SpaceTimeGradient g = [](const Point&, double t) { return Vec2{t, 2.0}; };
    DiscreteField u(m);
    for (Index i = 0; i < u.size(); ++i)
        u[i] = f(m.center(i), 0.5);
    CHECK(error_u_at(m, u, f, 0.5) == Approx(0.0).scale(1.0));
    CHECK(error_gradient_sq_at(m, u, g, 0.5) == Approx(0.0).scale(1.0).epsilon(1e-20));
    // a constant offset e gives |e| in the discrete L2 norm on the unit square
    DiscreteField shifted = u;
    for (Index i = 0; i < u.size(); ++i)
        shifted[i] += 0.01;
    CHECK(error_u_at(m, shifted, f, 0.5) == Approx(0.01).epsilon(1e-10));
    CHECK(primal_dual_gap_sq(m, DiscreteField(m, 4.0)) == 0.0);
}

TEST_CASE("primal/dual gap oracle")
{
    // primal 1, dual 0: the gap is the sum of overlap areas = 1
    const DDFVMesh m = build_ddfv(gen_uniform_quad(4));
    DiscreteField u(m);
    for (Index k = 0; k < m.num_primal(); ++k)
        u[k] = 1.0;
    CHECK(primal_dual_gap_sq(m, u) == Approx(1.0).epsilon(1e-13));
    const std::vector<DiscreteField> traj{u, u};
    CHECK(norm_primal_dual_gap(m, traj, 0.25) == Approx(std::sqrt(0.5)).epsilon(1e-13));
}

TEST_CASE("orders")
{
    std::vector<ConvergenceRow> rows(3);
    rows[0].h = 1.0, rows[0].erru = 1.0, rows[0].errgu = 1.0, rows[0].normu = 1.0;
    rows[1].h = 0.5, rows[1].erru = 0.25, rows[1].errgu = 0.5, rows[1].normu = 0.0;
    rows[2].h = 0.25, rows[2].erru = 0.0625, rows[2].errgu = 0.125 * std::sqrt(2.0), rows[2].normu = 0.1;
    compute_orders(rows);
    CHECK(std::isnan(rows[0].ordu));
    CHECK(rows[1].ordu == Approx(2.0));
    CHECK(rows[2].ordu == Approx(2.0));
    CHECK(rows[1].ordgu == Approx(1.0));
    CHECK(rows[2].ordgu == Approx(1.5));
    CHECK(std::isnan(rows[1].ordnormu));
    CHECK(std::isnan(rows[2].ordnormu));
}

TEST_CASE("convergence CSV layout")
{
    std::vector<ConvergenceRow> rows(2);
    rows[0] = {1, 8, 0.125, 4e-3, 1.5e-2, 0, 2e-2, 0, 3e-2, 0, 5, 3.25, 0.5, false, 0, ""};
    rows[1] = {2, 16, 0.0625, 1e-3, 3.75e-3, 0, 1e-2, 0, 1.5e-2, 0, 4, 3.0, 0.5, false, 0, ""};
    compute_orders(rows);
    const std::string csv = format_convergence_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == "level,h,dt,erru,ordu,errgu,ordgu,normU,ordU,newton_max,newton_mean,min_u");
    CHECK(csv.find("1,1.25000e-01,4.00000e-03,1.50000e-02,nan,2.00000e-02,nan,3.00000e-02,nan,5,3.25000e+00,"
                   "5.00000e-01\n") != std::string::npos);
    CHECK(csv.find("2,6.25000e-02,1.00000e-03,3.75000e-03,2.00000e+00,1.00000e-02,1.00000e+00,1.50000e-02,"
                   "1.00000e+00,4,") != std::string::npos);
}

TEST_CASE("exponential fit")
{
    std::vector<double> t, re;
    for (int i = 0; i < 20; ++i) {
        t.push_back(0.1 * i);
        re.push_back(2.0 * std::exp(-3.0 * t.back()));
    }
    const ExponentialFit fit = fit_exponential(t, re);
    CHECK(fit.rate == Approx(-3.0).epsilon(1e-12));
    CHECK(fit.intercept == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(fit.r2 == Approx(1.0).epsilon(1e-12));
    CHECK(fit.points == 20);
    CHECK_FALSE(fit.saturated);
    // points below the cutoff end the fitted range
    re[10] = 1e-13;
    CHECK(fit_exponential(t, re).points == 10);
    CHECK(fit_exponential(t, std::vector<double>(20, 1e-14)).saturated);
}

TEST_CASE("constant case has zero error")
{
    const DDFVMesh m = build_ddfv(gen_quad_fvca(4));
    RunOptions opt;
    opt.dt = 0.01;
    opt.t_final = 0.05;
    const RunResult r = run_case(m, constant_case(), opt);
    CHECK(r.records.size() == 6);
    CHECK(r.erru < 1e-12);
    CHECK(r.errgu < 1e-12);
    CHECK(r.normu < 1e-12);
    CHECK(r.newton_max <= 1);
}

TEST_CASE("short drift run keeps its invariants")
{
    const DDFVMesh m = build_ddfv(gen_quad_fvca(8));
    RunOptions opt;
    opt.dt = 4e-3;
    opt.t_final = 0.04;
    const RunResult r = run_case(m, exact_case_drift(), opt);
    REQUIRE(r.records.size() == 11);
    const double m0 = r.records.front().mass;
    for (std::size_t n = 1; n < r.records.size(); ++n) {
        CHECK(std::abs(r.records[n].mass - m0) <= 1e-11 * m0);
        CHECK(r.records[n].energy <= r.records[n - 1].energy + 1e-9);
        CHECK(r.records[n].min_u > 0.0);
    }
    CHECK(r.erru > 0.0);
    CHECK(r.erru < 0.1);
    CHECK_FALSE(r.floor_activated);
    CHECK(r.cfl_ratio == Approx(r.dt / m.size()));
    const std::string csv = format_trace_csv(r.records);
    CHECK(csv.rfind("step,time,mass,energy,dissipation,i_hat,penalty,min_u,energy_balance,", 0) == 0);
}

TEST_CASE("two-level uniform study has finite orders")
{
    StudyConfig cfg;
    cfg.family = MeshFamily::Uniform;
    cfg.levels = {4, 8};
    cfg.dt0 = 0.01;
    TestCase c = exact_case_drift();
    c.t_final = 0.05;
    for (bool parallel : {false, true}) {
        cfg.parallel = parallel;
        const auto rows = convergence_study(c, cfg);
        REQUIRE(rows.size() == 2);
        CHECK(rows[1].dt == Approx(0.0025));
        CHECK(std::isfinite(rows[1].ordu));
        CHECK(std::isfinite(rows[1].ordgu));
        CHECK(std::isfinite(rows[1].ordnormu));
        CHECK(rows[1].erru < rows[0].erru);
        CHECK(rows[0].failure.empty());
    }
    cfg.levels = {4};
    CHECK_THROWS_AS(convergence_study(c, cfg), BadParameter);
}

TEST_CASE("long-time study")
{
    const DDFVMesh m = build_ddfv(gen_quad_fvca(6));
    TestCase c = exact_case_drift();
    RunOptions opt;
    opt.dt = 0.01;
    opt.t_final = 0.5;
    const LongtimeResult r = longtime_study(m, c, opt);
    CHECK(r.steps.size() == 51);
    CHECK(r.monotone);
    for (std::size_t i = 1; i < r.relative_energy.size(); ++i)
        CHECK(r.relative_energy[i] < r.relative_energy[i - 1]);
    CHECK(r.fit.rate < 0.0);
    CHECK(format_longtime_csv(r).rfind("n,t,relative_energy\n0,", 0) == 0);
    CHECK(longtime_plot_script("x.csv").find("x.csv") != std::string::npos);

    opt.start_stationary = true;
    const LongtimeResult s = longtime_study(m, c, opt);
    CHECK(s.fit.saturated);
}

TEST_CASE("error oracles from hand evaluation")
{
    const DDFVMesh m = build_ddfv(gen_quad_fvca(4));
    const SpaceTimeFunction zero = [](const Point&, double) { return 0.0; };
    // one step, perturbation eps on one primal cell: eps sqrt(m_K / 2)
    const double eps = 0.3;
    DiscreteField u(m);
    u[5] = eps;
    CHECK(error_u(m, {u}, {0.1}, zero) == Approx(eps * std::sqrt(m.measure(5) / 2.0)).epsilon(1e-14));
    // zero field against a constant exact gradient c: |c| sqrt(T m(Omega))
    const SpaceTimeGradient c = [](const Point&, double) { return Vec2{3.0, 4.0}; };
    const double dt = 0.05;
    const std::vector<DiscreteField> traj(4, DiscreteField(m));
    const std::vector<double> times{0.05, 0.1, 0.15, 0.2};
    CHECK(error_gradient(m, traj, times, dt, c) == Approx(5.0 * std::sqrt(0.2)).epsilon(1e-13));
}

TEST_CASE("error accumulator matches the batch measures")
{
    const DDFVMesh m = build_ddfv(gen_uniform_quad(3));
    const TestCase c = exact_case_drift();
    const double dt = 0.01;
    ErrorAccumulator acc(m, c, dt);
    std::vector<DiscreteField> traj;
    std::vector<double> times;
    for (int n = 1; n <= 3; ++n) {
        DiscreteField u(m, 1.0 + 0.1 * n);
        acc.add(u, n * dt);
        traj.push_back(u);
        times.push_back(n * dt);
    }
    CHECK(acc.erru() == Approx(error_u(m, traj, times, c.exact)));
    CHECK(acc.errgu() == Approx(error_gradient(m, traj, times, dt, c.exact_gradient)));
    CHECK(acc.normu() == Approx(norm_primal_dual_gap(m, traj, dt)));
}
