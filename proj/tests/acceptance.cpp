// Acceptance gate: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include "ddfv/errors.hpp"
#include "ddfv/harness.hpp"
#include "ddfv/properties.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace ddfv;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(const char* id, const char* title, bool ok, const std::string& detail)
{
    std::printf("[%s] %s %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string join_orders(const std::vector<ConvergenceRow>& rows, double ConvergenceRow::*field)
{
    std::string out;
    for (std::size_t i = 1; i < rows.size(); ++i)
        out += (i > 1 ? "," : "") + fmt("%.3f", rows[i].*field);
    return out;
}

bool all_in(const std::vector<ConvergenceRow>& rows, double ConvergenceRow::*field, double lo, double hi)
{
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].*field >= lo && rows[i].*field <= hi))
            return false;
    return true;
}

bool study_failed(const std::vector<ConvergenceRow>& rows, std::string& why)
{
    for (const auto& r : rows)
        if (!r.failure.empty()) {
            why = "level " + std::to_string(r.level) + ": " + r.failure;
            return true;
        }
    return false;
}

// ---------------------------------------------------------------------------

struct FixedPoint {
    bool ok = false;
    std::string detail;
};

/// Newton from the discrete stationary state of the drift case, kappa = 0.
FixedPoint fixed_point(const DDFVMesh& mesh)
{
    const TestCase test = exact_case_drift();
    RunOptions opt;
    const DiscreteField pot = project_potential(mesh, test.potential);
    const DiscreteField u0 = project_initial(mesh, test.u0);
    const DiscreteField u_inf = stationary_state(mesh, pot, primal_mass(mesh, u0), dual_mass(mesh, u0));
    const Scheme scheme(mesh, make_params(test, opt), pot);
    TimeStepper stepper(scheme, u_inf);
    const StateRecord& rec = stepper.step();
    FixedPoint out;
    out.ok = rec.newton.iterations <= 1 && rec.newton.residual < 1e-10;
    out.detail = "iterations " + std::to_string(rec.newton.iterations) + ", l1 residual " +
                 fmt("%.2e", rec.newton.residual) + " (need <= 1, < 1e-10)";
    return out;
}

struct Conservation {
    bool ok = false;
    std::string detail;
};

/// Drift case, dt = 4e-3, T = 0.25; every step checked, nothing thrown.
Conservation conservation(const DDFVMesh& mesh)
{
    RunOptions opt;
    opt.dt = 4e-3;
    opt.t_final = 0.25;
    opt.invariants.enforce = false;
    const RunResult r = run_case(mesh, exact_case_drift(), opt);
    const double m0 = r.records.front().mass;
    double drift = 0.0, rise = -INFINITY;
    for (std::size_t n = 1; n < r.records.size(); ++n) {
        drift = std::max(drift, std::abs(r.records[n].mass - m0) / std::abs(m0));
        rise = std::max(rise, r.records[n].energy - r.records[n - 1].energy);
    }
    Conservation out;
    out.ok = drift <= 1e-11 && rise <= 1e-9;
    out.detail = std::to_string(r.records.size() - 1) + " steps, max relative mass drift " + fmt("%.2e", drift) +
                 " (<= 1e-11), max energy increase " + fmt("%.2e", rise) + " (<= 1e-9)";
    return out;
}

} // namespace

int main()
{
    const TestCase drift = exact_case_drift();

    // AC1 --------------------------------------------------------------------
    {
        const auto t0 = Clock::now();
        const PropertyReport props = run_property_suite(42);
        const double secs = seconds_since(t0);
        std::printf("%s", props.format().c_str());
        std::size_t failed = 0;
        for (const auto& r : props.results)
            failed += !r.passed;
        report("AC1", "structural invariants", props.all_passed() && secs < 10.0,
               std::to_string(props.results.size() - failed) + "/" + std::to_string(props.results.size()) +
                   " properties, seed 42, " + fmt("%.2f", secs) + " s (< 10 s)");
    }

    // AC2 --------------------------------------------------------------------
    {
        const FixedPoint fp = fixed_point(build_ddfv(gen_quad_fvca(8)));
        report("AC2", "stationary state is a fixed point", fp.ok, "quad 8x8, " + fp.detail);
    }

    // AC3 --------------------------------------------------------------------
    {
        const auto t0 = Clock::now();
        const Conservation c = conservation(build_ddfv(gen_quad_fvca(8)));
        const double secs = seconds_since(t0);
        report("AC3", "conservation and decay", c.ok && secs < 30.0,
               "quad 8x8, " + c.detail + ", " + fmt("%.2f", secs) + " s (< 30 s)");
    }

    // AC4-AC6 ----------------------------------------------------------------
    StudyConfig study;
    study.family = MeshFamily::Quad;
    study.levels = {8, 16, 32};
    study.dt0 = 4e-3;
    study.parallel = true;

    auto t0 = Clock::now();
    const auto rows0 = convergence_study(drift, study);
    const double secs0 = seconds_since(t0);
    std::printf("kappa = 0\n%s", format_convergence_table(rows0).c_str());

    study.run.kappa = 0.1;
    t0 = Clock::now();
    const auto rows1 = convergence_study(drift, study);
    const double secs1 = seconds_since(t0);
    std::printf("kappa = 0.1\n%s", format_convergence_table(rows1).c_str());

    {
        std::string why;
        const bool failed = study_failed(rows0, why);
        const bool ordu_ok = !failed && all_in(rows0, &ConvergenceRow::ordu, 1.8, INFINITY);
        const bool ordgu_ok = !failed && all_in(rows0, &ConvergenceRow::ordgu, 1.2, 1.8);
        report("AC4", "spatial accuracy", ordu_ok && ordgu_ok && secs0 < 600.0,
               failed ? why
                      : "ordu " + join_orders(rows0, &ConvergenceRow::ordu) + " (>= 1.8), ordgu " +
                            join_orders(rows0, &ConvergenceRow::ordgu) + " (in [1.2, 1.8]), " + fmt("%.1f", secs0) +
                            " s (< 600 s)");
    }
    {
        std::string why0, why1;
        const bool failed = study_failed(rows0, why0) || study_failed(rows1, why1);
        bool agree = !failed;
        double worst_gap = 0.0;
        for (std::size_t i = 0; i < rows0.size() && !failed; ++i) {
            const double gap = std::abs(rows0[i].normu - rows1[i].normu) / rows0[i].normu;
            worst_gap = std::max(worst_gap, gap);
            agree = agree && gap <= 0.02;
        }
        const bool ok = agree && all_in(rows0, &ConvergenceRow::ordnormu, 0.8, 1.3) &&
                        all_in(rows1, &ConvergenceRow::ordnormu, 0.8, 1.3);
        report("AC5", "primal/dual gap", ok,
               failed ? why0 + why1
                      : "ordU kappa=0 " + join_orders(rows0, &ConvergenceRow::ordnormu) + ", kappa=0.1 " +
                            join_orders(rows1, &ConvergenceRow::ordnormu) + " (in [0.8, 1.3]), max normU gap " +
                            fmt("%.2f%%", 100 * worst_gap) + " (<= 2%)");
    }
    {
        int nmax = 0;
        bool floor = false, positive = true, failed = false;
        double min_u = INFINITY;
        for (const auto* rows : {&rows0, &rows1})
            for (const auto& r : *rows) {
                failed = failed || !r.failure.empty();
                nmax = std::max(nmax, r.newton_max);
                floor = floor || r.floor_activated;
                positive = positive && r.min_u > 0.0;
                min_u = std::min(min_u, r.min_u);
            }
        report("AC6", "Newton robustness", !failed && nmax <= 12 && !floor && positive,
               "both studies: N_max " + std::to_string(nmax) + " (<= 12), floor " +
                   (floor ? "activated" : "never activated") + ", min u " + fmt("%.3e", min_u) + " (> 0)");
    }

    // AC7 --------------------------------------------------------------------
    {
        RunOptions opt;
        opt.dt = 1e-3;
        opt.t_final = 2.0;
        TestCase test = drift;
        test.t_final = 2.0;
        t0 = Clock::now();
        const LongtimeResult r = longtime_study(build_ddfv(gen_quad_fvca(16)), test, opt);
        const double secs = seconds_since(t0);
        report("AC7", "long-time decay", r.monotone && !r.fit.saturated && r.fit.r2 >= 0.99 && secs < 300.0,
               "quad 16x16, T=2, dt=1e-3: " + std::string(r.monotone ? "monotone" : "not monotone") + ", fit over " +
                   std::to_string(r.fit.points) + " points, rate " + fmt("%.4f", r.fit.rate) + ", R^2 " +
                   fmt("%.6f", r.fit.r2) + " (>= 0.99), " + fmt("%.1f", secs) + " s (< 300 s)");
    }

    // AC8 --------------------------------------------------------------------
    {
        const DDFVMesh k8 = build_ddfv(gen_kershaw(8));
        // the property suite already includes kershaw-4 and kershaw-8
        const PropertyReport props = run_property_suite(42);
        bool props_ok = true;
        for (const auto& r : props.results)
            props_ok = props_ok && r.passed;
        const FixedPoint fp = fixed_point(k8);
        const Conservation c = conservation(k8);

        StudyConfig ks = study;
        ks.family = MeshFamily::Kershaw;
        ks.run.kappa = 0.0;
        const auto rows = convergence_study(drift, ks);
        std::printf("kershaw, kappa = 0\n%s", format_convergence_table(rows).c_str());
        std::string why;
        const bool failed = study_failed(rows, why);
        const bool ordu_ok = !failed && all_in(rows, &ConvergenceRow::ordu, 1.5, INFINITY);
        report("AC8", "kershaw family", props_ok && fp.ok && c.ok && ordu_ok,
               std::string("properties ") + (props_ok ? "pass" : "fail") + "; fixed point " + (fp.ok ? "pass" : "fail") +
                   "; conservation " + (c.ok ? "pass" : "fail") + " (" + c.detail + "); ordu " +
                   (failed ? why : join_orders(rows, &ConvergenceRow::ordu)) + " (>= 1.5)");
    }

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
