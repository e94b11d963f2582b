#include "ddfv/errors.hpp"
#include "ddfv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

namespace ddfv {

namespace {

std::string sci(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

std::string full(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double order(double e_prev, double e, double h_prev, double h)
{
    if (!(e_prev > 0.0) || !(e > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return std::log(e_prev / e) / std::log(h_prev / h);
}

} // namespace

SchemeParams make_params(const TestCase& test, const RunOptions& options)
{
    SchemeParams p;
    p.dt = options.dt;
    p.t_final = options.t_final;
    p.kappa = options.kappa;
    p.beta = options.beta;
    p.lambda = test.lambda;
    p.newton = options.newton;
    p.validate();
    p.dt = p.effective_dt();
    return p;
}

RunResult run_case(const DDFVMesh& mesh, const TestCase& test, const RunOptions& options,
                   const RecordObserver& observer)
{
    const SchemeParams params = make_params(test, options);
    const int steps = params.num_steps();
    DiscreteField potential = project_potential(mesh, test.potential);
    DiscreteField u0 = project_initial(mesh, test.u0);
    if (options.start_stationary)
        u0 = stationary_state(mesh, potential, primal_mass(mesh, u0), dual_mass(mesh, u0));

    const Scheme scheme(mesh, params, std::move(potential));
    TimeStepper stepper(scheme, std::move(u0), options.invariants);
    ErrorAccumulator acc(mesh, test, params.dt);

    RunResult out;
    out.dt = params.dt;
    out.cfl_ratio = params.dt / mesh.size();
    out.records.push_back(stepper.record());
    if (observer)
        observer(stepper.record(), stepper.state());

    long total_iterations = 0;
    out.min_u = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= steps; ++n) {
        const StateRecord& rec = stepper.step();
        acc.add(stepper.state(), rec.time);
        out.newton_max = std::max(out.newton_max, rec.newton.iterations);
        total_iterations += rec.newton.iterations;
        out.floor_activated = out.floor_activated || rec.newton.floor_activated;
        out.min_u = std::min(out.min_u, rec.min_u);
        out.records.push_back(rec);
        if (observer)
            observer(rec, stepper.state());
    }
    out.newton_mean = static_cast<double>(total_iterations) / steps;
    out.erru = acc.erru();
    out.errgu = acc.errgu();
    out.normu = acc.normu();
    out.final_state = stepper.state();
    return out;
}

std::string format_trace_csv(const std::vector<StateRecord>& records)
{
    std::string out = "step,time,mass,energy,dissipation,i_hat,penalty,min_u,energy_balance,newton_iterations,"
                      "newton_residual,backtracks,floor_activated\n";
    for (const auto& r : records) {
        out += std::to_string(r.step) + "," + full(r.time) + "," + full(r.mass) + "," + full(r.energy) + "," +
               full(r.dissipation) + "," + full(r.i_hat) + "," + full(r.penalty) + "," + full(r.min_u) + "," +
               full(r.energy_balance) + "," + std::to_string(r.newton.iterations) + "," + full(r.newton.residual) +
               "," + std::to_string(r.newton.backtracks) + "," + (r.newton.floor_activated ? "1" : "0") + "\n";
    }
    return out;
}

void compute_orders(std::vector<ConvergenceRow>& rows)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            rows[i].ordu = rows[i].ordgu = rows[i].ordnormu = nan;
            continue;
        }
        const auto& p = rows[i - 1];
        auto& r = rows[i];
        r.ordu = order(p.erru, r.erru, p.h, r.h);
        r.ordgu = order(p.errgu, r.errgu, p.h, r.h);
        r.ordnormu = order(p.normu, r.normu, p.h, r.h);
    }
}

std::vector<ConvergenceRow> convergence_study(const TestCase& test, const StudyConfig& config)
{
    if (config.levels.size() < 2)
        throw BadParameter("a convergence study needs at least two levels");
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto run_level = [&](std::size_t i) {
        ConvergenceRow row;
        row.level = static_cast<int>(i) + 1;
        row.n = config.levels[i];
        RunOptions opt = config.run;
        opt.dt = config.dt0 / std::pow(4.0, static_cast<double>(i));
        opt.t_final = test.t_final;
        row.dt = opt.dt;
        try {
            const DDFVMesh mesh = build_ddfv(generate(config.family, row.n));
            row.h = mesh.size();
            const RunResult res = run_case(mesh, test, opt);
            row.dt = res.dt;
            row.erru = test.has_exact() ? res.erru : nan;
            row.errgu = test.has_exact() ? res.errgu : nan;
            row.normu = res.normu;
            row.newton_max = res.newton_max;
            row.newton_mean = res.newton_mean;
            row.min_u = res.min_u;
            row.floor_activated = res.floor_activated;
            row.cfl_ratio = res.cfl_ratio;
        } catch (const Error& e) {
            row.failure = e.what();
            row.erru = row.errgu = row.normu = row.newton_mean = row.min_u = nan;
        }
        return row;
    };

    std::vector<ConvergenceRow> rows(config.levels.size());
    if (config.parallel) {
        std::vector<std::future<ConvergenceRow>> jobs;
        for (std::size_t i = 0; i < rows.size(); ++i)
            jobs.push_back(std::async(std::launch::async, run_level, i));
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i] = run_level(i);
    }
    compute_orders(rows);
    return rows;
}

std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows)
{
    std::string out = std::string(kConvergenceHeader) + "\n";
    for (const auto& r : rows) {
        out += std::to_string(r.level) + "," + sci(r.h) + "," + sci(r.dt) + "," + sci(r.erru) + "," + sci(r.ordu) +
               "," + sci(r.errgu) + "," + sci(r.ordgu) + "," + sci(r.normu) + "," + sci(r.ordnormu) + "," +
               std::to_string(r.newton_max) + "," + sci(r.newton_mean) + "," + sci(r.min_u) + "\n";
    }
    return out;
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%5s %5s %12s %12s %12s %6s %12s %6s %12s %6s %5s %7s %12s\n", "level", "n", "h",
                  "dt", "erru", "ordu", "errgu", "ordgu", "normU", "ordU", "Nmax", "Nmean", "min_u");
    std::string out = buf;
    auto ord = [](double v) {
        char b[16];
        if (std::isnan(v))
            std::snprintf(b, sizeof b, "%6s", "-");
        else
            std::snprintf(b, sizeof b, "%6.2f", v);
        return std::string(b);
    };
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%5d %5d %12.5e %12.5e %12.5e %s %12.5e %s %12.5e %s %5d %7.2f %12.5e\n",
                      r.level, r.n, r.h, r.dt, r.erru, ord(r.ordu).c_str(), r.errgu, ord(r.ordgu).c_str(), r.normu,
                      ord(r.ordnormu).c_str(), r.newton_max, r.newton_mean, r.min_u);
        out += buf;
        if (!r.failure.empty())
            out += "      level " + std::to_string(r.level) + " failed: " + r.failure + "\n";
    }
    return out;
}

ExponentialFit fit_exponential(const std::vector<double>& t, const std::vector<double>& re, double cutoff)
{
    ExponentialFit fit;
    std::size_t count = 0;
    while (count < re.size() && re[count] > cutoff)
        ++count;
    fit.points = count;
    if (count < 3) {
        fit.saturated = true;
        return fit;
    }
    double st = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        st += t[i];
        sy += std::log(re[i]);
    }
    const double mt = st / count;
    const double my = sy / count;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double dt = t[i] - mt;
        const double dy = std::log(re[i]) - my;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    fit.rate = sty / stt;
    fit.intercept = my - fit.rate * mt;
    fit.r2 = syy > 0.0 ? sty * sty / (stt * syy) : 1.0;
    return fit;
}

LongtimeResult longtime_study(const DDFVMesh& mesh, const TestCase& test, const RunOptions& options)
{
    DiscreteField potential = project_potential(mesh, test.potential);
    const DiscreteField u0 = project_initial(mesh, test.u0);
    const DiscreteField u_inf = stationary_state(mesh, potential, primal_mass(mesh, u0), dual_mass(mesh, u0));

    LongtimeResult out;
    const auto observe = [&](const StateRecord& rec, const DiscreteField& u) {
        out.steps.push_back(rec.step);
        out.times.push_back(rec.time);
        out.relative_energy.push_back(relative_energy(mesh, u, u_inf));
    };
    run_case(mesh, test, options, observe);

    constexpr double cutoff = 1e-12;
    for (std::size_t i = 1; i < out.relative_energy.size(); ++i) {
        if (out.relative_energy[i - 1] <= cutoff)
            break;
        if (out.relative_energy[i] > out.relative_energy[i - 1])
            out.monotone = false;
    }
    out.fit = fit_exponential(out.times, out.relative_energy, cutoff);
    return out;
}

std::string format_longtime_csv(const LongtimeResult& result)
{
    std::string out = "n,t,relative_energy\n";
    for (std::size_t i = 0; i < result.steps.size(); ++i)
        out += std::to_string(result.steps[i]) + "," + sci(result.times[i]) + "," + sci(result.relative_energy[i]) +
               "\n";
    return out;
}

std::string longtime_plot_script(const std::string& csv_name)
{
    return "set datafile separator ','\n"
           "set logscale y\n"
           "set xlabel 't'\n"
           "set ylabel 'E^n - E^inf'\n"
           "set key off\n"
           "set terminal pngcairo size 800,600\n"
           "set output 'relative_energy.png'\n"
           "plot '" + csv_name + "' using 2:3 every ::1 with lines lw 2\n";
}

} // namespace ddfv
