#pragma once

#include "ddfv/ddfv_mesh.hpp"
#include "ddfv/primal_mesh.hpp"
#include "ddfv/scheme.hpp"
#include "ddfv/stepper.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ddfv {

// ---------------------------------------------------------------------------
// test cases on the unit square
// ---------------------------------------------------------------------------

using SpaceTimeFunction = std::function<double(const Point&, double)>;
using SpaceTimeGradient = std::function<Vec2(const Point&, double)>;

struct TestCase {
    std::string name;
    ScalarFunction u0;
    ScalarFunction potential;
    TensorSpec lambda = TensorSpec::identity();
    double t_final = 0.25;
    /// Exact solution and its gradient, when known; u0 = exact(., 0).
    SpaceTimeFunction exact;
    SpaceTimeGradient exact_gradient;

    bool has_exact() const { return static_cast<bool>(exact); }
};

/// alpha = pi^2 + 1/4.
double drift_alpha();

/// Omega = (0,1)^2, V = -x2, Lambda = I,
///   u(x, t) = e^{-alpha t + x2/2} (pi cos(pi x2) + sin(pi x2)/2) + pi e^{x2 - 1/2}.
TestCase exact_case_drift();

/// u = c everywhere, V = 0.
TestCase constant_case(double c = 1.0);

/// V = 0 with the nonuniform datum 1 + cos(pi x1) cos(pi x2) / 2; no exact solution.
TestCase relaxation_case();

/// "drift", "constant" or "relax". Throws BadParameter.
TestCase case_by_name(const std::string& name);

// ---------------------------------------------------------------------------
// error measures
// ---------------------------------------------------------------------------

/// |u - u_ex(., t)|_{2,T} with u_ex sampled at x_K and x_K*.
double error_u_at(const DDFVMesh& mesh, const DiscreteField& u, const SpaceTimeFunction& exact, double t);

/// sum_D m_D |grad^D u - grad u_ex(x_D, t)|^2.
double error_gradient_sq_at(const DDFVMesh& mesh, const DiscreteField& u, const SpaceTimeGradient& grad, double t);

/// sum m_{K cap K*} (u_K - u_K*)^2.
double primal_dual_gap_sq(const DDFVMesh& mesh, const DiscreteField& u);

/// Trajectories hold u^1 .. u^N (the initial state is not part of the error).
double error_u(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, const std::vector<double>& times,
               const SpaceTimeFunction& exact);
double error_gradient(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, const std::vector<double>& times,
                      double dt, const SpaceTimeGradient& grad);
double norm_primal_dual_gap(const DDFVMesh& mesh, const std::vector<DiscreteField>& traj, double dt);

/// Streaming form of the three measures above.
class ErrorAccumulator {
public:
    ErrorAccumulator(const DDFVMesh& mesh, const TestCase& test, double dt);
    void add(const DiscreteField& u, double t);
    double erru() const { return erru_; }
    double errgu() const;
    double normu() const;

private:
    const DDFVMesh* mesh_;
    const TestCase* case_;
    double dt_;
    double erru_ = 0.0;
    double errgu_sq_ = 0.0;
    double gap_sq_ = 0.0;
};

// ---------------------------------------------------------------------------
// single run
// ---------------------------------------------------------------------------

struct RunOptions {
    double dt = 4e-3;
    double t_final = 0.25;
    double kappa = 0.0;
    double beta = 1.0;
    NewtonConfig newton;
    InvariantTolerances invariants;
    /// Start from the discrete stationary state instead of projecting u0.
    bool start_stationary = false;
};

struct RunResult {
    std::vector<StateRecord> records; ///< n = 0 .. N
    DiscreteField final_state;
    double dt = 0.0;
    double erru = 0.0;
    double errgu = 0.0;
    double normu = 0.0;
    int newton_max = 0;
    double newton_mean = 0.0;
    double min_u = 0.0; ///< over n >= 1
    bool floor_activated = false;
    double cfl_ratio = 0.0; ///< dt / h, reported only
};

using RecordObserver = std::function<void(const StateRecord&, const DiscreteField&)>;

SchemeParams make_params(const TestCase& test, const RunOptions& options);

/// Runs the case to T; errors are computed when the case has an exact solution.
RunResult run_case(const DDFVMesh& mesh, const TestCase& test, const RunOptions& options,
                   const RecordObserver& observer = {});

/// Per-step trace, full precision.
std::string format_trace_csv(const std::vector<StateRecord>& records);

// ---------------------------------------------------------------------------
// convergence study
// ---------------------------------------------------------------------------

struct ConvergenceRow {
    int level = 0;
    int n = 0;
    double h = 0.0;
    double dt = 0.0;
    double erru = 0.0;
    double ordu = 0.0; ///< NaN on the first row
    double errgu = 0.0;
    double ordgu = 0.0;
    double normu = 0.0;
    double ordnormu = 0.0;
    int newton_max = 0;
    double newton_mean = 0.0;
    double min_u = 0.0;
    bool floor_activated = false;
    double cfl_ratio = 0.0;
    std::string failure; ///< empty on success
};

struct StudyConfig {
    MeshFamily family = MeshFamily::Quad;
    std::vector<int> levels = {8, 16, 32};
    double dt0 = 4e-3; ///< time step on the first level, divided by 4 per level
    RunOptions run;
    bool parallel = false;
};

/// ord_i = log(e_{i-1}/e_i) / log(h_{i-1}/h_i), NaN on the first row.
void compute_orders(std::vector<ConvergenceRow>& rows);

std::vector<ConvergenceRow> convergence_study(const TestCase& test, const StudyConfig& config);

inline constexpr const char* kConvergenceHeader =
    "level,h,dt,erru,ordu,errgu,ordgu,normU,ordU,newton_max,newton_mean,min_u";

std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows);
std::string format_convergence_table(const std::vector<ConvergenceRow>& rows);

// ---------------------------------------------------------------------------
// long-time study
// ---------------------------------------------------------------------------

struct ExponentialFit {
    double rate = 0.0;      ///< slope of log(RE) vs t
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
    bool saturated = false; ///< fewer than 3 points above the cutoff
};

/// Least-squares line through (t, log RE) over the initial stretch where RE > cutoff.
ExponentialFit fit_exponential(const std::vector<double>& t, const std::vector<double>& re, double cutoff = 1e-12);

struct LongtimeResult {
    std::vector<int> steps;
    std::vector<double> times;
    std::vector<double> relative_energy;
    ExponentialFit fit;
    bool monotone = true; ///< nonincreasing up to the energy slack
};

LongtimeResult longtime_study(const DDFVMesh& mesh, const TestCase& test, const RunOptions& options);

std::string format_longtime_csv(const LongtimeResult& result);
/// gnuplot script plotting relative_energy against t on a log scale.
std::string longtime_plot_script(const std::string& csv_name);

} // namespace ddfv
