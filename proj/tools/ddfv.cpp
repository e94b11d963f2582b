// ddfv: mesh tools, runs, convergence and long-time studies, property checks.

#include "ddfv/config.hpp"
#include "ddfv/errors.hpp"
#include "ddfv/properties.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace ddfv;

namespace {

enum Exit { Ok = 0, ConfigError = 2, SolverFailure = 3, PropertyFailure = 4 };

/// Flags given on the command line, applied after the config file.
struct Flags {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

void add_override(CLI::App* app, Flags& flags, const std::string& flag, const std::string& key,
                  const std::string& help)
{
    app->add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help);
}

void add_common(CLI::App* app, Flags& flags)
{
    app->add_option("--config", flags.config_path, "flat key = value config file");
    add_override(app, flags, "--out", "out", "output directory");
    add_override(app, flags, "--case", "case", "test case: drift, constant or relax");
    add_override(app, flags, "--mesh", "mesh", "mesh file (overrides --family/--n)");
    add_override(app, flags, "--family", "family", "mesh family: uniform, quad or kershaw");
    add_override(app, flags, "--n", "n", "cells per side");
    add_override(app, flags, "--levels", "levels", "comma-separated study levels");
    add_override(app, flags, "--dt", "dt", "time step (first level in studies)");
    add_override(app, flags, "--tfinal", "tfinal", "final time");
    add_override(app, flags, "--kappa", "kappa", "penalization weight (default 0)");
    add_override(app, flags, "--beta", "beta", "penalization exponent in (0,2) (default 1)");
    add_override(app, flags, "--lambda", "lambda", "tensor: identity, const:xx,xy,yy, rotated:l1,l2,angle");
    add_override(app, flags, "--newton-tol", "newton_tol", "Newton l1 tolerance (default 1e-10)");
    add_override(app, flags, "--newton-max-iter", "newton_max_iter", "Newton iteration cap");
    add_override(app, flags, "--start", "start", "projected or stationary");
    add_override(app, flags, "--parallel", "parallel", "run study levels concurrently (true/false)");
    add_override(app, flags, "--seed", "seed", "seed of the property suite");
}

RunConfig resolve(const Flags& flags)
{
    RunConfig c;
    if (!flags.config_path.empty())
        apply_config_file(c, flags.config_path);
    for (const auto& [key, value] : flags.overrides)
        apply_setting(c, key, value);
    c.validate();
    return c;
}

fs::path prepare_out(const RunConfig& c)
{
    fs::path dir(c.out);
    fs::create_directories(dir);
    std::ofstream(dir / "effective_config") << format_config(c);
    return dir;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw BadParameter("cannot write '" + path.string() + "'");
    out << text;
}

int cmd_mesh_gen(const RunConfig& c, const std::string& file)
{
    const PrimalMesh primal = generate(parse_family(c.family), c.n);
    const DDFVMesh mesh = build_ddfv(primal);
    const fs::path path = file.empty() ? prepare_out(c) / (c.family + "_" + std::to_string(c.n) + ".mesh") : fs::path(file);
    write_mesh(primal, path);
    const TensorSpec lambda = TensorSpec::parse(c.lambda);
    std::printf("mesh %s\n%s", path.string().c_str(), format_quality(quality(mesh, &lambda)).c_str());
    return Ok;
}

int cmd_mesh_inspect(const RunConfig& c, const std::string& file)
{
    const auto read = read_mesh(file);
    for (const auto& w : read.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    const DDFVMesh mesh = build_ddfv(read.mesh);
    const TensorSpec lambda = TensorSpec::parse(c.lambda);
    std::printf("%s", format_quality(quality(mesh, &lambda)).c_str());
    return Ok;
}

int cmd_mesh_convert(const std::string& in, const std::string& out)
{
    const auto read = read_mesh(in);
    for (const auto& w : read.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    build_ddfv(read.mesh);
    write_mesh(read.mesh, out);
    std::printf("mesh %s\n", out.c_str());
    return Ok;
}

int cmd_run(const RunConfig& c)
{
    const fs::path dir = prepare_out(c);
    const DDFVMesh mesh = build_ddfv(primal_mesh(c));
    const TestCase test = test_case(c);
    const RunResult r = run_case(mesh, test, run_options(c));
    write_text(dir / "trace.csv", format_trace_csv(r.records));

    const auto& first = r.records.front();
    const auto& last = r.records.back();
    std::printf("steps %d\ndt %.6e\nh %.6e\n", last.step, r.dt, mesh.size());
    std::printf("mass_drift %.6e\n", std::abs(last.mass - first.mass) / std::abs(first.mass));
    std::printf("energy_initial %.6e\nenergy_final %.6e\n", first.energy, last.energy);
    std::printf("min_u %.6e\nnewton_max %d\nnewton_mean %.3f\nfloor_activated %s\n", r.min_u, r.newton_max,
                r.newton_mean, r.floor_activated ? "true" : "false");
    if (test.has_exact())
        std::printf("erru %.6e\nerrgu %.6e\nnormU %.6e\n", r.erru, r.errgu, r.normu);
    std::printf("trace %s\n", (dir / "trace.csv").string().c_str());
    return Ok;
}

int cmd_converge(const RunConfig& c)
{
    const fs::path dir = prepare_out(c);
    const auto rows = convergence_study(test_case(c), study_config(c));
    write_text(dir / "convergence.csv", format_convergence_csv(rows));
    std::printf("%s", format_convergence_table(rows).c_str());
    int code = Ok;
    for (const auto& row : rows)
        if (!row.failure.empty()) {
            std::fprintf(stderr, "level %d failed: %s\n", row.level, row.failure.c_str());
            code = SolverFailure;
        }
    return code;
}

int cmd_longtime(const RunConfig& c)
{
    const fs::path dir = prepare_out(c);
    const DDFVMesh mesh = build_ddfv(primal_mesh(c));
    const LongtimeResult r = longtime_study(mesh, test_case(c), run_options(c));
    write_text(dir / "longtime.csv", format_longtime_csv(r));
    write_text(dir / "longtime.gp", longtime_plot_script("longtime.csv"));
    if (r.fit.saturated)
        std::printf("rate saturated\n");
    else
        std::printf("rate %.6e\nr2 %.6f\npoints %zu\n", r.fit.rate, r.fit.r2, r.fit.points);
    std::printf("monotone %s\nseries %s\n", r.monotone ? "true" : "false",
                (dir / "longtime.csv").string().c_str());
    return Ok;
}

int cmd_check(const RunConfig& c)
{
    const PropertyReport report = run_property_suite(c.seed);
    std::printf("%s", report.format().c_str());
    return report.all_passed() ? Ok : PropertyFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"DDFV drift-diffusion solver"};
    app.require_subcommand(1);
    Flags flags;

    auto* mesh = app.add_subcommand("mesh", "generate, inspect or convert meshes");
    mesh->require_subcommand(1);
    std::string mesh_file, convert_to;
    auto* gen = mesh->add_subcommand("gen", "generate a mesh family member and report its quality");
    add_common(gen, flags);
    gen->add_option("--file", mesh_file, "output file (default OUT/FAMILY_N.mesh)");
    auto* inspect = mesh->add_subcommand("inspect", "report the quality of a mesh file");
    add_common(inspect, flags);
    inspect->add_option("file", mesh_file, "mesh file")->required();
    auto* convert = mesh->add_subcommand("convert", "validate a mesh file and rewrite it in canonical form");
    add_common(convert, flags);
    convert->add_option("file", mesh_file, "input mesh")->required();
    convert->add_option("--to", convert_to, "output mesh")->required();

    auto* run = app.add_subcommand("run", "single run, writes trace.csv");
    auto* converge = app.add_subcommand("converge", "convergence study, writes convergence.csv");
    auto* longtime = app.add_subcommand("longtime", "relative energy decay, writes longtime.csv");
    auto* check = app.add_subcommand("check", "operator property suite");
    for (auto* sub : {run, converge, longtime, check})
        add_common(sub, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ConfigError;
    }

    try {
        const RunConfig config = resolve(flags);
        if (*gen)
            return cmd_mesh_gen(config, mesh_file);
        if (*inspect)
            return cmd_mesh_inspect(config, mesh_file);
        if (*convert)
            return cmd_mesh_convert(mesh_file, convert_to);
        if (*run)
            return cmd_run(config);
        if (*converge)
            return cmd_converge(config);
        if (*longtime)
            return cmd_longtime(config);
        return cmd_check(config);
    } catch (const InvariantViolation& e) {
        std::fprintf(stderr, "invariant violated: %s\n", e.what());
        return PropertyFailure;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return SolverFailure;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return ConfigError;
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return ConfigError;
    }
}
