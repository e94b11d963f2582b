#include "ddfv/config.hpp"
#include "ddfv/errors.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ddfv;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("ddfv_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

/// Runs the CLI with stdout captured to `out`; returns the exit code.
int cli(const std::string& args, const fs::path& out)
{
    const std::string cmd = std::string(DDFV_CLI) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("documented defaults")
{
    const RunConfig c;
    CHECK(c.kappa == 0.0);
    CHECK(c.beta == 1.0);
    CHECK(c.newton_tol == 1e-10);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config text parsing")
{
    RunConfig c;
    apply_config_text(c, "# comment\n\nkappa = 0.1   # inline\nfamily=kershaw\nlevels = 4, 8 ,16\nparallel = true\n");
    CHECK(c.kappa == 0.1);
    CHECK(c.family == "kershaw");
    CHECK(c.levels == std::vector<int>{4, 8, 16});
    CHECK(c.parallel);
    try {
        apply_config_text(c, "dt = 1e-3\nbogus = 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(apply_config_text(c, "n = eight\n"), ParseError);
    CHECK_THROWS_AS(apply_config_text(c, "just words\n"), ParseError);
    CHECK_THROWS_AS(apply_setting(c, "dt", "1e-3x"), BadParameter);
}

TEST_CASE("config round trip is exact")
{
    RunConfig c;
    c.dt = 0.1 / 3.0;
    c.tfinal = std::nextafter(0.25, 1.0);
    c.kappa = 1e-1;
    c.lambda = "rotated:1,0.1,0.5";
    c.seed = 18446744073709551615ull;
    c.mesh = "some/file.mesh";
    RunConfig d;
    apply_config_text(d, format_config(c));
    CHECK(format_config(d) == format_config(c));
    CHECK(d.dt == c.dt);
    CHECK(d.tfinal == c.tfinal);
    CHECK(d.seed == c.seed);
    for (const auto& key : config_keys())
        CHECK(format_config(c).find(key + " = ") != std::string::npos);
}

TEST_CASE("validation names the valid beta range")
{
    RunConfig c;
    c.beta = 3.0;
    try {
        c.validate();
        FAIL("expected BadBeta");
    } catch (const BadBeta& e) {
        CHECK(std::string(e.what()).find("(0,2)") != std::string::npos);
    }
    c = {};
    c.start = "later";
    CHECK_THROWS_AS(c.validate(), BadParameter);
    c = {};
    c.family = "hex";
    CHECK_THROWS_AS(c.validate(), BadParameter);
}

TEST_CASE("mesh gen and inspect")
{
    const fs::path dir = scratch("mesh");
    CHECK(cli("mesh gen --family uniform --n 4 --out " + dir.string(), dir / "gen.txt") == 0);
    const auto read = read_mesh(dir / "uniform_4.mesh");
    CHECK(read.mesh.num_cells() == 16);
    CHECK(cli("mesh inspect " + (dir / "uniform_4.mesh").string(), dir / "inspect.txt") == 0);
    const std::string report = slurp(dir / "inspect.txt");
    CHECK(report.find("theta_interior_max   1\n") != std::string::npos);
    CHECK(report.find("cells                16\n") != std::string::npos);

    CHECK(cli("mesh gen --family kershaw --n 16 --file " + (dir / "k.mesh").string(), dir / "k.txt") == 0);
    const std::string k = slurp(dir / "k.txt");
    const auto pos = k.find("theta_interior_max");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(k.substr(pos + 18)) > 1.0);

    CHECK(cli("mesh convert " + (dir / "k.mesh").string() + " --to " + (dir / "k2.mesh").string(),
              dir / "c.txt") == 0);
    CHECK(slurp(dir / "k.mesh") == slurp(dir / "k2.mesh"));

    std::ofstream(dir / "bad.mesh") << "vertices 3\n0 0\n1 0\n";
    CHECK(cli("mesh inspect " + (dir / "bad.mesh").string(), dir / "bad.txt") == 2);
    CHECK(cli("mesh gen --family hex --n 4 --out " + dir.string(), dir / "hex.txt") == 2);
}

TEST_CASE("run writes a trace and reproduces from the echoed config")
{
    const fs::path dir = scratch("run");
    const fs::path a = dir / "a", b = dir / "b";
    CHECK(cli("run --n 8 --tfinal 0.04 --out " + a.string(), dir / "a.txt") == 0);
    const std::string trace = slurp(a / "trace.csv");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 12);
    REQUIRE(fs::exists(a / "effective_config"));
    CHECK(cli("run --config " + (a / "effective_config").string() + " --out " + b.string(), dir / "b.txt") == 0);
    CHECK(slurp(b / "trace.csv") == trace);
}

TEST_CASE("flags override config file values")
{
    const fs::path dir = scratch("override");
    std::ofstream(dir / "cfg") << "n = 4\ntfinal = 0.02\ndt = 0.01\nkappa = 0.5\n";
    CHECK(cli("run --config " + (dir / "cfg").string() + " --kappa 0.25 --out " + dir.string(), dir / "o.txt") == 0);
    RunConfig echoed;
    apply_config_file(echoed, dir / "effective_config");
    CHECK(echoed.kappa == 0.25);
    CHECK(echoed.n == 4);
}

TEST_CASE("stationary start keeps the energy constant")
{
    const fs::path dir = scratch("stationary");
    CHECK(cli("run --n 6 --start stationary --tfinal 0.05 --dt 0.01 --out " + dir.string(), dir / "s.txt") == 0);
    std::istringstream trace(slurp(dir / "trace.csv"));
    std::string line;
    std::getline(trace, line);
    std::vector<double> energies;
    while (std::getline(trace, line)) {
        std::stringstream ss(line);
        std::string field;
        for (int i = 0; i < 4; ++i)
            std::getline(ss, field, ',');
        energies.push_back(std::stod(field));
    }
    REQUIRE(energies.size() == 6);
    for (double e : energies)
        CHECK(std::abs(e - energies.front()) <= 1e-12);
}

TEST_CASE("error exit codes")
{
    const fs::path dir = scratch("codes");
    CHECK(cli("run --beta 3 --out " + dir.string(), dir / "beta.txt") == 2);
    CHECK(slurp(dir / "beta.txt").find("(0,2)") != std::string::npos);
    CHECK(cli("run --n 8 --tfinal 0.04 --newton-max-iter 1 --out " + dir.string(), dir / "newton.txt") == 3);
    CHECK(cli("run --dt abc", dir / "dt.txt") == 2);
    CHECK(cli("frobnicate", dir / "cmd.txt") == 2);
}

TEST_CASE("converge and longtime outputs")
{
    const fs::path dir = scratch("studies");
    CHECK(cli("converge --case constant --family uniform --levels 4,8 --dt 0.01 --tfinal 0.02 --out " + dir.string(),
              dir / "conv.txt") == 0);
    const std::string csv = slurp(dir / "convergence.csv");
    CHECK(csv.rfind("level,h,dt,erru,ordu,errgu,ordgu,normU,ordU,newton_max,newton_mean,min_u\n", 0) == 0);
    CHECK(csv.find("\n1,2.50000e-01,1.00000e-02,0.00000e+00,nan,0.00000e+00,nan,0.00000e+00,nan,") !=
          std::string::npos);

    CHECK(cli("longtime --n 6 --dt 0.01 --tfinal 0.3 --out " + dir.string(), dir / "long.txt") == 0);
    CHECK(slurp(dir / "longtime.csv").rfind("n,t,relative_energy\n", 0) == 0);
    CHECK(fs::exists(dir / "longtime.gp"));
    CHECK(slurp(dir / "long.txt").find("rate ") != std::string::npos);

    CHECK(cli("longtime --n 6 --dt 0.01 --tfinal 0.1 --start stationary --out " + dir.string(), dir / "sat.txt") ==
          0);
    CHECK(slurp(dir / "sat.txt").find("rate saturated") != std::string::npos);
}

TEST_CASE("check is deterministic")
{
    const fs::path dir = scratch("check");
    CHECK(cli("check --seed 42", dir / "a.txt") == 0);
    CHECK(cli("check --seed 42", dir / "b.txt") == 0);
    const std::string a = slurp(dir / "a.txt");
    CHECK(a == slurp(dir / "b.txt"));
    CHECK(a.find("seed 42") != std::string::npos);
    CHECK(a.find("[FAIL]") == std::string::npos);
}
