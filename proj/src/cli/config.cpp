#include "ddfv/config.hpp"

#include "ddfv/errors.hpp"
#include "ddfv/operators.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ddfv {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used == v.size())
            return x;
    } catch (const std::exception&) {
    }
    throw BadParameter("key '" + key + "': expected a number, got '" + v + "'");
}

template <class T>
T to_integer(const std::string& key, const std::string& v)
{
    T x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw BadParameter("key '" + key + "': expected an integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "1" || v == "true")
        return true;
    if (v == "0" || v == "false")
        return false;
    throw BadParameter("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<int> to_levels(const std::string& key, const std::string& v)
{
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_integer<int>(key, trim(item)));
    if (out.empty())
        throw BadParameter("key '" + key + "': empty level list");
    return out;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {
        "case",       "family",          "n",            "mesh",           "levels", "dt",       "tfinal",
        "kappa",      "beta",            "lambda",       "newton_tol",     "newton_max_iter",    "newton_floor",
        "newton_damping", "start",       "parallel",     "out",            "seed"};
    return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw)
{
    const std::string v = trim(raw);
    if (key == "case") c.case_name = v;
    else if (key == "family") c.family = v;
    else if (key == "n") c.n = to_integer<int>(key, v);
    else if (key == "mesh") c.mesh = v;
    else if (key == "levels") c.levels = to_levels(key, v);
    else if (key == "dt") c.dt = to_double(key, v);
    else if (key == "tfinal") c.tfinal = to_double(key, v);
    else if (key == "kappa") c.kappa = to_double(key, v);
    else if (key == "beta") c.beta = to_double(key, v);
    else if (key == "lambda") c.lambda = v;
    else if (key == "newton_tol") c.newton_tol = to_double(key, v);
    else if (key == "newton_max_iter") c.newton_max_iter = to_integer<int>(key, v);
    else if (key == "newton_floor") c.newton_floor = to_double(key, v);
    else if (key == "newton_damping") c.newton_damping = to_double(key, v);
    else if (key == "start") c.start = v;
    else if (key == "parallel") c.parallel = to_bool(key, v);
    else if (key == "out") c.out = v;
    else if (key == "seed") c.seed = to_integer<std::uint64_t>(key, v);
    else throw BadParameter("unknown config key '" + key + "'");
}

void apply_config_text(RunConfig& config, const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected 'key = value'");
        try {
            apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const BadParameter& e) {
            throw ParseError(line_no, e.what());
        }
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw BadParameter("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(config, ss.str());
}

std::string format_config(const RunConfig& c)
{
    std::string levels;
    for (std::size_t i = 0; i < c.levels.size(); ++i)
        levels += (i ? "," : "") + std::to_string(c.levels[i]);
    std::ostringstream out;
    out << "case = " << c.case_name << '\n'
        << "family = " << c.family << '\n'
        << "n = " << c.n << '\n'
        << "mesh = " << c.mesh << '\n'
        << "levels = " << levels << '\n'
        << "dt = " << fmt(c.dt) << '\n'
        << "tfinal = " << fmt(c.tfinal) << '\n'
        << "kappa = " << fmt(c.kappa) << '\n'
        << "beta = " << fmt(c.beta) << '\n'
        << "lambda = " << c.lambda << '\n'
        << "newton_tol = " << fmt(c.newton_tol) << '\n'
        << "newton_max_iter = " << c.newton_max_iter << '\n'
        << "newton_floor = " << fmt(c.newton_floor) << '\n'
        << "newton_damping = " << fmt(c.newton_damping) << '\n'
        << "start = " << c.start << '\n'
        << "parallel = " << (c.parallel ? "true" : "false") << '\n'
        << "out = " << c.out << '\n'
        << "seed = " << c.seed << '\n';
    return out.str();
}

void RunConfig::validate() const
{
    parse_family(family);
    case_by_name(case_name);
    TensorSpec::parse(lambda);
    if (mesh.empty() && n < 1)
        throw BadParameter("mesh size n must be at least 1");
    for (int l : levels)
        if (l < 1)
            throw BadParameter("study levels must be at least 1");
    if (start != "projected" && start != "stationary")
        throw BadParameter("start must be 'projected' or 'stationary', got '" + start + "'");
    make_params(test_case(*this), run_options(*this)).validate();
}

RunOptions run_options(const RunConfig& c)
{
    RunOptions o;
    o.dt = c.dt;
    o.t_final = c.tfinal;
    o.kappa = c.kappa;
    o.beta = c.beta;
    o.newton.tol = c.newton_tol;
    o.newton.max_iter = c.newton_max_iter;
    o.newton.floor = c.newton_floor;
    o.newton.damping = c.newton_damping;
    o.start_stationary = c.start == "stationary";
    return o;
}

TestCase test_case(const RunConfig& c)
{
    TestCase t = case_by_name(c.case_name);
    t.lambda = TensorSpec::parse(c.lambda);
    t.t_final = c.tfinal;
    return t;
}

PrimalMesh primal_mesh(const RunConfig& c)
{
    if (!c.mesh.empty())
        return read_mesh(c.mesh).mesh;
    return generate(parse_family(c.family), c.n);
}

StudyConfig study_config(const RunConfig& c)
{
    StudyConfig s;
    s.family = parse_family(c.family);
    s.levels = c.levels;
    s.dt0 = c.dt;
    s.run = run_options(c);
    s.parallel = c.parallel;
    return s;
}

} // namespace ddfv
