#pragma once

#include "ddfv/harness.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ddfv {

/// Parameters shared by every command. Keys in the config file are the
/// member names below; defaults: kappa = 0, beta = 1, newton_tol = 1e-10.
struct RunConfig {
    std::string case_name = "drift"; ///< key `case`
    std::string family = "quad";
    int n = 8;
    std::string mesh;                  ///< mesh file; overrides family/n when set
    std::vector<int> levels = {8, 16, 32};
    double dt = 4e-3;
    double tfinal = 0.25;
    double kappa = 0.0;
    double beta = 1.0;
    std::string lambda = "identity";   ///< see TensorSpec::parse
    double newton_tol = 1e-10;
    int newton_max_iter = 50;
    double newton_floor = 1e-12;
    double newton_damping = 1.0;
    std::string start = "projected";   ///< or "stationary"
    bool parallel = false;
    std::string out = ".";
    std::uint64_t seed = 42;

    /// Throws BadParameter or BadBeta.
    void validate() const;
};

/// Sets one key from its text value. Throws BadParameter for unknown keys
/// and malformed values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Flat `key = value` lines; `#` starts a comment. Throws ParseError.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Every key, one per line, doubles at full precision. Parsing the output
/// reproduces `config` exactly.
std::string format_config(const RunConfig& config);

/// Key names accepted by apply_setting, in output order.
const std::vector<std::string>& config_keys();

RunOptions run_options(const RunConfig& config);
TestCase test_case(const RunConfig& config);
/// Reads `mesh` when set, otherwise generates family/n.
PrimalMesh primal_mesh(const RunConfig& config);
StudyConfig study_config(const RunConfig& config);

} // namespace ddfv
