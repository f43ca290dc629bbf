#pragma once

#include "stokes/grid.hpp"
#include "stokes/io.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stokes::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kNonConvergence = 3 };

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct DomainSpec {
    std::string shape = "rectangle";
    double width = 1.0;
    double height = 1.0;
    double radius = 1.0;
    int nx = 64;
};

struct FluidSpec {
    double nu = 1.0;
    double f_norm = 1.0;
    std::optional<double> lambda1;
};

struct RunConfig {
    DomainSpec domain;
    std::string operator_name = "stokes";
    int m = 10;
    double tol = 1e-8;
    /// Grid sizes nx for refinement runs, strictly increasing.
    std::vector<int> refinement;
    /// Subset of bounds, frame, lt, dim.
    std::vector<std::string> checks{"bounds", "frame", "lt", "dim"};
    std::uint64_t seed = 20250101;
    std::filesystem::path out = ".";
    /// Tabulated spectrum used instead of a solve; checked with zero slack.
    std::optional<std::vector<double>> eigenvalues;
    std::optional<double> measure;
    FluidSpec fluid;
    bool inject_duplicate = false;
    int family_size = 20;
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig parse_config(const Json& json);
RunConfig load_config(const std::filesystem::path& path);

/// Expands "all" and validates names.
std::vector<std::string> parse_checks(const std::vector<std::string>& names);

DomainPtr build_domain(const DomainSpec& spec, int nx);

int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_check(const RunConfig& config, std::ostream& out);
int cmd_report(const RunConfig& config, std::ostream& out);

/// Parses argv, dispatches the subcommand and maps failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stokes::cli
