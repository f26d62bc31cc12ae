#ifndef VORTEXLAB_CONFIG_HPP
#define VORTEXLAB_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortexlab {

/// Anything wrong with a run configuration: missing file, parse failure,
/// unknown key, invariant violation.  Mapped to exit code 1 by the CLI.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment run: command name plus system / numerical / estimator
/// settings, parsed from a flat key=value file with [section] headers.
struct RunConfig {
    std::string command;

    // [system]
    std::size_t n = 2;
    std::vector<double> a{1.0, 1.0};
    double nu = 1.0;
    std::string variant; // optional; commands pick their own dynamics

    // [sim]
    double dt = 1e-3;
    double horizon = 10.0;
    double eps = 1e-2;
    std::size_t replicas = 10000;
    double t_trunc = 20.0;

    // [est]
    int k = 5;
    int n_permutations = 500;
    std::size_t n_samples = 2000;

    // [run]
    std::string out_dir = "out";

    std::uint64_t master_seed = 1; // CLI --seed

    double a_sum() const;
    void validate() const;
};

/// Parse configuration text; rejects unknown keys with a suggestion.
RunConfig parse_config(const std::string& text);

/// Load and parse a configuration file (UTF-8).
RunConfig load_config(const std::string& path);

const std::vector<std::string>& known_commands();

} // namespace vortexlab

#endif
