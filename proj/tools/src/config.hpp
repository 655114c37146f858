#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <delone/error.hpp>
#include <delone/ergodic.hpp>
#include <delone/generators.hpp>
#include <delone/io.hpp>
#include <delone/operator.hpp>

namespace delone::cli {

// Schema violation at a JSON pointer.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string pointer, const std::string& msg) : std::runtime_error(msg), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

  private:
    std::string pointer_;
};

struct SequenceConfig {
    double l0 = 0.0;
    int count = 0;
    double growth = 2.0;
    Vec center;
};

struct IdsConfig {
    bool svg = true;
};

struct FreqConfig {
    std::vector<PatternClass> classes;  // explicit classes, in config order
    double census_radius = 0.0;         // > 0: the `census_count` most frequent ball classes
    int census_count = 0;
};

struct DecomposeConfig {
    std::vector<double> radii;  // ball radii s of the pattern B(anchor, s)
    std::optional<Region> region;
};

struct ChecksConfig {
    int trials = 100;
    std::vector<std::string> functions{"volume", "point_count", "ids"};
    std::optional<Region> box;
    int rank_trials = 200;
    int max_n = 50;
};

struct JumpsConfig {
    double theta = 0.1;
    double rho = 0.3;
    double delta = 1e-6;
    std::vector<double> energies;  // empty: scan the counting function
    std::optional<Region> region;  // default: last van Hove region
};

struct UniformityConfig {
    int samples = 20;
};

struct ExperimentConfig {
    json raw;
    std::uint64_t seed = 0;
    std::string output = "out";
    int threads = 1;

    json generator_json;
    GeneratorSpec generator;
    int color_l = 1;  // > 1: colored grid over the lattice basis
    std::vector<Vec> color_basis;

    json operator_json;
    FiniteRangeOperator op;

    std::optional<SequenceConfig> sequence;
    std::vector<std::string> analyses;
    IdsConfig ids;
    FreqConfig freq;
    DecomposeConfig decompose;
    ChecksConfig checks;
    JumpsConfig jumps;
    UniformityConfig uniformity;

    bool wants(const std::string& a) const;
};

const std::vector<std::string>& known_analyses();

ExperimentConfig parse_config(const json& j);

struct ConfigDiagnostic {
    int line = 0;
    std::string pointer;
    std::string message;
};

// Reads and validates a config file; on failure fills `diag` and returns nullopt.
std::optional<ExperimentConfig> load_config(const std::string& path, ConfigDiagnostic& diag);

DelonePatch build_patch(const ExperimentConfig& cfg);
DelonePatch decorate(const ExperimentConfig& cfg, DelonePatch w);
VanHoveSequence build_sequence(const ExperimentConfig& cfg, int dim);

}  // namespace delone::cli
