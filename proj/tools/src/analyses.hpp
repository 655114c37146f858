#pragma once

#include <string>
#include <vector>

#include "cache.hpp"
#include "config.hpp"

namespace delone::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kWindowError = 3, kViolation = 4 };

struct OutputFile {
    std::string name;
    std::string content;
};

struct AnalysisOutcome {
    std::string name;
    std::vector<OutputFile> files;
    json summary = json::object();
    long violations = 0;
    int exit_code = kOk;
    std::string error;
    double seconds = 0.0;
};

struct RunContext {
    const ExperimentConfig& cfg;
    const DelonePatch& patch;
    std::string patch_key;  // cache context of `patch` under cfg.op
    SpectrumCache& cache;
    int threads = 1;
    std::uint64_t seed = 0;
};

// Never throws: failures are reported through exit_code and error.
AnalysisOutcome run_analysis(const std::string& name, const RunContext& ctx);

// Exit status of a run: the smallest nonzero code among the analyses.
int combined_exit_code(const std::vector<AnalysisOutcome>& outcomes);

// Staircase or decomposition SVG for an emitted result file.
std::string render_result(const json& result);

}  // namespace delone::cli
