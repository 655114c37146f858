#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "analyses.hpp"
#include "config.hpp"
#include "pool.hpp"

namespace fs = std::filesystem;
using namespace delone;
using namespace delone::cli;

namespace {

void report(const std::string& path, const ConfigDiagnostic& d) {
    std::cerr << path;
    if (d.line > 0) std::cerr << ":" << d.line;
    std::cerr << ": ";
    if (!d.pointer.empty()) std::cerr << d.pointer << ": ";
    std::cerr << d.message << "\n";
}

bool write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
    return static_cast<bool>(out);
}

int cmd_validate(const std::string& path) {
    ConfigDiagnostic d;
    const auto cfg = load_config(path, d);
    if (!cfg) {
        report(path, d);
        return kConfigError;
    }
    std::cout << path << ": ok (" << cfg->analyses.size() << " analyses)\n";
    return kOk;
}

int cmd_run(const std::string& path, const std::string& out_flag, int threads_flag, std::optional<std::uint64_t> seed_flag,
            bool no_cache) {
    const auto t0 = std::chrono::steady_clock::now();
    ConfigDiagnostic d;
    auto cfg = load_config(path, d);
    if (!cfg) {
        report(path, d);
        return kConfigError;
    }
    const fs::path out = out_flag.empty() ? fs::path(cfg->output) : fs::path(out_flag);
    const int threads = threads_flag > 0 ? threads_flag : cfg->threads;
    const std::uint64_t seed = seed_flag ? *seed_flag : cfg->seed;
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << out.string() << ": " << ec.message() << "\n";
        return kConfigError;
    }

    DelonePatch patch;
    try {
        patch = build_patch(*cfg);
    } catch (const WindowExceeded& e) {
        std::cerr << path << ": generator: " << e.what() << "\n";
        return kWindowError;
    } catch (const Error& e) {
        std::cerr << path << ": /generator: " << e.what() << "\n";
        return kConfigError;
    }

    SpectrumCache cache(out / "cache", !no_cache);
    RunContext ctx{*cfg, patch, SpectrumCache::context(to_json(patch).dump(), cfg->operator_json.dump()), cache, threads,
                   seed};
    std::vector<AnalysisOutcome> outcomes(cfg->analyses.size());
    parallel_for(cfg->analyses.size(), threads,
                 [&](std::size_t i) { outcomes[i] = run_analysis(cfg->analyses[i], ctx); });

    // Single writer, config order.
    const int code = combined_exit_code(outcomes);
    json analyses = json::array();
    for (const auto& o : outcomes) {
        json files = json::array();
        for (const auto& f : o.files) {
            if (!write_file(out / f.name, f.content)) {
                std::cerr << "cannot write " << (out / f.name).string() << "\n";
                return kConfigError;
            }
            files.push_back(f.name);
        }
        if (!o.error.empty()) std::cerr << "analysis '" << o.name << "': " << o.error << "\n";
        else if (o.violations) std::cerr << "analysis '" << o.name << "': " << o.violations << " property violations\n";
        analyses.push_back({{"name", o.name},
                            {"exit_code", o.exit_code},
                            {"error", o.error},
                            {"violations", o.violations},
                            {"files", files},
                            {"summary", o.summary},
                            {"wall_clock_s", o.seconds}});
    }

    const std::size_t lookups = cache.hits() + cache.misses();
    const double rate = lookups ? static_cast<double>(cache.hits()) / static_cast<double>(lookups) : 0.0;
    const std::time_t now = std::time(nullptr);
    std::ostringstream stamp;
    stamp << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    std::ifstream cfg_in(path, std::ios::binary);
    std::stringstream cfg_text;
    cfg_text << cfg_in.rdbuf();
    const json manifest = {
        {"tool", "delone-cli"},
        {"versions", build_info()},
        {"config_path", path},
        {"config_hash", hex64(fnv1a64(cfg_text.str()))},
        {"inputs", cfg->raw},
        {"seeds", {{"seed", seed}, {"source", seed_flag ? "flag" : "config"}}},
        {"threads", threads},
        {"output", out.string()},
        {"patch", {{"points", patch.size()}, {"r", patch.r()}, {"R", patch.R()}, {"window", to_json(patch.window())}}},
        {"R_A", cfg->op.range()},
        {"analyses", analyses},
        {"cache", {{"enabled", !no_cache}, {"hits", cache.hits()}, {"misses", cache.misses()},
                   {"repaired", cache.repaired()}, {"hit_rate", rate}}},
        {"started_utc", stamp.str()},
        {"wall_clock_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
        {"exit_code", code}};
    write_file(out / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "cache: " << cache.hits() << " hits, " << cache.misses() << " misses ("
              << std::fixed << std::setprecision(1) << 100.0 * rate << "% hits)\n";
    std::cout << "wrote " << out.string() << " (exit " << code << ")\n";
    return code;
}

int cmd_render(const std::string& path, const std::string& svg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << path << ": cannot read result file\n";
        return kConfigError;
    }
    try {
        const json r = json::parse(in);
        if (!write_file(svg, render_result(r))) {
            std::cerr << svg << ": cannot write\n";
            return kConfigError;
        }
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integrated density of states of finite-range operators on Delone sets"};
    app.require_subcommand(1);

    std::string run_config, run_out;
    int run_threads = 0;
    std::uint64_t run_seed = 0;
    bool no_cache = false;
    auto* run = app.add_subcommand("run", "Run the analyses of a config file");
    run->add_option("config,--config", run_config, "Experiment config (JSON)");
    run->add_option("--out", run_out, "Output directory (overrides the config)");
    run->add_option("--threads", run_threads, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
    auto* seed_opt = run->add_option("--seed", run_seed, "Seed for randomized checks (overrides the config)");
    run->add_flag("--no-cache", no_cache, "Do not read or write the spectrum cache");

    std::string val_config;
    auto* val = app.add_subcommand("validate", "Check a config file against the schema");
    val->add_option("config", val_config, "Experiment config (JSON)")->required();

    std::string render_in, render_svg;
    auto* render = app.add_subcommand("render", "Plot a result JSON as SVG");
    render->add_option("result", render_in, "Result JSON (ids.json, decomposition_*.json, distribution)")->required();
    render->add_option("--svg", render_svg, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    if (run->parsed()) {
        if (run_config.empty()) {
            std::cerr << "run: a config file is required\n";
            return kConfigError;
        }
        return cmd_run(run_config, run_out, run_threads,
                       seed_opt->count() ? std::optional<std::uint64_t>(run_seed) : std::nullopt, no_cache);
    }
    if (val->parsed()) return cmd_validate(val_config);
    return cmd_render(render_in, render_svg);
}
