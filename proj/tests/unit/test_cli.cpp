#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <delone/counting.hpp>
#include <delone/generators.hpp>

#include "analyses.hpp"
#include "cache.hpp"
#include "config.hpp"
#include "json_lines.hpp"

namespace fs = std::filesystem;
using namespace delone;
using namespace delone::cli;

namespace {

const fs::path kConfigs = DELONE_CONFIG_DIR;

fs::path scratch_root() { return fs::temp_directory_path() / ("delone_cli_" + std::to_string(::getpid())); }

struct ScratchCleanup : ::testing::Environment {
    void TearDown() override { fs::remove_all(scratch_root()); }
};
const auto* const kCleanup = ::testing::AddGlobalTestEnvironment(new ScratchCleanup);

fs::path scratch(const std::string& name) {
    const fs::path p = scratch_root() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

struct CliRun {
    int code = -1;
    std::string out, err;
};

// Runs the CLI with stdout and stderr captured in files next to `dir`.
CliRun invoke(const std::string& args, const fs::path& dir) {
    const fs::path o = dir / "stdout.txt", e = dir / "stderr.txt";
    const std::string cmd = std::string("\"") + DELONE_CLI_PATH + "\" " + args + " >\"" + o.string() + "\" 2>\"" +
                            e.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

// A config from the repository, rewritten by `edit`.
fs::path edited(const std::string& name, const fs::path& dir, const std::function<void(json&)>& edit) {
    json j = read_json(kConfigs / name);
    edit(j);
    const fs::path p = dir / name;
    write(p, j.dump(2) + "\n");
    return p;
}

}  // namespace

TEST(Config, ParsesRepositoryConfigs) {
    for (const auto& e : fs::directory_iterator(kConfigs)) {
        ConfigDiagnostic d;
        const auto cfg = load_config(e.path().string(), d);
        ASSERT_TRUE(cfg.has_value()) << e.path() << ": " << d.message;
        EXPECT_FALSE(cfg->analyses.empty());
    }
}

TEST(Config, Defaults) {
    const json j = {{"generator", {{"kind", "lattice"}, {"window", {{"type", "interval"}, {"lo", 0}, {"hi", 10}}}}},
                    {"operator", {{"kernels", {{{"type", "adjacency"}, {"hop_radius", 1}}}}}},
                    {"analyses", {"checks"}}};
    const ExperimentConfig cfg = parse_config(j);
    EXPECT_EQ(cfg.seed, 0u);
    EXPECT_EQ(cfg.threads, 1);
    EXPECT_EQ(cfg.output, "out");
    EXPECT_DOUBLE_EQ(cfg.op.range(), 1.5);
    EXPECT_EQ(cfg.checks.trials, 100);
    EXPECT_TRUE(cfg.wants("checks"));
    EXPECT_FALSE(cfg.wants("ids"));
    EXPECT_EQ(known_analyses().size(), 6u);
}

TEST(Config, ErrorsCarryPointers) {
    auto pointer_of = [](json j) {
        try {
            parse_config(j);
        } catch (const ConfigError& e) {
            return e.pointer();
        }
        return std::string("<none>");
    };
    const json base = {{"generator", {{"kind", "lattice"}, {"window", {{"type", "interval"}, {"lo", 0}, {"hi", 10}}}}},
                       {"operator", {{"kernels", {{{"type", "adjacency"}, {"hop_radius", 1}}}}}},
                       {"analyses", {"checks"}}};
    json j = base;
    j["generator"]["kind"] = "penrose";
    EXPECT_EQ(pointer_of(j), "/generator/kind");
    j = base;
    j["operator"]["kernels"][0]["hop_radius"] = -1;
    EXPECT_EQ(pointer_of(j), "/operator/kernels/0/hop_radius");
    j = base;
    j["analyses"] = {"checks", "spectra"};
    EXPECT_EQ(pointer_of(j), "/analyses/1");
    j = base;
    j["analyses"] = {"ids"};
    EXPECT_EQ(pointer_of(j), "/sequence");
    j = base;
    j["colour"] = 1;
    EXPECT_EQ(pointer_of(j), "/colour");
    j = base;
    j["operator"]["range"] = 0.5;  // shorter than the hop
    EXPECT_EQ(pointer_of(j), "/operator/range");
}

TEST(Config, DiagnosticLine) {
    const fs::path dir = scratch("diag");
    write(dir / "bad.json", "{\n  \"generator\": {\n    \"kind\": \"lattice\",\n    \"windw\": 3\n  }\n}\n");
    ConfigDiagnostic d;
    EXPECT_FALSE(load_config((dir / "bad.json").string(), d).has_value());
    EXPECT_EQ(d.line, 4);
    EXPECT_EQ(d.pointer, "/generator/windw");
    write(dir / "syntax.json", "{\n  \"seed\": 1,\n  \"generator\": [1, 2,,]\n}\n");
    EXPECT_FALSE(load_config((dir / "syntax.json").string(), d).has_value());
    EXPECT_EQ(d.line, 3);
    EXPECT_NE(d.message.find("syntax"), std::string::npos);
}

TEST(JsonLinesTest, PointersAndEscapes) {
    const std::string text = "{\n  \"a\": {\n    \"b/c\": [\n      1,\n      {\"d~\": 2}\n    ]\n  }\n}\n";
    const JsonLines lines(text);
    EXPECT_EQ(lines.line_of(""), 1);
    EXPECT_EQ(lines.line_of("/a"), 2);
    EXPECT_EQ(lines.line_of("/a/b~1c"), 3);
    EXPECT_EQ(lines.line_of("/a/b~1c/0"), 4);
    EXPECT_EQ(lines.line_of("/a/b~1c/1/d~0"), 5);
    EXPECT_EQ(lines.line_of("/a/missing"), 2);  // nearest ancestor
    EXPECT_EQ(pointer_escape("b/c~"), "b~1c~0");
    EXPECT_EQ(line_at("x\ny\nz", 4), 3);
}

TEST(Cache, HitMissAndRepair) {
    const fs::path dir = scratch("cache_unit");
    const auto w = generate(integer_lattice_spec(1, Region::interval(-40, 40)));
    const auto a = FiniteRangeOperator::adjacency(1.1);
    const Region q = Region::interval(-20, 20);
    const AssembledMatrix m = assemble(a, w, q);
    const std::string ctx = SpectrumCache::context(to_json(w).dump(), "{\"hop\":1.1}");
    const StepDistribution exact = counting_function(m);
    {
        SpectrumCache c(dir, true);
        EXPECT_EQ(sup_distance(c.counting(m, q, ctx), exact), 0.0);
        EXPECT_EQ(sup_distance(c.counting(m, q, ctx), exact), 0.0);
        EXPECT_EQ(c.misses(), 1u);
        EXPECT_EQ(c.hits(), 1u);
    }
    const fs::path entry = dir / (SpectrumCache::key(ctx, q) + ".json");
    ASSERT_TRUE(fs::exists(entry));
    std::string text = slurp(entry);
    text[text.size() / 2] = text[text.size() / 2] == '1' ? '2' : '1';
    write(entry, text);
    SpectrumCache c(dir, true);
    EXPECT_EQ(sup_distance(c.counting(m, q, ctx), exact), 0.0);
    EXPECT_EQ(c.repaired(), 1u);
    EXPECT_EQ(c.hits(), 0u);
    // The rewritten entry is sound again.
    SpectrumCache again(dir, true);
    again.counting(m, q, ctx);
    EXPECT_EQ(again.hits(), 1u);
    // Different contexts and regions get different keys.
    EXPECT_NE(SpectrumCache::key(ctx, q), SpectrumCache::key(ctx, Region::interval(-20, 21)));
    EXPECT_NE(SpectrumCache::key(ctx, q), SpectrumCache::key(SpectrumCache::context("a", "b"), q));
}

TEST(ExitCodes, SmallestNonzeroWins) {
    auto outcome = [](int code) {
        AnalysisOutcome o;
        o.exit_code = code;
        return o;
    };
    EXPECT_EQ(combined_exit_code({}), kOk);
    EXPECT_EQ(combined_exit_code({outcome(kOk), outcome(kOk)}), kOk);
    EXPECT_EQ(combined_exit_code({outcome(kViolation), outcome(kOk)}), kViolation);
    EXPECT_EQ(combined_exit_code({outcome(kViolation), outcome(kWindowError)}), kWindowError);
    EXPECT_EQ(combined_exit_code({outcome(kWindowError), outcome(kConfigError), outcome(kViolation)}), kConfigError);
}

TEST(EndToEnd, IdsWritesAllOutputs) {
    const fs::path dir = scratch("ids");
    const CliRun r = invoke("run \"" + (kConfigs / "z_ids.json").string() + "\" --out \"" + (dir / "out").string() + "\"", dir);
    ASSERT_EQ(r.code, 0) << r.err;
    for (int k = 0; k < 5; ++k) {
        const std::string csv = slurp(dir / "out" / ("ids_" + std::to_string(k) + ".csv"));
        EXPECT_EQ(csv.rfind("# seed=1 k=" + std::to_string(k), 0), 0u) << csv.substr(0, 80);
        EXPECT_NE(csv.find("\nE,value\n"), std::string::npos);
    }
    const std::string cauchy = slurp(dir / "out" / "cauchy.csv");
    EXPECT_NE(cauchy.find("k,L_k,value_norm,distance_to_previous"), std::string::npos);
    const json ids = read_json(dir / "out" / "ids.json");
    ASSERT_EQ(ids.at("cauchy").size(), 4u);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_LT(ids["cauchy"][k].get<double>(), ids["cauchy"][k - 1].get<double>());
    const json man = read_json(dir / "out" / "manifest.json");
    EXPECT_EQ(man.at("exit_code"), 0);
    EXPECT_EQ(man.at("seeds").at("seed"), 1);
    EXPECT_TRUE(man.at("versions").contains("eigen"));
    EXPECT_EQ(man.at("analyses")[0].at("files").size(), 8u);
    EXPECT_TRUE(fs::exists(dir / "out" / "ids.svg"));
}

TEST(EndToEnd, FrequencyRows) {
    const fs::path dir = scratch("freq");
    const CliRun r =
        invoke("run \"" + (kConfigs / "fibonacci_freq.json").string() + "\" --out \"" + (dir / "out").string() + "\"", dir);
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(slurp(dir / "out" / "freq.csv"));
    std::string line;
    int rows = 0;
    double total = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("class,", 0) == 0) continue;
        ++rows;
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        ASSERT_GE(cols.size(), 6u);
        total += std::stod(cols[5]);
    }
    EXPECT_EQ(rows, 3);
    // The three most common 1.3-balls of the chain are all there is.
    EXPECT_NEAR(total, 1.1708, 0.01);
}

TEST(EndToEnd, ChecksDeterministicUnderSeed) {
    const fs::path dir = scratch("checks");
    const std::string cfg = "\"" + (kConfigs / "checks.json").string() + "\"";
    const CliRun a = invoke("run " + cfg + " --seed 42 --out \"" + (dir / "a").string() + "\"", dir);
    const CliRun b = invoke("run " + cfg + " --seed 42 --out \"" + (dir / "b").string() + "\" --threads 2", dir);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(slurp(dir / "a" / "checks.json"), slurp(dir / "b" / "checks.json"));
    const json rep = read_json(dir / "a" / "checks.json");
    EXPECT_EQ(rep.at("total_violations"), 0);
    EXPECT_EQ(rep.at("additivity").at("ids").at("a1_violations"), 0);
    const CliRun c = invoke("run " + cfg + " --seed 43 --out \"" + (dir / "c").string() + "\"", dir);
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(slurp(dir / "a" / "checks.json"), slurp(dir / "c" / "checks.json"));
    EXPECT_EQ(read_json(dir / "c" / "manifest.json").at("seeds").at("source"), "flag");
}

TEST(EndToEnd, CacheReuseInvalidationAndRepair) {
    const fs::path dir = scratch("cache");
    const fs::path out = dir / "out";
    const std::string cfg = "\"" + (kConfigs / "z_ids.json").string() + "\"";
    ASSERT_EQ(invoke("run " + cfg + " --out \"" + out.string() + "\"", dir).code, 0);
    const std::string first = slurp(out / "ids_4.csv");
    const std::string first_json = slurp(out / "ids.json");

    ASSERT_EQ(invoke("run " + cfg + " --out \"" + out.string() + "\"", dir).code, 0);
    const json c2 = read_json(out / "manifest.json").at("cache");
    EXPECT_GE(c2.at("hit_rate").get<double>(), 0.8);
    EXPECT_EQ(slurp(out / "ids_4.csv"), first);

    // Another hopping radius is another operator: nothing may be reused.
    const fs::path hop = edited("z_ids.json", dir, [](json& j) { j["operator"]["kernels"][0]["hop_radius"] = 1.05; });
    ASSERT_EQ(invoke("run \"" + hop.string() + "\" --out \"" + out.string() + "\"", dir).code, 0);
    EXPECT_EQ(read_json(out / "manifest.json").at("cache").at("hits"), 0);

    // Damage every entry of the original run.
    ASSERT_EQ(invoke("run " + cfg + " --out \"" + out.string() + "\"", dir).code, 0);
    std::size_t damaged = 0;
    for (const auto& e : fs::directory_iterator(out / "cache")) {
        write(e.path(), "{\"key\": \"garbage\"");
        ++damaged;
    }
    const CliRun r = invoke("run " + cfg + " --out \"" + out.string() + "\"", dir);
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("corrupt cache entry"), std::string::npos);
    const json c5 = read_json(out / "manifest.json").at("cache");
    EXPECT_EQ(c5.at("hits"), 0);
    EXPECT_GT(c5.at("repaired").get<std::size_t>(), 0u);
    EXPECT_EQ(c5.at("repaired"), c5.at("misses"));
    EXPECT_LE(c5.at("repaired").get<std::size_t>(), damaged);
    EXPECT_EQ(slurp(out / "ids_4.csv"), first);

    // Cleared cache and --no-cache both reproduce the outputs byte for byte.
    fs::remove_all(out / "cache");
    ASSERT_EQ(invoke("run " + cfg + " --out \"" + out.string() + "\"", dir).code, 0);
    EXPECT_EQ(slurp(out / "ids_4.csv"), first);
    EXPECT_EQ(slurp(out / "ids.json"), first_json);
    ASSERT_EQ(invoke("run " + cfg + " --no-cache --out \"" + (dir / "nc").string() + "\"", dir).code, 0);
    EXPECT_EQ(slurp(dir / "nc" / "ids.json"), first_json);
    EXPECT_FALSE(fs::exists(dir / "nc" / "cache"));
}

TEST(EndToEnd, ConfigErrorExitTwo) {
    const fs::path dir = scratch("err2");
    write(dir / "bad.json",
          "{\n  \"generator\": {\"kind\": \"lattice\", \"window\": {\"type\": \"interval\", \"lo\": 0, \"hi\": 9}},\n"
          "  \"operator\": {\"kernels\": [{\"type\": \"adjacency\", \"hop_radius\": 1}]},\n"
          "  \"analyses\": [\"ids\", \"spectra\"]\n}\n");
    const CliRun r = invoke("run \"" + (dir / "bad.json").string() + "\"", dir);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.json:4: /analyses/1: unknown analysis 'spectra'"), std::string::npos) << r.err;
    const CliRun v = invoke("validate \"" + (dir / "bad.json").string() + "\"", dir);
    EXPECT_EQ(v.code, 2);
    EXPECT_EQ(invoke("run \"" + (dir / "missing.json").string() + "\"", dir).code, 2);
    EXPECT_EQ(invoke("frobnicate", dir).code, 2);
}

TEST(EndToEnd, WindowErrorExitThree) {
    const fs::path dir = scratch("err3");
    const fs::path cfg = edited("z_ids.json", dir, [](json& j) {
        j["generator"]["window"] = {{"type", "interval"}, {"lo", -300}, {"hi", 300}};
    });
    const CliRun r = invoke("run \"" + cfg.string() + "\" --out \"" + (dir / "out").string() + "\"", dir);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("window exceeded"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("k=4"), std::string::npos) << r.err;
    EXPECT_EQ(read_json(dir / "out" / "manifest.json").at("exit_code"), 3);
}

TEST(EndToEnd, ValidateAndRender) {
    const fs::path dir = scratch("render");
    const CliRun v = invoke("validate \"" + (kConfigs / "dimer_jumps.json").string() + "\"", dir);
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("ok (1 analyses)"), std::string::npos);
    ASSERT_EQ(invoke("run \"" + (kConfigs / "z2_decompose.json").string() + "\" --out \"" + (dir / "out").string() + "\"", dir).code, 0);
    ASSERT_EQ(invoke("render \"" + (dir / "out" / "decomposition_0.json").string() + "\" --svg \"" +
                      (dir / "d.svg").string() + "\"",
                  dir)
                  .code,
              0);
    EXPECT_EQ(slurp(dir / "d.svg"), slurp(dir / "out" / "decomposition_0.svg"));
    write(dir / "junk.json", "{\"nothing\": 1}");
    EXPECT_EQ(invoke("render \"" + (dir / "junk.json").string() + "\" --svg \"" + (dir / "j.svg").string() + "\"", dir).code, 2);
}

TEST(EndToEnd, JumpsCertificate) {
    const fs::path dir = scratch("jumps");
    const CliRun r = invoke("run \"" + (kConfigs / "dimer_jumps.json").string() + "\" --out \"" + (dir / "out").string() + "\"", dir);
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = read_json(dir / "out" / "jumps.json");
    ASSERT_FALSE(j.at("jumps").empty());
    bool at_minus_one = false;
    for (const auto& jump : j.at("jumps")) {
        EXPECT_LE(jump.at("state_density").get<double>(), jump.at("height").get<double>() + 1e-9);
        if (std::abs(jump.at("energy").get<double>() + 1.0) < 1e-9) {
            at_minus_one = true;
            EXPECT_GT(jump.at("independent_in_region").get<long>(), 0);
        }
    }
    EXPECT_TRUE(at_minus_one);
}
