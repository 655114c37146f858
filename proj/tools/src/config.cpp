#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json_lines.hpp"

namespace delone::cli {

namespace {

// Read access to one object of the config, reporting failures by pointer.
class Node {
  public:
    Node(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
        if (!j_.is_object()) fail("expected an object");
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(ptr_, msg); }
    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        throw ConfigError(ptr_ + "/" + pointer_escape(key), msg);
    }

    const std::string& ptr() const { return ptr_; }
    std::string ptr(const std::string& key) const { return ptr_ + "/" + pointer_escape(key); }
    bool has(const char* key) const { return j_.contains(key); }
    const json& raw(const char* key) const { return j_.at(key); }

    void allow(std::initializer_list<const char*> keys) const {
        for (const auto& [k, v] : j_.items())
            if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
                fail(k, "unknown field '" + k + "'");
    }

    Node object(const char* key) const {
        if (!has(key)) fail(key, std::string("missing required field '") + key + "'");
        return Node(j_.at(key), ptr(key));
    }

    double number(const char* key, std::optional<double> def = std::nullopt) const {
        if (!has(key)) {
            if (def) return *def;
            fail(key, std::string("missing required field '") + key + "'");
        }
        const json& v = j_.at(key);
        if (!v.is_number()) fail(key, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(key, "expected a finite number");
        return d;
    }

    double positive(const char* key, std::optional<double> def = std::nullopt) const {
        const double d = number(key, def);
        if (!(d > 0.0)) fail(key, "must be positive");
        return d;
    }

    long integer(const char* key, std::optional<long> def = std::nullopt, long lo = 0, long hi = 1L << 40) const {
        if (!has(key)) {
            if (def) return *def;
            fail(key, std::string("missing required field '") + key + "'");
        }
        const json& v = j_.at(key);
        if (!v.is_number_integer()) fail(key, "expected an integer");
        const long n = v.get<long>();
        if (n < lo || n > hi) fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return n;
    }

    std::string string(const char* key, std::optional<std::string> def = std::nullopt) const {
        if (!has(key)) {
            if (def) return *def;
            fail(key, std::string("missing required field '") + key + "'");
        }
        if (!j_.at(key).is_string()) fail(key, "expected a string");
        return j_.at(key).get<std::string>();
    }

    bool boolean(const char* key, bool def) const {
        if (!has(key)) return def;
        if (!j_.at(key).is_boolean()) fail(key, "expected true or false");
        return j_.at(key).get<bool>();
    }

    Vec vec(const char* key, int dim) const { return vec_at(j_.at(key), ptr(key), dim); }

    static Vec vec_at(const json& v, const std::string& where, int dim) {
        if (!v.is_array() || static_cast<int>(v.size()) != dim)
            throw ConfigError(where, "expected an array of " + std::to_string(dim) + " numbers");
        for (const auto& c : v)
            if (!c.is_number()) throw ConfigError(where, "coordinates must be numbers");
        return {v[0].get<double>(), dim == 2 ? v[1].get<double>() : 0.0};
    }

    std::vector<Vec> vec_list(const char* key, int dim) const {
        const json& v = j_.at(key);
        if (!v.is_array()) fail(key, "expected an array of points");
        std::vector<Vec> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(vec_at(v[i], ptr(key) + "/" + std::to_string(i), dim));
        return out;
    }

    std::vector<double> numbers(const char* key) const {
        const json& v = j_.at(key);
        if (v.is_number()) return {v.get<double>()};
        if (!v.is_array()) fail(key, "expected a number or an array of numbers");
        std::vector<double> out;
        for (const auto& c : v) {
            if (!c.is_number()) fail(key, "expected numbers");
            out.push_back(c.get<double>());
        }
        return out;
    }

    Region region(const char* key) const {
        try {
            return region_from_json(j_.at(key));
        } catch (const json::exception& e) {
            fail(key, std::string("invalid region: ") + e.what());
        } catch (const Error& e) {
            fail(key, std::string("invalid region: ") + e.what());
        }
    }

  private:
    const json& j_;
    std::string ptr_;
};

std::vector<Vec> default_basis(int dim) {
    return dim == 1 ? std::vector<Vec>{{1.0, 0.0}} : std::vector<Vec>{{1.0, 0.0}, {0.0, 1.0}};
}

void parse_generator(const Node& g, ExperimentConfig& cfg) {
    g.allow({"kind", "dimension", "window", "basis", "origin", "dimer_offset", "dimer_moduli", "alpha", "acceptance",
             "phase", "rules", "lengths", "iterations", "seed_word", "start", "shift", "coloring"});
    GeneratorSpec& s = cfg.generator;
    try {
        s.kind = generator_kind_from_string(g.string("kind"));
    } catch (const Error&) {
        g.fail("kind", "unknown generator kind '" + g.string("kind") +
                           "' (expected lattice, dimer-lattice, cut-and-project-1d or substitution-1d)");
    }
    const int dim = static_cast<int>(g.integer("dimension", s.kind == GeneratorKind::dimer_lattice ? 2 : 1, 1, 2));
    s.window = g.region("window");
    if (s.window.dim() != dim) g.fail("window", "window dimension does not match 'dimension'");
    if (!s.window.is_convex() || s.window.is_empty()) g.fail("window", "window must be a nonempty convex region");

    switch (s.kind) {
        case GeneratorKind::lattice:
        case GeneratorKind::dimer_lattice: {
            s.lattice.basis = g.has("basis") ? g.vec_list("basis", dim) : default_basis(dim);
            if (static_cast<int>(s.lattice.basis.size()) != dim) g.fail("basis", "basis needs one vector per dimension");
            s.lattice.origin = g.has("origin") ? g.vec("origin", dim) : Vec{};
            if (s.kind == GeneratorKind::dimer_lattice) {
                if (dim != 2) g.fail("dimension", "dimer-lattice is two-dimensional");
                s.dimer_offset = g.has("dimer_offset") ? g.vec("dimer_offset", 2) : Vec{0.2, 0.0};
                if (g.has("dimer_moduli")) {
                    const json& m = g.raw("dimer_moduli");
                    if (!m.is_array()) g.fail("dimer_moduli", "expected an array of integers");
                    for (const auto& v : m) {
                        if (!v.is_number_integer() || v.get<int>() < 1) g.fail("dimer_moduli", "expected positive integers");
                        s.dimer_selection.moduli.push_back(v.get<int>());
                    }
                }
            }
            break;
        }
        case GeneratorKind::cut_and_project_1d: {
            if (dim != 1) g.fail("dimension", "cut-and-project-1d is one-dimensional");
            const GeneratorSpec fib = fibonacci_cut_project_spec(s.window);
            s.cut_project = fib.cut_project;
            s.cut_project.alpha = g.number("alpha", fib.cut_project.alpha);
            if (g.has("acceptance")) {
                const auto w = g.numbers("acceptance");
                if (w.size() != 2 || !(w[0] < w[1])) g.fail("acceptance", "expected [lo, hi] with lo < hi");
                s.cut_project.window_lo = w[0];
                s.cut_project.window_hi = w[1];
            }
            s.cut_project.phase = g.number("phase", 0.0);
            break;
        }
        case GeneratorKind::substitution_1d: {
            if (dim != 1) g.fail("dimension", "substitution-1d is one-dimensional");
            const GeneratorSpec fib = fibonacci_substitution_spec(s.window, 0);
            s.substitution = fib.substitution;
            if (g.has("rules")) {
                const json& r = g.raw("rules");
                if (!r.is_object() || r.empty()) g.fail("rules", "expected an object letter -> word");
                s.substitution.rules.clear();
                s.substitution.lengths.clear();
                for (const auto& [k, v] : r.items()) {
                    if (k.size() != 1 || !v.is_string() || v.get<std::string>().empty())
                        g.fail("rules", "each rule maps a single letter to a nonempty word");
                    s.substitution.rules[k[0]] = v.get<std::string>();
                }
                s.substitution.seed = std::string(1, s.substitution.rules.begin()->first);
            }
            if (g.has("lengths")) {
                const json& l = g.raw("lengths");
                if (!l.is_object()) g.fail("lengths", "expected an object letter -> length");
                s.substitution.lengths.clear();
                for (const auto& [k, v] : l.items()) {
                    if (k.size() != 1 || !v.is_number() || !(v.get<double>() > 0.0))
                        g.fail("lengths", "each length maps a letter to a positive number");
                    s.substitution.lengths[k[0]] = v.get<double>();
                }
            }
            for (const auto& [letter, word] : s.substitution.rules)
                for (char c : word)
                    if (!s.substitution.rules.count(c))
                        g.fail("rules", std::string("letter '") + c + "' has no rule");
            s.substitution.seed = g.string("seed_word", s.substitution.seed);
            s.substitution.origin = g.number("start", 0.0);
            s.substitution.shift = g.number("shift", 0.0);
            if (g.has("iterations")) {
                s.substitution.iterations = static_cast<int>(g.integer("iterations", std::nullopt, 1, 60));
            } else {
                // Smallest iteration count whose chain reaches past the window.
                std::map<char, double> len = s.substitution.lengths;
                if (len.empty()) len = perron_lengths(s.substitution);
                const double need = s.window.hi() + s.substitution.shift - s.substitution.origin + 1.0;
                std::map<char, double> total;  // chain length of sigma^n(c)
                for (const auto& [c, w] : s.substitution.rules) total[c] = len[c];
                int it = 0;
                auto chain = [&] {
                    double t = 0.0;
                    for (char c : s.substitution.seed) t += total[c];
                    return t;
                };
                while (chain() < need && it < 60) {
                    std::map<char, double> next;
                    for (const auto& [c, w] : s.substitution.rules) {
                        double t = 0.0;
                        for (char x : w) t += total[x];
                        next[c] = t;
                    }
                    total = std::move(next);
                    ++it;
                }
                s.substitution.iterations = std::max(it, 1);
            }
            break;
        }
    }

    if (g.has("coloring")) {
        const Node c = g.object("coloring");
        c.allow({"l", "basis"});
        cfg.color_l = static_cast<int>(c.integer("l", std::nullopt, 1, 1000));
        cfg.color_basis = c.has("basis") ? c.vec_list("basis", dim)
                          : s.kind == GeneratorKind::lattice ? s.lattice.basis
                                                              : default_basis(dim);
    }
}

void parse_operator(const Node& o, ExperimentConfig& cfg, int dim) {
    o.allow({"range", "kernels"});
    if (!o.has("kernels") || !o.raw("kernels").is_array() || o.raw("kernels").empty())
        o.fail("kernels", "expected a nonempty array of kernel declarations");
    const json& ks = o.raw("kernels");
    double reach = 0.0;
    std::vector<std::pair<Node, std::string>> nodes;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        Node k(ks[i], o.ptr("kernels") + "/" + std::to_string(i));
        const std::string type = k.string("type");
        if (type == "adjacency" || type == "laplacian") {
            k.allow({"type", "hop_radius", "value"});
            reach = std::max(reach, k.positive("hop_radius"));
        } else if (type == "onsite") {
            k.allow({"type", "value"});
        } else if (type == "pattern_potential") {
            k.allow({"type", "radius", "support", "table", "fallback", "match_tol"});
            reach = std::max(reach, k.positive("radius"));
        } else {
            k.fail("type", "unknown kernel '" + type + "' (expected adjacency, laplacian, onsite or pattern_potential)");
        }
        nodes.emplace_back(k, type);
    }
    const double range = o.has("range") ? o.positive("range") : reach > 0.0 ? default_range(reach) : 1.0;
    FiniteRangeOperator a(range);
    for (auto& [k, type] : nodes) {
        if (type == "adjacency") {
            a.add(HoppingTerm{k.positive("hop_radius"), k.number("value", 1.0)});
        } else if (type == "laplacian") {
            a.add(LaplacianTerm{k.positive("hop_radius")});
        } else if (type == "onsite") {
            a.add(OnsiteTerm{k.number("value")});
        } else {
            PatternPotentialTerm t;
            t.radius = k.positive("radius");
            const std::string sup = k.string("support", "ball");
            if (sup == "ball") t.support = PatternPotentialTerm::Support::ball;
            else if (sup == "forward" && dim == 1) t.support = PatternPotentialTerm::Support::forward;
            else k.fail("support", "expected 'ball' or, in d = 1, 'forward'");
            t.fallback = k.number("fallback", 0.0);
            t.match_tol = k.positive("match_tol", 1e-6);
            if (!k.has("table") || !k.raw("table").is_array()) k.fail("table", "expected an array of {points, value}");
            const json& tab = k.raw("table");
            for (std::size_t e = 0; e < tab.size(); ++e) {
                Node en(tab[e], k.ptr("table") + "/" + std::to_string(e));
                en.allow({"points", "value"});
                if (!en.has("points")) en.fail("points", "missing required field 'points'");
                t.table.push_back({en.vec_list("points", dim), en.number("value")});
            }
            a.add(std::move(t));
        }
    }
    try {
        a.validate();
    } catch (const Error& e) {
        o.fail("range", e.what());
    }
    cfg.op = std::move(a);
}

PatternClass parse_class(const Node& n, int dim) {
    n.allow({"points", "support", "colors"});
    if (!n.has("points")) n.fail("points", "missing required field 'points'");
    std::vector<Vec> pts = n.vec_list("points", dim);
    if (pts.empty()) n.fail("points", "a pattern class needs at least one point");
    Region sup = n.has("support") ? n.region("support") : Region::empty(dim);
    if (!n.has("support")) n.fail("support", "missing required field 'support'");
    std::vector<int> colors;
    if (n.has("colors")) {
        const json& c = n.raw("colors");
        if (!c.is_array() || c.size() != pts.size()) n.fail("colors", "one integer color per point");
        colors = c.get<std::vector<int>>();
    }
    try {
        return PatternClass::of(make_pattern(std::move(pts), std::move(sup), std::move(colors)));
    } catch (const Error& e) {
        n.fail(e.what());
    }
}

}  // namespace

const std::vector<std::string>& known_analyses() {
    static const std::vector<std::string> names{"ids", "freq", "decompose", "checks", "jumps", "uniformity"};
    return names;
}

bool ExperimentConfig::wants(const std::string& a) const {
    return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
}

ExperimentConfig parse_config(const json& j) {
    const Node root(j, "");
    root.allow({"seed", "output", "threads", "generator", "operator", "sequence", "analyses", "ids", "freq", "decompose",
                "checks", "jumps", "uniformity", "description"});
    ExperimentConfig cfg;
    cfg.raw = j;
    cfg.seed = static_cast<std::uint64_t>(root.integer("seed", 0, 0));
    cfg.output = root.string("output", "out");
    cfg.threads = static_cast<int>(root.integer("threads", 1, 1, 256));

    parse_generator(root.object("generator"), cfg);
    cfg.generator_json = j.at("generator");
    const int dim = cfg.generator.window.dim();
    parse_operator(root.object("operator"), cfg, dim);
    cfg.operator_json = j.at("operator");

    if (!root.has("analyses") || !j.at("analyses").is_array() || j.at("analyses").empty())
        root.fail("analyses", "expected a nonempty array of analysis names");
    for (std::size_t i = 0; i < j.at("analyses").size(); ++i) {
        const json& a = j.at("analyses")[i];
        const std::string where = "/analyses/" + std::to_string(i);
        if (!a.is_string()) throw ConfigError(where, "analysis names are strings");
        const std::string name = a.get<std::string>();
        const auto& known = known_analyses();
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw ConfigError(where, "unknown analysis '" + name + "' (expected ids, freq, decompose, checks, jumps or uniformity)");
        if (cfg.wants(name)) throw ConfigError(where, "analysis '" + name + "' listed twice");
        cfg.analyses.push_back(name);
    }

    if (root.has("sequence")) {
        const Node s = root.object("sequence");
        s.allow({"L0", "count", "growth", "center"});
        SequenceConfig sc;
        sc.l0 = s.positive("L0");
        sc.count = static_cast<int>(s.integer("count", std::nullopt, 1, 64));
        sc.growth = s.number("growth", 2.0);
        if (!(sc.growth > 1.0)) s.fail("growth", "must exceed 1");
        if (s.has("center")) {
            sc.center = s.vec("center", dim);
        } else {
            const Bounds b = cfg.generator.window.bounds();
            sc.center = {0.5 * (b.lo.x + b.hi.x), dim == 2 ? 0.5 * (b.lo.y + b.hi.y) : 0.0};
        }
        cfg.sequence = sc;
    }
    for (const char* needs : {"ids", "freq", "uniformity"})
        if (cfg.wants(needs) && !cfg.sequence)
            root.fail("sequence", std::string("analysis '") + needs + "' needs a 'sequence' block");

    if (root.has("ids")) {
        const Node n = root.object("ids");
        n.allow({"svg"});
        cfg.ids.svg = n.boolean("svg", true);
    }
    if (cfg.wants("freq")) {
        const Node n = root.object("freq");
        n.allow({"classes", "census_radius", "census_count"});
        if (n.has("classes")) {
            const json& cs = n.raw("classes");
            if (!cs.is_array() || cs.empty()) n.fail("classes", "expected a nonempty array of pattern classes");
            for (std::size_t i = 0; i < cs.size(); ++i)
                cfg.freq.classes.push_back(parse_class(Node(cs[i], n.ptr("classes") + "/" + std::to_string(i)), dim));
        } else if (n.has("census_radius")) {
            cfg.freq.census_radius = n.positive("census_radius");
            cfg.freq.census_count = static_cast<int>(n.integer("census_count", 3, 1, 100000));
        } else {
            n.fail("needs 'classes' or 'census_radius'");
        }
    }
    if (cfg.wants("decompose")) {
        const Node n = root.object("decompose");
        n.allow({"s", "region"});
        if (!n.has("s")) n.fail("s", "missing required field 's'");
        cfg.decompose.radii = n.numbers("s");
        if (cfg.decompose.radii.empty()) n.fail("s", "expected at least one radius");
        for (double s : cfg.decompose.radii)
            if (!(s > 0.0)) n.fail("s", "radii must be positive");
        if (n.has("region")) cfg.decompose.region = n.region("region");
    }
    if (root.has("checks")) {
        const Node n = root.object("checks");
        n.allow({"trials", "functions", "box", "rank_trials", "max_n"});
        cfg.checks.trials = static_cast<int>(n.integer("trials", 100, 1, 100000));
        cfg.checks.rank_trials = static_cast<int>(n.integer("rank_trials", 200, 0, 1000000));
        cfg.checks.max_n = static_cast<int>(n.integer("max_n", 50, 2, 400));
        if (n.has("functions")) {
            const json& f = n.raw("functions");
            if (!f.is_array()) n.fail("functions", "expected an array of names");
            cfg.checks.functions.clear();
            for (const auto& v : f) {
                const std::string s = v.is_string() ? v.get<std::string>() : "";
                if (s != "volume" && s != "point_count" && s != "ids")
                    n.fail("functions", "expected names among volume, point_count, ids");
                cfg.checks.functions.push_back(s);
            }
        }
        if (n.has("box")) cfg.checks.box = n.region("box");
    }
    if (root.has("jumps")) {
        const Node n = root.object("jumps");
        n.allow({"theta", "rho", "delta", "energies", "region"});
        cfg.jumps.theta = n.positive("theta", 0.1);
        cfg.jumps.rho = n.positive("rho", 0.3);
        cfg.jumps.delta = n.positive("delta", 1e-6);
        if (n.has("energies")) cfg.jumps.energies = n.numbers("energies");
        if (n.has("region")) cfg.jumps.region = n.region("region");
    }
    if (cfg.wants("jumps") && !cfg.jumps.region && !cfg.sequence)
        root.fail("jumps", "analysis 'jumps' needs a 'region' or a 'sequence' block");
    if (root.has("uniformity")) {
        const Node n = root.object("uniformity");
        n.allow({"samples"});
        cfg.uniformity.samples = static_cast<int>(n.integer("samples", 20, 2, 10000));
    }
    return cfg;
}

std::optional<ExperimentConfig> load_config(const std::string& path, ConfigDiagnostic& diag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        diag = {0, "", "cannot read config file"};
        return std::nullopt;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        diag = {line_at(text, e.byte > 0 ? e.byte - 1 : 0), "", std::string("JSON syntax error: ") + e.what()};
        return std::nullopt;
    }
    try {
        return parse_config(j);
    } catch (const ConfigError& e) {
        diag = {JsonLines(text).line_of(e.pointer()), e.pointer().empty() ? "/" : e.pointer(), e.what()};
        return std::nullopt;
    }
}

DelonePatch decorate(const ExperimentConfig& cfg, DelonePatch w) {
    if (cfg.color_l > 1) return color_grid(w, {cfg.color_basis, cfg.color_l});
    return w;
}

DelonePatch build_patch(const ExperimentConfig& cfg) { return decorate(cfg, generate(cfg.generator)); }

VanHoveSequence build_sequence(const ExperimentConfig& cfg, int dim) {
    const SequenceConfig& s = *cfg.sequence;
    return VanHoveSequence::centered_boxes(dim, s.center, s.l0, s.count, s.growth);
}

}  // namespace delone::cli
