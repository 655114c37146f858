#include "analyses.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <delone/counting.hpp>
#include <delone/ergodic.hpp>
#include <delone/spectral.hpp>

#include "pool.hpp"

namespace delone::cli {

namespace {

// Window failure with the analysis-level context already in the message.
class WindowError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string region_text(const Region& q) { return to_json(q).dump(); }

double side_length(const Region& q) {
    const Bounds b = q.bounds();
    return b.hi.x - b.lo.x;
}

std::string comment(const RunContext& ctx, const std::string& rest) {
    return "seed=" + std::to_string(ctx.seed) + " " + rest;
}

Vec window_center(const Region& q) {
    const Bounds b = q.bounds();
    return {0.5 * (b.lo.x + b.hi.x), q.dim() == 2 ? 0.5 * (b.lo.y + b.hi.y) : 0.0};
}

std::size_t nearest_point(const DelonePatch& w, Vec c) {
    std::size_t best = 0;
    double dbest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = distance(w.points()[i], c);
        if (d < dbest - 1e-12) {
            dbest = d;
            best = i;
        }
    }
    return best;
}

std::string svg_range_series(const std::vector<Series>& series, const std::string& title) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : series)
        if (!s.f.empty()) {
            lo = std::min(lo, s.f.breakpoints().front());
            hi = std::max(hi, s.f.breakpoints().back());
        }
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    const double pad = 0.05 * std::max(hi - lo, 1.0);
    return staircase_svg(series, lo - pad, hi + pad, title);
}

AnalysisOutcome run_ids(const RunContext& ctx) {
    AnalysisOutcome out;
    const auto& cfg = ctx.cfg;
    const DelonePatch& w = ctx.patch;
    const VanHoveSequence seq = build_sequence(cfg, w.dim());
    const std::size_t n = seq.regions.size();
    std::vector<IdsStep> steps(n);
    const CountingProvider provider = [&](const AssembledMatrix& m, const Region& q) {
        return ctx.cache.counting(m, q, ctx.patch_key);
    };
    parallel_for(n, ctx.threads, [&](std::size_t k) {
        const Region& q = seq.regions[k];
        try {
            steps[k] = ids_step(cfg.op, w, q, provider);
        } catch (const WindowExceeded& e) {
            throw WindowError(std::string(e.what()) + " at k=" + std::to_string(k) + ": region " + region_text(q) +
                              " needs the window to contain " + region_text(dilate(q, cfg.op.range())) +
                              " (R^A = " + format_double(cfg.op.range()) + "), window is " + region_text(w.window()));
        }
    });

    json jsteps = json::array();
    std::string cauchy = "k,L_k,value_norm,distance_to_previous\n";
    std::vector<Series> series;
    std::vector<double> dists;
    for (std::size_t k = 0; k < n; ++k) {
        const IdsStep& s = steps[k];
        const double L = side_length(s.region);
        const std::string head = comment(ctx, "k=" + std::to_string(k) + " L=" + format_double(L) + " sites=" +
                                                  std::to_string(s.sites) + " volume=" + format_double(s.volume) +
                                                  " certificate=" + format_double(s.certificate_lhs) +
                                                  "<=" + format_double(s.certificate_rhs));
        out.files.push_back({"ids_" + std::to_string(k) + ".csv", distribution_csv(s.normalized, head)});
        std::string dist;
        if (k > 0) {
            const double d = sup_distance(s.normalized, steps[k - 1].normalized);
            dists.push_back(d);
            dist = format_double(d);
        }
        cauchy += std::to_string(k) + "," + format_double(L) + "," + format_double(s.normalized.sup_norm()) + "," +
                  dist + "\n";
        jsteps.push_back({{"k", k},
                          {"L", L},
                          {"region", to_json(s.region)},
                          {"sites", s.sites},
                          {"volume", s.volume},
                          {"certificate_lhs", s.certificate_lhs},
                          {"certificate_rhs", s.certificate_rhs},
                          {"distribution", to_json(s.normalized)}});
        series.push_back({"L=" + format_double(L), s.normalized});
    }
    out.files.push_back({"cauchy.csv", "# " + comment(ctx, "cauchy distances of normalized counting functions") + "\n" + cauchy});
    const json result = {{"analysis", "ids"}, {"seed", ctx.seed}, {"R_A", cfg.op.range()}, {"steps", jsteps}, {"cauchy", dists}};
    out.files.push_back({"ids.json", result.dump(2) + "\n"});
    if (cfg.ids.svg) out.files.push_back({"ids.svg", svg_range_series(series, "normalized counting functions")});
    out.summary = {{"steps", n}, {"cauchy", dists}};
    return out;
}

AnalysisOutcome run_freq(const RunContext& ctx) {
    AnalysisOutcome out;
    const auto& cfg = ctx.cfg;
    const DelonePatch& w = ctx.patch;
    const VanHoveSequence seq = build_sequence(cfg, w.dim());
    std::vector<PatternClass> classes = cfg.freq.classes;
    if (classes.empty()) {
        std::vector<ClassCount> census = enumerate_ball_classes(w, cfg.freq.census_radius);
        std::stable_sort(census.begin(), census.end(),
                         [](const ClassCount& a, const ClassCount& b) { return a.count > b.count; });
        if (static_cast<int>(census.size()) < cfg.freq.census_count)
            throw PreconditionError("census at radius " + format_double(cfg.freq.census_radius) + " found only " +
                                    std::to_string(census.size()) + " classes, " +
                                    std::to_string(cfg.freq.census_count) + " requested");
        for (int i = 0; i < cfg.freq.census_count; ++i) classes.push_back(census[static_cast<std::size_t>(i)].cls);
    }
    std::vector<FrequencyEstimate> est(classes.size());
    parallel_for(classes.size(), ctx.threads, [&](std::size_t i) {
        try {
            est[i] = frequency(classes[i], w, seq);
        } catch (const WindowExceeded& e) {
            throw WindowError(std::string(e.what()) + " for class " + std::to_string(i) + " (required halo " +
                              format_double(e.required_halo()) + "), window is " + region_text(w.window()));
        }
    });
    const double L = side_length(seq.regions.back());
    std::string csv = "# " + comment(ctx, "L=" + format_double(L) + " scales=" + std::to_string(seq.regions.size())) + "\n";
    csv += "class,digest,points,L,count,frequency,distance_to_previous\n";
    json jc = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const FrequencyEstimate& f = est[i];
        const std::size_t m = f.per_scale.size();
        const std::string d = m > 1 ? format_double(std::abs(f.per_scale[m - 1] - f.per_scale[m - 2])) : "";
        csv += std::to_string(i) + "," + classes[i].digest() + "," + std::to_string(classes[i].canonical().points.size()) +
               "," + format_double(L) + "," + std::to_string(f.counts.back()) + "," + format_double(f.estimate) + "," + d +
               "\n";
        json pts = json::array();
        for (const Vec& p : classes[i].canonical().points) pts.push_back(to_json(p, w.dim()));
        json scales = json::array();
        for (std::size_t k = 0; k < m; ++k)
            scales.push_back({{"L", side_length(seq.regions[k])}, {"count", f.counts[k]}, {"frequency", f.per_scale[k]}});
        jc.push_back({{"class", i},
                      {"digest", classes[i].digest()},
                      {"points", pts},
                      {"support", to_json(classes[i].canonical().support)},
                      {"scales", scales},
                      {"frequency", f.estimate}});
    }
    out.files.push_back({"freq.csv", csv});
    out.files.push_back({"freq.json", json({{"analysis", "freq"}, {"seed", ctx.seed}, {"classes", jc}}).dump(2) + "\n"});
    out.summary = {{"classes", classes.size()}};
    return out;
}

AnalysisOutcome run_decompose(const RunContext& ctx) {
    AnalysisOutcome out;
    const auto& cfg = ctx.cfg;
    const DelonePatch& w = ctx.patch;
    if (w.size() == 0) throw PreconditionError("empty patch");
    const Vec anchor = w.points()[nearest_point(w, window_center(w.window()))];
    const auto& rs = cfg.decompose.radii;
    std::vector<Decomposition> decs(rs.size());
    parallel_for(rs.size(), ctx.threads, [&](std::size_t i) {
        const double s = rs[i];
        const Region q = cfg.decompose.region ? *cfg.decompose.region : erode(w.window(), s);
        try {
            if (!contains_region(w.window(), Region::ball(w.dim(), anchor, s)))
                throw WindowExceeded("ball pattern at the anchor", s);
            decs[i] = p_decomposition(w, ball_class(w, anchor, s), q);
        } catch (const WindowExceeded& e) {
            throw WindowError(std::string(e.what()) + " for s=" + format_double(s) + ": region " + region_text(q) +
                              " with required halo " + format_double(e.required_halo()) + ", window is " +
                              region_text(w.window()));
        }
    });
    std::string csv = "# " + comment(ctx, "anchor=" + to_json(anchor, w.dim()).dump()) + "\n";
    csv += "s,r,R,resolution,occurrences,cells,surface_points,region_measure,cells_measure,surface_measure,"
           "bookkeeping_residual\n";
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const Decomposition& d = decs[i];
        const double resid = std::abs(d.region_measure - d.cells_measure - d.surface_measure) / d.region_measure;
        csv += format_double(rs[i]) + "," + format_double(d.radii.r) + "," + format_double(d.radii.R) + "," +
               format_double(d.radii.resolution) + "," + std::to_string(d.radii.occurrences) + "," +
               std::to_string(d.cells.size()) + "," + std::to_string(d.surface.points.size()) + "," +
               format_double(d.region_measure) + "," + format_double(d.cells_measure) + "," +
               format_double(d.surface_measure) + "," + format_double(resid) + "\n";
        json j = to_json(d);
        j["analysis"] = "decompose";
        j["seed"] = ctx.seed;
        j["s"] = rs[i];
        out.files.push_back({"decomposition_" + std::to_string(i) + ".json", j.dump(2) + "\n"});
        if (w.dim() == 2) out.files.push_back({"decomposition_" + std::to_string(i) + ".svg", decomposition_svg(j)});
    }
    out.files.push_back({"radii.csv", csv});
    out.summary = {{"radii", rs.size()}};
    return out;
}

json additivity_json(const AdditivityReport& r) {
    return {{"trials", r.trials},
            {"a1_violations", r.a1_violations},
            {"a2_violations", r.a2_violations},
            {"a3_violations", r.a3_violations},
            {"translation_violations", r.translation_violations},
            {"min_a1_margin", r.min_a1_margin},
            {"max_a1_ratio", r.max_a1_ratio},
            {"a4_ratios", r.a4_ratios},
            {"a4_decreasing", r.a4_decreasing},
            {"violations", r.violations}};
}

AnalysisOutcome run_checks(const RunContext& ctx) {
    AnalysisOutcome out;
    const auto& cfg = ctx.cfg;
    const DelonePatch& w = ctx.patch;
    Region box;
    if (cfg.checks.box) {
        box = *cfg.checks.box;
    } else if (w.window().kind() == RegionKind::box) {
        box = w.window();
    } else {
        throw PreconditionError("checks need a 'box' when the window is not a box");
    }
    if (!contains_region(w.window(), box))
        throw WindowError("window exceeded: check box " + region_text(box) + " is not inside the window " +
                          region_text(w.window()));

    const auto& fns = cfg.checks.functions;
    std::vector<AdditivityReport> reps(fns.size());
    parallel_for(fns.size(), ctx.threads, [&](std::size_t i) {
        AlmostAdditiveFunction f = fns[i] == "volume"        ? volume_function()
                                   : fns[i] == "point_count" ? point_count_function(w.dim(), w.r())
                                                             : f_a_function(cfg.op, w.dim(), w.r());
        reps[i] = check_almost_additivity(f, w, box, cfg.checks.trials, ctx.seed + i);
    });
    json additivity = json::object();
    std::vector<std::string> violations;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        additivity[fns[i]] = additivity_json(reps[i]);
        for (const auto& v : reps[i].violations) violations.push_back(fns[i] + ": " + v);
        if (!reps[i].a4_decreasing) violations.push_back(fns[i] + ": b(Q)/|Q| not decreasing");
    }

    // Restriction decoupling along random grid partitions of the box.
    std::mt19937_64 rng(ctx.seed ^ 0x9e3779b97f4a7c15ull);
    const int dec_trials = std::min(cfg.checks.trials, 25);
    long dec_fail = 0;
    double max_defect_ratio = 0.0;
    for (int t = 0; t < dec_trials; ++t) {
        const GridPartition g = random_grid_partition(w, box, rng);
        const DecouplingReport r = decoupling_check(cfg.op, w, box, g.parts);
        if (!r.holds || !r.block_diagonal || !r.blocks_match) {
            ++dec_fail;
            violations.push_back("decoupling: trial " + std::to_string(t) + " broke the restriction chain");
        }
        if (r.b_sum > 0.0) max_defect_ratio = std::max(max_defect_ratio, r.additivity_defect / r.b_sum);
    }

    // Rank and compression inequalities on random integer symmetric matrices.
    std::uniform_int_distribution<int> entry(-3, 3), small(-2, 2);
    long rank_fail = 0, comp_fail = 0;
    double rank_dev = 0.0, comp_dev = 0.0;
    for (int t = 0; t < cfg.checks.rank_trials; ++t) {
        const int n = std::uniform_int_distribution<int>(2, cfg.checks.max_n)(rng);
        Eigen::MatrixXd b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) b(i, j) = b(j, i) = entry(rng);
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
        const int rank = std::uniform_int_distribution<int>(1, std::min(3, n))(rng);
        for (int k = 0; k < rank; ++k) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = small(rng);
            c += (k % 2 ? -1.0 : 1.0) * v * v.transpose();
        }
        const RankReport rr = rank_inequality_check(AssembledMatrix::from_dense(b), AssembledMatrix::from_dense(c));
        rank_dev = std::max(rank_dev, rr.max_deviation - static_cast<double>(rr.rank));
        if (!rr.holds) {
            ++rank_fail;
            violations.push_back("rank: trial " + std::to_string(t) + " deviation " + format_double(rr.max_deviation) +
                                 " exceeds rank " + std::to_string(rr.rank));
        }
        std::vector<std::size_t> idx(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
        std::shuffle(idx.begin(), idx.end(), rng);
        const int codim = std::uniform_int_distribution<int>(1, std::min(5, n - 1))(rng);
        idx.resize(static_cast<std::size_t>(n - codim));
        std::sort(idx.begin(), idx.end());
        const CompressionReport cr = compression_check(AssembledMatrix::from_dense(b), idx);
        comp_dev = std::max(comp_dev, cr.max_deviation - cr.bound);
        if (!cr.holds) {
            ++comp_fail;
            violations.push_back("compression: trial " + std::to_string(t) + " deviation " +
                                 format_double(cr.max_deviation) + " exceeds " + format_double(cr.bound));
        }
    }

    out.violations = static_cast<long>(violations.size());
    const json report = {{"analysis", "checks"},
                         {"seed", ctx.seed},
                         {"box", to_json(box)},
                         {"additivity", additivity},
                         {"decoupling", {{"trials", dec_trials}, {"violations", dec_fail}, {"max_defect_over_b", max_defect_ratio}}},
                         {"rank", {{"trials", cfg.checks.rank_trials}, {"violations", rank_fail}, {"max_excess", rank_dev}}},
                         {"compression", {{"trials", cfg.checks.rank_trials}, {"violations", comp_fail}, {"max_excess", comp_dev}}},
                         {"violations", violations},
                         {"total_violations", out.violations}};
    out.files.push_back({"checks.json", report.dump(2) + "\n"});
    out.summary = {{"violations", out.violations}};
    if (out.violations) out.exit_code = kViolation;
    return out;
}

AnalysisOutcome run_jumps(const RunContext& ctx) {
    AnalysisOutcome out;
    const auto& cfg = ctx.cfg;
    const DelonePatch& w = ctx.patch;
    const Region q = cfg.jumps.region ? *cfg.jumps.region : build_sequence(cfg, w.dim()).regions.back();
    AssembledMatrix m;
    try {
        m = assemble(cfg.op, w, q);
    } catch (const WindowExceeded& e) {
        throw WindowError(std::string(e.what()) + ": region " + region_text(q) + " needs the window to contain " +
                          region_text(dilate(q, cfg.op.range())) + ", window is " + region_text(w.window()));
    }
    const double vol = q.measure();
    std::vector<Jump> jumps;
    if (cfg.jumps.energies.empty()) {
        if (m.size() > kMaxDense)
            throw PreconditionError(std::to_string(m.size()) + " sites exceed the dense limit " +
                                    std::to_string(kMaxDense) + "; list 'energies' to probe by inertia");
        const auto f = ctx.cache.counting(m, q, ctx.patch_key).snapped(kEnergyResolution).scaled(1.0 / vol);
        jumps = detect_jumps(f, cfg.jumps.theta);
    } else {
        for (double e : cfg.jumps.energies) jumps.push_back({e, jump_height(m, vol, e, cfg.jumps.delta)});
    }
    std::vector<std::vector<LocalEigenfunction>> states(jumps.size());
    parallel_for(jumps.size(), ctx.threads, [&](std::size_t i) {
        states[i] = local_eigenfunction_search(cfg.op, w, jumps[i].energy, cfg.jumps.rho, &q);
    });
    const double L = side_length(q);
    std::string csv = "# " + comment(ctx, "L=" + format_double(L) + " sites=" + std::to_string(m.size()) + " theta=" +
                                              format_double(cfg.jumps.theta) + " rho=" + format_double(cfg.jumps.rho)) + "\n";
    csv += "E,height,L,local_states,independent_in_region,state_density,max_residual\n";
    json jj = json::array();
    std::vector<std::string> violations;
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        double res = 0.0;
        json js = json::array();
        for (const auto& s : states[i]) {
            res = std::max(res, s.residual);
            json sites = json::array();
            for (const Vec& x : s.sites) sites.push_back(to_json(x, w.dim()));
            js.push_back({{"center", to_json(s.center, w.dim())}, {"sites", sites}, {"coefficients", s.coefficients},
                          {"residual", s.residual}});
        }
        // States supported in Q are eigenvectors of A|Q: their span cannot
        // exceed the multiplicity behind the jump.
        const long independent = independent_states(states[i], &q);
        const double density = static_cast<double>(independent) / vol;
        if (density > jumps[i].height + 1e-9)
            violations.push_back("E=" + format_double(jumps[i].energy) + ": state density exceeds the jump height");
        csv += format_double(jumps[i].energy) + "," + format_double(jumps[i].height) + "," + format_double(L) + "," +
               std::to_string(states[i].size()) + "," + std::to_string(independent) + "," + format_double(density) + "," + format_double(res) + "\n";
        jj.push_back({{"energy", jumps[i].energy}, {"height", jumps[i].height},
                      {"independent_in_region", independent}, {"state_density", density}, {"states", js}});
    }
    out.violations = static_cast<long>(violations.size());
    if (out.violations) out.exit_code = kViolation;
    out.files.push_back({"jumps.csv", csv});
    out.files.push_back({"jumps.json", json({{"analysis", "jumps"}, {"seed", ctx.seed}, {"region", to_json(q)},
                                             {"jumps", jj}, {"violations", violations}})
                                               .dump(2) +
                                           "\n"});
    out.summary = {{"jumps", jumps.size()}, {"violations", out.violations}};
    return out;
}

AnalysisOutcome run_uniformity(const RunContext& ctx) {
    AnalysisOutcome out;
    const auto& cfg = ctx.cfg;
    std::vector<DelonePatch> samples = hull_samples(cfg.generator, cfg.uniformity.samples);
    for (auto& s : samples) s = decorate(cfg, std::move(s));
    const VanHoveSequence seq = build_sequence(cfg, samples.front().dim());
    const std::string op_text = cfg.operator_json.dump();
    std::vector<std::string> keys(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        keys[i] = SpectrumCache::context(to_json(samples[i]).dump(), op_text);

    const std::size_t ns = samples.size(), nk = seq.regions.size();
    std::vector<StepDistribution> f(ns * nk);
    parallel_for(ns * nk, ctx.threads, [&](std::size_t t) {
        const std::size_t i = t / nk, k = t % nk;
        const Region& q = seq.regions[k];
        try {
            const AssembledMatrix m = assemble(cfg.op, samples[i], q);
            f[t] = ctx.cache.counting(m, q, keys[i]).snapped(kEnergyResolution).scaled(1.0 / q.measure());
        } catch (const WindowExceeded& e) {
            throw WindowError(std::string(e.what()) + " for sample " + std::to_string(i) + ": region " +
                              region_text(q) + " needs " + region_text(dilate(q, cfg.op.range())));
        }
    });
    std::string csv = "# " + comment(ctx, "samples=" + std::to_string(ns)) + "\n";
    csv += "k,L_k,samples,max_pairwise_distance,distance_to_previous\n";
    std::vector<double> maxd(nk, 0.0);
    for (std::size_t k = 0; k < nk; ++k) {
        for (std::size_t i = 0; i < ns; ++i)
            for (std::size_t j = i + 1; j < ns; ++j) maxd[k] = std::max(maxd[k], sup_distance(f[i * nk + k], f[j * nk + k]));
        csv += std::to_string(k) + "," + format_double(side_length(seq.regions[k])) + "," + std::to_string(ns) + "," +
               format_double(maxd[k]) + "," + (k ? format_double(std::abs(maxd[k] - maxd[k - 1])) : "") + "\n";
    }
    out.files.push_back({"uniformity.csv", csv});
    out.files.push_back({"uniformity.json",
                         json({{"analysis", "uniformity"}, {"seed", ctx.seed}, {"samples", ns}, {"max_pairwise", maxd}}).dump(2) +
                             "\n"});
    out.summary = {{"max_pairwise", maxd}};
    return out;
}

}  // namespace

AnalysisOutcome run_analysis(const std::string& name, const RunContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    AnalysisOutcome out;
    try {
        if (name == "ids") out = run_ids(ctx);
        else if (name == "freq") out = run_freq(ctx);
        else if (name == "decompose") out = run_decompose(ctx);
        else if (name == "checks") out = run_checks(ctx);
        else if (name == "jumps") out = run_jumps(ctx);
        else if (name == "uniformity") out = run_uniformity(ctx);
        else throw InvalidArgument("unknown analysis");
    } catch (const WindowError& e) {
        out = {};
        out.exit_code = kWindowError;
        out.error = e.what();
    } catch (const WindowExceeded& e) {
        out = {};
        out.exit_code = kWindowError;
        out.error = std::string(e.what()) + " (required halo " + format_double(e.required_halo()) + ")";
    } catch (const PreconditionError& e) {
        out = {};
        out.exit_code = kWindowError;
        out.error = std::string("precondition failed: ") + e.what();
    } catch (const InvariantViolation& e) {
        out = {};
        out.exit_code = kViolation;
        out.violations = 1;
        out.error = std::string("property violation: ") + e.what();
    } catch (const InvalidArgument& e) {
        out = {};
        out.exit_code = kConfigError;
        out.error = std::string("invalid input: ") + e.what();
    }
    out.name = name;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

int combined_exit_code(const std::vector<AnalysisOutcome>& outcomes) {
    int code = kOk;
    for (const auto& o : outcomes)
        if (o.exit_code != kOk && (code == kOk || o.exit_code < code)) code = o.exit_code;
    return code;
}

std::string render_result(const json& r) {
    if (r.contains("cells")) return decomposition_svg(r);
    if (r.contains("steps")) {
        std::vector<Series> series;
        for (const auto& s : r.at("steps"))
            series.push_back({"L=" + format_double(s.at("L").get<double>()), distribution_from_json(s.at("distribution"))});
        return svg_range_series(series, "normalized counting functions");
    }
    if (r.contains("breakpoints")) return svg_range_series({{"", distribution_from_json(r)}}, "");
    throw InvalidArgument("result has no distribution, steps or cells to render");
}

}  // namespace delone::cli
