#include "delone/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "delone/error.hpp"
#include "delone/generators.hpp"

namespace delone {

namespace {

constexpr double kSlack = 1e-9;

BanachElement divided(const BanachElement& x, double d) {
    // Plain division keeps V / V == 1 exact for the volume function.
    if (x.kind() == BanachElement::Kind::scalar) return BanachElement(x.scalar() / d);
    return x.scaled(1.0 / d);
}

Region box_of(int dim, Vec lo, Vec hi) { return dim == 1 ? Region::interval(lo.x, hi.x) : Region::box(2, lo, hi); }

Vec region_center(const Region& q) {
    const Bounds b = q.bounds();
    return 0.5 * (b.lo + b.hi);
}

}  // namespace

AlmostAdditiveFunction volume_function() {
    AlmostAdditiveFunction f;
    f.name = "volume";
    f.eval = [](const Pattern& p) { return BanachElement(p.support.measure()); };
    f.error = [](const Pattern&) { return 0.0; };
    f.D = 1.0;
    return f;
}

AlmostAdditiveFunction point_count_function(int dim, double r) {
    AlmostAdditiveFunction f;
    f.name = "point-count";
    f.eval = [](const Pattern& p) { return BanachElement(static_cast<double>(p.points.size())); };
    f.error = [r](const Pattern& p) {
        return p.support.is_empty() ? 0.0 : boundary_band(p.support, r, r) / ball_volume(p.dim(), r);
    };
    f.D = 1.0 / ball_volume(dim, r);
    return f;
}

double support_reach(const PatternClass& q) {
    const Region& s = q.canonical().support;
    if (s.is_empty()) return 0.0;
    const Bounds b = s.bounds();
    double reach = 0.0;
    for (Vec c : {b.lo, b.hi, Vec{b.lo.x, b.hi.y}, Vec{b.hi.x, b.lo.y}}) reach = std::max(reach, norm(c));
    return reach;
}

AlmostAdditiveFunction occurrence_count_function(const PatternClass& q, double r) {
    if (q.canonical().points.empty()) throw InvalidArgument("occurrence counting needs a nonempty pattern");
    AlmostAdditiveFunction f;
    f.name = "occurrence-count";
    const double s = support_reach(q);
    f.eval = [q](const Pattern& p) { return BanachElement(static_cast<double>(occurrences(q, p).count)); };
    f.error = [r, s](const Pattern& p) {
        return p.support.is_empty() ? 0.0 : boundary_band(p.support, r, s + r) / ball_volume(p.dim(), r);
    };
    f.D = 1.0 / ball_volume(q.canonical().dim(), r);
    return f;
}

FrequencyEstimate frequency(const PatternClass& p, const DelonePatch& w, const VanHoveSequence& seq) {
    FrequencyEstimate est;
    if (seq.regions.empty()) return est;
    if (p.is_ball()) {
        const double s = p.ball_radius();
        for (const Region& q : seq.regions)
            if (!contains_region(w.window(), dilate(q, s)))
                throw WindowExceeded("frequency region plus its s(P) halo", s);
        const DerivedSet d = derived_set(w, p);
        for (const Region& q : seq.regions) {
            const Region inner = erode(q, s);
            std::size_t n = 0;
            if (!inner.is_empty())
                for (const Vec& t : d.occurrences)
                    if (inner.contains(t)) ++n;
            est.counts.push_back(n);
            est.per_scale.push_back(static_cast<double>(n) / q.measure());
        }
    } else {
        for (const Region& q : seq.regions) {
            const std::size_t n = occurrences(p, restrict(w, q)).count;
            est.counts.push_back(n);
            est.per_scale.push_back(static_cast<double>(n) / q.measure());
        }
    }
    est.estimate = est.per_scale.back();
    return est;
}

std::vector<ClassCount> enumerate_ball_classes(const DelonePatch& w, double s) {
    std::vector<ClassCount> out;
    std::unordered_map<PatternClass, std::size_t, PatternClassHash> slot;
    for (const Vec& x : w.points()) {
        if (!contains_region(w.window(), Region::ball(w.dim(), x, s))) continue;
        PatternClass c = ball_class(w, x, s);
        auto it = slot.find(c);
        if (it == slot.end()) {
            slot.emplace(c, out.size());
            out.push_back({std::move(c), 1, x});
        } else {
            ++out[it->second].count;
        }
    }
    return out;
}

ApproximantOptions::Coloring coloring_from_string(const std::string& name) {
    using C = ApproximantOptions::Coloring;
    if (name == "off") return C::off;
    if (name == "auto") return C::automatic;
    if (name == "fixed") return C::fixed;
    throw InvalidArgument("unknown coloring mode '" + name + "'");
}

const char* to_string(ApproximantOptions::Coloring c) {
    using C = ApproximantOptions::Coloring;
    switch (c) {
        case C::off: return "off";
        case C::automatic: return "auto";
        case C::fixed: return "fixed";
    }
    return "off";
}

int approximant_coloring(const DelonePatch& w, double k, const ApproximantOptions& opt) {
    using C = ApproximantOptions::Coloring;
    if (opt.coloring == C::off) return 1;
    if (!w.periodicity()) throw PreconditionError("coloring requires a periodicity lattice");
    if (opt.coloring == C::fixed) {
        if (opt.l < 1) throw InvalidArgument("coloring modulus must be positive");
        return opt.l;
    }
    // Colored period tracks the radius of B^(k).
    double len = 0.0;
    for (const Vec& b : w.periodicity()->basis) len = std::max(len, norm(b));
    return std::max(1, static_cast<int>(std::floor(k / len + 1e-9)));
}

CellApproximant cell_approximant(const AlmostAdditiveFunction& f, const DelonePatch& w, double k,
                                 const ApproximantOptions& opt) {
    if (!(k > 0.0)) throw InvalidArgument("approximant radius must be positive");
    if (w.size() == 0) throw PreconditionError("approximant of an empty patch");
    CellApproximant ap;
    ap.k = k;
    ap.l = approximant_coloring(w, k, opt);
    ap.patch = ap.l > 1 ? color_grid(w, {w.periodicity()->basis, ap.l}) : w;
    const DelonePatch& wp = ap.patch;

    const Vec c = region_center(wp.window());
    std::size_t best = 0;
    double dbest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < wp.size(); ++i) {
        const double d = distance(wp.points()[i], c);
        if (d < dbest - 1e-12) {
            dbest = d;
            best = i;
        }
    }
    ap.anchor = wp.points()[best];
    if (!contains_region(wp.window(), Region::ball(wp.dim(), ap.anchor, k)))
        throw WindowExceeded("B^(k) at the anchor", k);

    const PatternClass bk = ball_class(wp, ap.anchor, k);
    ap.derived = derived_set(wp, bk);
    ap.radii = radii(wp, ap.derived);
    const Region q = erode(wp.window(), k);
    if (q.is_empty()) throw WindowExceeded("window too small for the 4R(B^(k)) halo", 4.0 * ap.radii.R);
    const Decomposition dec = p_decomposition(wp, ap.derived, ap.radii, q);
    if (dec.cells.empty()) throw WindowExceeded("window too small for the 4R(B^(k)) halo", 4.0 * ap.radii.R);

    // With R(P) the covering radius of the occurrences, [B(x, 2R) ^ w] fixes
    // the cell only up to occurrences whose s-ball leaves that key, so classes
    // are keyed by the pair (key, cell content).
    struct PairHash {
        std::size_t operator()(const std::pair<PatternClass, PatternClass>& p) const {
            return p.first.hash() * 1000003u ^ p.second.hash();
        }
    };
    std::unordered_map<std::pair<PatternClass, PatternClass>, std::size_t, PairHash> slot;
    for (const Cell& cell : dec.cells) {
        std::pair<PatternClass, PatternClass> id{cell.key, PatternClass::of(cell.content)};
        auto it = slot.find(id);
        if (it == slot.end()) {
            slot.emplace(id, ap.classes.size());
            ap.classes.push_back({cell.key, id.second, 1, 0.0, cell});
        } else {
            ++ap.classes[it->second].count;
        }
    }
    BanachElement sum;
    for (const CellClass& cc : ap.classes) {
        const double n = static_cast<double>(cc.count);
        ap.total_measure += n * cc.representative.polytope.measure();
        sum = sum + f.eval(cc.representative.content).scaled(n);
    }
    for (CellClass& cc : ap.classes) cc.frequency = static_cast<double>(cc.count) / ap.total_measure;
    ap.value = divided(sum, ap.total_measure);
    return ap;
}

ApproximantSplit approximant_split(const AlmostAdditiveFunction& f, const DelonePatch& w, const CellApproximant& ap,
                                   const Region& q) {
    (void)w;
    ApproximantSplit sp;
    const Decomposition dec = p_decomposition(ap.patch, ap.derived, ap.radii, q);
    const Pattern p = restrict(ap.patch, q);
    const double vol = q.measure();
    const BanachElement fp = f.eval(p);
    BanachElement pieces = f.eval(dec.surface);
    double bsum = f.error(dec.surface);
    for (const Cell& cell : dec.cells) {
        pieces = pieces + f.eval(cell.content);
        bsum += f.error(cell.content);
    }
    sp.cells = dec.cells.size();
    sp.d1 = norm_distance(fp, pieces) / vol;
    sp.d1_bound = bsum / vol;
    sp.d2 = norm_distance(divided(pieces, vol), ap.value);
    sp.lhs = norm_distance(divided(fp, vol), ap.value);
    sp.holds = sp.lhs <= sp.d1 + sp.d2 + kSlack && sp.d1 <= sp.d1_bound + kSlack;
    return sp;
}

ErgodicAverage ergodic_average(const AlmostAdditiveFunction& f, const DelonePatch& w, const VanHoveSequence& seq) {
    ErgodicAverage out;
    for (const Region& q : seq.regions) {
        out.averages.push_back(divided(f.eval(restrict(w, q)), q.measure()));
        out.norms.push_back(out.averages.back().norm());
        if (out.averages.size() > 1)
            out.cauchy.push_back(norm_distance(out.averages.back(), out.averages[out.averages.size() - 2]));
    }
    if (!out.averages.empty()) out.limit = out.averages.back();
    return out;
}

GridPartition random_grid_partition(const DelonePatch& w, const Region& q, std::mt19937_64& rng) {
    if (q.is_empty() || !q.is_convex() || (q.dim() == 2 && !q.core_is_axis_box()) || q.rounding() > 0.0)
        throw InvalidArgument("grid partitions need an axis-aligned box");
    const Bounds b = q.bounds();
    const double clear = std::max(1e-3 * w.r(), 1e-7);
    auto cuts = [&](double lo, double hi, bool along_x) {
        std::uniform_int_distribution<int> count(1, q.dim() == 1 ? 4 : 3);
        std::uniform_real_distribution<double> pos(lo, hi);
        const int n = count(rng);
        std::vector<double> out;
        for (int i = 0; i < n; ++i) {
            for (int attempt = 0; attempt < 64; ++attempt) {
                const double c = pos(rng);
                if (c - lo < clear || hi - c < clear) continue;
                bool ok = true;
                for (double o : out)
                    if (std::abs(o - c) < clear) ok = false;
                const Vec slo = along_x ? Vec{c - clear, b.lo.y - 1.0} : Vec{b.lo.x - 1.0, c - clear};
                const Vec shi = along_x ? Vec{c + clear, b.hi.y + 1.0} : Vec{b.hi.x + 1.0, c + clear};
                if (ok && !w.index().in_box(slo, shi).empty()) ok = false;
                if (ok) {
                    out.push_back(c);
                    break;
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    GridPartition g;
    g.cuts_x = cuts(b.lo.x, b.hi.x, true);
    if (q.dim() == 2) g.cuts_y = cuts(b.lo.y, b.hi.y, false);
    std::vector<double> xs{b.lo.x};
    xs.insert(xs.end(), g.cuts_x.begin(), g.cuts_x.end());
    xs.push_back(b.hi.x);
    std::vector<double> ys{b.lo.y};
    ys.insert(ys.end(), g.cuts_y.begin(), g.cuts_y.end());
    ys.push_back(b.hi.y);
    for (std::size_t j = 0; j + 1 < ys.size(); ++j)
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            g.parts.push_back(box_of(q.dim(), {xs[i], ys[j]}, {xs[i + 1], ys[j + 1]}));
    return g;
}

AdditivityReport check_almost_additivity(const AlmostAdditiveFunction& f, const DelonePatch& w, const Region& q,
                                         int trials, std::uint64_t seed) {
    AdditivityReport rep;
    rep.trials = trials;
    rep.min_a1_margin = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    const Pattern whole = restrict(w, q);
    const BanachElement fw = f.eval(whole);
    const double bw = f.error(whole);
    auto note = [&](long& counter, const std::string& what) {
        ++counter;
        if (rep.violations.size() < 32) rep.violations.push_back(what);
    };
    auto check_a2 = [&](const Pattern& p, const BanachElement& fp, double bp) {
        const double rhs = f.D * p.support.measure() + bp;
        if (fp.norm() > rhs + kSlack * std::max(1.0, rhs)) note(rep.a2_violations, "A2");
    };
    check_a2(whole, fw, bw);

    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    for (int t = 0; t < trials; ++t) {
        const GridPartition g = random_grid_partition(w, q, rng);
        BanachElement sum;
        double bsum = 0.0;
        for (const Region& part : g.parts) {
            const Pattern p = restrict(w, part);
            const BanachElement fp = f.eval(p);
            const double bp = f.error(p);
            check_a2(p, fp, bp);
            sum = sum + fp;
            bsum += bp;
        }
        const double defect = norm_distance(fw, sum);
        rep.min_a1_margin = std::min(rep.min_a1_margin, bsum - defect);
        if (bsum > 0.0) rep.max_a1_ratio = std::max(rep.max_a1_ratio, defect / bsum);
        if (defect > bsum + kSlack * std::max(1.0, bsum)) note(rep.a1_violations, "A1 trial " + std::to_string(t));

        // (A3) on the two-piece split at the first cut.
        if (!g.cuts_x.empty()) {
            const Bounds b = q.bounds();
            const double c = g.cuts_x.front();
            const Pattern p1 = restrict(w, box_of(q.dim(), b.lo, {c, b.hi.y}));
            const Pattern p2 = restrict(w, box_of(q.dim(), {c, b.lo.y}, b.hi));
            const double b1 = f.error(p1), b2 = f.error(p2);
            if (b1 > bw + b2 + kSlack || b2 > bw + b1 + kSlack) note(rep.a3_violations, "A3 trial " + std::to_string(t));
        }

        // Translation invariance on one piece.
        const Pattern p = restrict(w, g.parts[static_cast<std::size_t>(t) % g.parts.size()]);
        const Vec tv{shift(rng), q.dim() == 2 ? shift(rng) : 0.0};
        const BanachElement f0 = f.eval(p);
        const BanachElement f1 = f.eval(translated(p, tv));
        if (norm_distance(f0, f1) > kSlack * std::max(1.0, f0.norm()))
            note(rep.translation_violations, "translation trial " + std::to_string(t));
    }
    if (trials == 0) rep.min_a1_margin = 0.0;

    // (A4) sampled on centered boxes shrinking from Q.
    const Bounds b = q.bounds();
    const Vec c = 0.5 * (b.lo + b.hi), h = 0.5 * (b.hi - b.lo);
    for (double s : {0.125, 0.25, 0.5, 1.0}) {
        const Region qs = box_of(q.dim(), c - s * h, c + s * h);
        rep.a4_ratios.push_back(f.error(restrict(w, qs)) / qs.measure());
    }
    for (std::size_t i = 1; i < rep.a4_ratios.size(); ++i)
        if (rep.a4_ratios[i] > rep.a4_ratios[i - 1] + kSlack) rep.a4_decreasing = false;
    return rep;
}

double uniformity_scan(const AlmostAdditiveFunction& f, const std::vector<DelonePatch>& patches, const Region& q) {
    std::vector<BanachElement> vals;
    for (const DelonePatch& w : patches) vals.push_back(divided(f.eval(restrict(w, q)), q.measure()));
    double worst = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j) worst = std::max(worst, norm_distance(vals[i], vals[j]));
    return worst;
}

}  // namespace delone
