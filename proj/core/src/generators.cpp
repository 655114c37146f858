#include "delone/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "delone/error.hpp"

namespace delone {

namespace {

constexpr double kGolden = 1.6180339887498948482;

struct Basis2 {
    Vec e1, e2;
    double det = 0.0;

    // Coordinates of v in the basis.
    Vec solve(Vec v) const {
        return {(v.x * e2.y - v.y * e2.x) / det, (e1.x * v.y - e1.y * v.x) / det};
    }
};

Basis2 basis_of(const std::vector<Vec>& basis, int dim) {
    Basis2 b;
    if (dim == 1) {
        if (basis.size() != 1 || basis[0].x == 0.0) throw InvalidArgument("invalid generator: lattice basis");
        b.e1 = {basis[0].x, 0.0};
        b.e2 = {0.0, 1.0};
    } else {
        if (basis.size() != 2) throw InvalidArgument("invalid generator: lattice basis needs two vectors");
        b.e1 = basis[0];
        b.e2 = basis[1];
    }
    b.det = cross(b.e1, b.e2);
    const double scale = std::max(norm(b.e1), norm(b.e2));
    if (!(std::abs(b.det) > 1e-12 * scale * scale)) throw InvalidArgument("invalid generator: degenerate lattice basis");
    return b;
}

// Packing and covering radius of a lattice.
std::pair<double, double> lattice_radii(const Basis2& b, int dim) {
    if (dim == 1) {
        const double h = 0.5 * std::abs(b.e1.x);
        return {h, h};
    }
    double shortest = std::numeric_limits<double>::infinity();
    const double big = 4.0 * std::max(norm(b.e1), norm(b.e2));
    std::vector<Vec> cell{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
            if (i == 0 && j == 0) continue;
            const Vec v = static_cast<double>(i) * b.e1 + static_cast<double>(j) * b.e2;
            shortest = std::min(shortest, norm(v));
            cell = polygon_ops::clip_halfplane(cell, v, 0.5 * dot(v, v));
        }
    double cover = 0.0;
    for (const Vec& p : cell) cover = std::max(cover, norm(p));
    return {0.5 * shortest, cover};
}

std::vector<Vec> lattice_points(const Basis2& b, Vec origin, const Region& window, int dim) {
    const Bounds bb = window.bounds();
    std::vector<Vec> corners{bb.lo, bb.hi, {bb.lo.x, bb.hi.y}, {bb.hi.x, bb.lo.y}};
    double lo1 = std::numeric_limits<double>::infinity(), hi1 = -lo1, lo2 = lo1, hi2 = -lo1;
    for (const Vec& c : corners) {
        const Vec l = b.solve(c - origin);
        lo1 = std::min(lo1, l.x);
        hi1 = std::max(hi1, l.x);
        lo2 = std::min(lo2, l.y);
        hi2 = std::max(hi2, l.y);
    }
    const auto n1a = static_cast<long>(std::floor(lo1)) - 1, n1b = static_cast<long>(std::ceil(hi1)) + 1;
    long n2a = static_cast<long>(std::floor(lo2)) - 1, n2b = static_cast<long>(std::ceil(hi2)) + 1;
    if (dim == 1) n2a = n2b = 0;
    std::vector<Vec> pts;
    for (long j = n2a; j <= n2b; ++j)
        for (long i = n1a; i <= n1b; ++i) {
            Vec p = origin + static_cast<double>(i) * b.e1 + static_cast<double>(j) * b.e2;
            if (dim == 1) p.y = 0.0;
            if (window.contains(p)) pts.push_back(p);
        }
    return pts;
}

DelonePatch generate_lattice(const GeneratorSpec& spec) {
    const int dim = spec.window.dim();
    const Basis2 b = basis_of(spec.lattice.basis, dim);
    Vec origin = spec.lattice.origin;
    if (dim == 1) origin.y = 0.0;
    auto pts = lattice_points(b, origin, spec.window, dim);
    if (pts.empty()) throw InvalidArgument("invalid generator: window contains no point");
    const auto [r, R] = lattice_radii(b, dim);
    Periodicity per;
    per.basis = dim == 1 ? std::vector<Vec>{b.e1} : std::vector<Vec>{b.e1, b.e2};
    per.origin = origin;
    return DelonePatch(dim, std::move(pts), spec.window, r, R, {}, per);
}

std::vector<double> cut_project_points(const CutProjectSpec& c, double x0, double x1) {
    const double a = c.alpha;
    const double s = 1.0 + a * a;
    const double ylo = c.window_lo + c.phase;
    const double yhi = c.window_hi + c.phase;
    // m = (x - a y) / s over the strip.
    const double m_lo = (x0 - std::max(a * ylo, a * yhi)) / s;
    const double m_hi = (x1 - std::min(a * ylo, a * yhi)) / s;
    std::vector<double> xs;
    for (auto m = static_cast<long>(std::floor(m_lo)) - 2; m <= static_cast<long>(std::ceil(m_hi)) + 2; ++m) {
        const double md = static_cast<double>(m);
        // n - a m in [ylo, yhi)
        const auto n0 = static_cast<long>(std::ceil(ylo + a * md));
        for (long n = n0; static_cast<double>(n) - a * md < yhi; ++n) {
            const double nd = static_cast<double>(n);
            if (nd - a * md < ylo) continue;
            const double x = md + a * nd;
            if (x >= x0 && x <= x1) xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

DelonePatch generate_cut_project(const GeneratorSpec& spec) {
    const CutProjectSpec& c = spec.cut_project;
    if (spec.window.dim() != 1) throw InvalidArgument("invalid generator: cut and project is one-dimensional");
    if (!(c.window_hi > c.window_lo) || !std::isfinite(c.alpha) || c.alpha == 0.0)
        throw InvalidArgument("invalid generator: cut and project window or slope");
    const double x0 = spec.window.lo(), x1 = spec.window.hi();
    auto xs = cut_project_points(c, x0, x1);
    if (xs.empty()) throw InvalidArgument("invalid generator: window contains no point");
    // Gap statistics from a generous neighbourhood of the window.
    const double margin = std::max(64.0, x1 - x0);
    const auto wide = cut_project_points(c, x0 - margin, x1 + margin);
    double gmin = std::numeric_limits<double>::infinity(), gmax = 0.0;
    for (std::size_t i = 1; i < wide.size(); ++i) {
        const double g = wide[i] - wide[i - 1];
        gmin = std::min(gmin, g);
        gmax = std::max(gmax, g);
    }
    if (wide.size() < 2) throw InvalidArgument("invalid generator: cut and project window too thin");
    std::vector<Vec> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back({x, 0.0});
    return DelonePatch(1, std::move(pts), spec.window, 0.5 * gmin, 0.5 * gmax);
}

void validate_substitution(const SubstitutionSpec& s) {
    if (s.rules.empty()) throw InvalidArgument("invalid generator: substitution has no rules");
    for (const auto& [letter, image] : s.rules) {
        if (image.empty()) throw InvalidArgument(std::string("invalid generator: empty image of ") + letter);
        for (char c : image)
            if (!s.rules.count(c)) throw InvalidArgument(std::string("invalid generator: no rule for ") + c);
    }
    if (s.iterations < 0) throw InvalidArgument("invalid generator: negative iteration count");
    for (char c : s.seed)
        if (!s.rules.count(c)) throw InvalidArgument(std::string("invalid generator: seed letter ") + c);
}

DelonePatch generate_substitution(const GeneratorSpec& spec) {
    const SubstitutionSpec& s = spec.substitution;
    if (spec.window.dim() != 1) throw InvalidArgument("invalid generator: substitution chains are one-dimensional");
    const std::string word = substitution_word(s);
    const auto lengths = s.lengths.empty() ? perron_lengths(s) : s.lengths;
    for (const auto& [letter, image] : s.rules) {
        (void)image;
        auto it = lengths.find(letter);
        if (it == lengths.end() || !(it->second > 0.0))
            throw InvalidArgument(std::string("invalid generator: length of letter ") + letter);
    }
    double x = s.origin - s.shift;
    if (spec.window.lo() < x) throw InvalidArgument("invalid generator: window starts before the chain");
    std::vector<Vec> pts;
    double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
    for (char c : word) {
        const double len = lengths.at(c);
        lmin = std::min(lmin, len);
        lmax = std::max(lmax, len);
        if (spec.window.contains({x, 0.0})) pts.push_back({x, 0.0});
        x += len;
    }
    if (!(spec.window.hi() < x)) throw InvalidArgument("invalid generator: substitution word shorter than the window");
    if (pts.empty()) throw InvalidArgument("invalid generator: window contains no point");
    return DelonePatch(1, std::move(pts), spec.window, 0.5 * lmin, 0.5 * lmax);
}

double fractional(double v) { return v - std::floor(v); }

}  // namespace

const char* to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::lattice: return "lattice";
        case GeneratorKind::dimer_lattice: return "dimer-lattice";
        case GeneratorKind::cut_and_project_1d: return "cut-and-project-1d";
        case GeneratorKind::substitution_1d: return "substitution-1d";
    }
    return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
    if (name == "lattice") return GeneratorKind::lattice;
    if (name == "dimer-lattice") return GeneratorKind::dimer_lattice;
    if (name == "cut-and-project-1d") return GeneratorKind::cut_and_project_1d;
    if (name == "substitution-1d") return GeneratorKind::substitution_1d;
    throw InvalidArgument("invalid generator: unknown kind '" + name + "'");
}

GeneratorSpec integer_lattice_spec(int dim, const Region& window) {
    GeneratorSpec s;
    s.kind = GeneratorKind::lattice;
    s.window = window;
    s.lattice.basis = dim == 1 ? std::vector<Vec>{{1.0, 0.0}} : std::vector<Vec>{{1.0, 0.0}, {0.0, 1.0}};
    return s;
}

GeneratorSpec fibonacci_substitution_spec(const Region& window, int iterations) {
    GeneratorSpec s;
    s.kind = GeneratorKind::substitution_1d;
    s.window = window;
    s.substitution.rules = {{'a', "ab"}, {'b', "a"}};
    s.substitution.lengths = {{'a', 1.0}, {'b', 1.0 / kGolden}};
    s.substitution.iterations = iterations;
    s.substitution.seed = "a";
    return s;
}

GeneratorSpec fibonacci_cut_project_spec(const Region& window, double phase) {
    GeneratorSpec s;
    s.kind = GeneratorKind::cut_and_project_1d;
    s.window = window;
    s.cut_project.alpha = 1.0 / kGolden;
    s.cut_project.window_lo = -1.0;
    s.cut_project.window_hi = 1.0 / kGolden;
    s.cut_project.phase = phase;
    return s;
}

GeneratorSpec dimer_lattice_spec(const Region& window, Vec offset, DimerSelection selection) {
    GeneratorSpec s = integer_lattice_spec(window.dim(), window);
    s.kind = GeneratorKind::dimer_lattice;
    s.dimer_offset = offset;
    s.dimer_selection = std::move(selection);
    return s;
}

DelonePatch generate(const GeneratorSpec& spec) {
    if (spec.window.is_empty() || !spec.window.is_convex()) throw InvalidArgument("invalid generator: window");
    switch (spec.kind) {
        case GeneratorKind::lattice: return generate_lattice(spec);
        case GeneratorKind::dimer_lattice: {
            // Generate on a box large enough that every partner landing in the
            // requested window is present, then crop.
            const double pad = norm(spec.dimer_offset) + 1.0;
            GeneratorSpec base = spec;
            base.kind = GeneratorKind::lattice;
            base.window = dilate(spec.window, pad);
            const Bounds bb = base.window.bounds();
            base.window = Region::box(spec.window.dim(), bb.lo, bb.hi);
            const DelonePatch decorated = dimer_decorate(generate_lattice(base), spec.dimer_offset, spec.dimer_selection);
            return crop(decorated, spec.window);
        }
        case GeneratorKind::cut_and_project_1d: return generate_cut_project(spec);
        case GeneratorKind::substitution_1d: return generate_substitution(spec);
    }
    throw InvalidArgument("invalid generator");
}

DelonePatch crop(const DelonePatch& w, const Region& window) {
    if (!contains_region(w.window(), window)) throw WindowExceeded("crop window not inside the patch window");
    std::vector<Vec> pts;
    std::vector<int> colors;
    for (std::size_t i : w.indices_in(window)) {
        pts.push_back(w.points()[i]);
        if (w.colored()) colors.push_back(w.colors()[i]);
    }
    return DelonePatch(w.dim(), std::move(pts), window, w.r(), w.R(), std::move(colors), w.periodicity());
}

DelonePatch dimer_decorate(const DelonePatch& w, Vec offset, const DimerSelection& selection) {
    const int dim = w.dim();
    if (dim == 1) offset.y = 0.0;
    const double len = norm(offset);
    if (!(len > 0.0)) throw InvalidArgument("invalid generator: zero dimer offset");
    if (!(len < w.r())) throw InvalidArgument("decoration violates separation");

    Region window;
    const Region& W = w.window();
    if (W.kind() == RegionKind::box) {
        const Bounds b = W.bounds();
        Vec lo{std::max(b.lo.x, b.lo.x + offset.x), std::max(b.lo.y, b.lo.y + offset.y)};
        Vec hi{std::min(b.hi.x, b.hi.x + offset.x), std::min(b.hi.y, b.hi.y + offset.y)};
        if (lo.x > hi.x || lo.y > hi.y) throw InvalidArgument("invalid generator: window too small for decoration");
        window = Region::box(dim, lo, hi);
    } else {
        window = erode(W, len);
        if (window.is_empty()) throw InvalidArgument("invalid generator: window too small for decoration");
    }

    std::optional<Basis2> basis;
    std::optional<Periodicity> per = w.periodicity();
    if (!selection.all()) {
        if (!per) throw InvalidArgument("invalid generator: dimer sublattice selection needs a periodicity lattice");
        if (static_cast<int>(selection.moduli.size()) != dim)
            throw InvalidArgument("invalid generator: one selection modulus per lattice direction");
        for (int m : selection.moduli)
            if (m < 1) throw InvalidArgument("invalid generator: selection moduli must be positive");
        basis = basis_of(per->basis, dim);
    }
    auto selected = [&](Vec x) {
        if (selection.all()) return true;
        const Vec l = basis->solve(x - per->origin);
        const double c[2] = {l.x, l.y};
        for (int j = 0; j < dim; ++j) {
            const double n = std::round(c[j]);
            if (std::abs(n - c[j]) > 1e-9) throw InvalidArgument("invalid generator: selected point is not a lattice point");
            const auto k = static_cast<long>(n);
            const long m = selection.moduli[static_cast<std::size_t>(j)];
            if (((k % m) + m) % m != 0) return false;
        }
        return true;
    };

    std::vector<Vec> pts;
    std::vector<int> colors;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Vec x = w.points()[i];
        const bool sel = selected(x);
        for (int copy = 0; copy < (sel ? 2 : 1); ++copy) {
            const Vec p = copy == 0 ? x : x + offset;
            if (!window.contains(p)) continue;
            pts.push_back(p);
            if (w.colored()) colors.push_back(w.colors()[i]);
        }
    }
    if (pts.empty()) throw InvalidArgument("invalid generator: window contains no point");

    // Exact packing radius of the decorated set; the base covering radius stays
    // a valid upper bound.
    const PointIndex idx(pts, std::max(w.R(), 1e-3));
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j : idx.in_ball(pts[i], 2.0 * w.r()))
            if (j != i) dmin = std::min(dmin, distance(pts[i], pts[j]));
    const double r = std::isfinite(dmin) ? 0.5 * dmin : w.r();

    if (per && !selection.all()) {
        for (int j = 0; j < dim; ++j)
            per->basis[static_cast<std::size_t>(j)] *= static_cast<double>(selection.moduli[static_cast<std::size_t>(j)]);
    }
    return DelonePatch(dim, std::move(pts), window, r, std::max(r, w.R()), std::move(colors), per);
}

std::vector<DelonePatch> hull_samples(const GeneratorSpec& spec, int n) {
    if (n < 1) throw InvalidArgument("hull sample count must be positive");
    std::vector<DelonePatch> out;
    out.reserve(static_cast<std::size_t>(n));
    switch (spec.kind) {
        case GeneratorKind::lattice:
        case GeneratorKind::dimer_lattice: {
            const int dim = spec.window.dim();
            const Basis2 b = basis_of(spec.lattice.basis, dim);
            for (int k = 0; k < n; ++k) {
                const double l1 = static_cast<double>(k) / n;
                const double l2 = dim == 2 ? fractional(static_cast<double>(k) / kGolden) : 0.0;
                GeneratorSpec s = spec;
                s.lattice.origin = spec.lattice.origin + l1 * b.e1 + (dim == 2 ? l2 * b.e2 : Vec{});
                out.push_back(generate(s));
            }
            return out;
        }
        case GeneratorKind::cut_and_project_1d: {
            std::vector<double> phases;
            for (int k = 0; k < n; ++k) phases.push_back(spec.cut_project.phase + static_cast<double>(k) / n);
            return hull_samples_at_phases(spec, phases);
        }
        case GeneratorKind::substitution_1d: {
            const std::string word = substitution_word(spec.substitution);
            const auto lengths = spec.substitution.lengths.empty() ? perron_lengths(spec.substitution)
                                                                    : spec.substitution.lengths;
            double total = 0.0, lmax = 0.0;
            for (char c : word) {
                total += lengths.at(c);
                lmax = std::max(lmax, lengths.at(c));
            }
            const double chain_lo = spec.substitution.origin - spec.substitution.shift;
            const double room = chain_lo + total - lmax - spec.window.hi();
            if (n > 1 && !(room > 0.0)) throw InvalidArgument("invalid generator: word too short for hull samples");
            for (int k = 0; k < n; ++k) {
                GeneratorSpec s = spec;
                s.substitution.shift = spec.substitution.shift + std::max(room, 0.0) * static_cast<double>(k) / n;
                out.push_back(generate(s));
            }
            return out;
        }
    }
    return out;
}

std::vector<DelonePatch> hull_samples_at_phases(const GeneratorSpec& spec, const std::vector<double>& phases) {
    if (spec.kind != GeneratorKind::cut_and_project_1d)
        throw InvalidArgument("explicit phases apply to cut and project generators");
    std::vector<DelonePatch> out;
    for (double ph : phases) {
        GeneratorSpec s = spec;
        s.cut_project.phase = ph;
        out.push_back(generate(s));
    }
    return out;
}

DelonePatch color_grid(const DelonePatch& w, const ColoredGrid& grid) {
    if (!w.periodicity()) throw InvalidArgument("coloring requires a periodicity lattice");
    if (grid.l < 1) throw InvalidArgument("grid scale l must be at least 1");
    const int dim = w.dim();
    const Basis2 lat = basis_of(w.periodicity()->basis, dim);
    const Basis2 g = basis_of(grid.basis, dim);
    for (Vec e : {g.e1, g.e2}) {
        if (dim == 1 && e.y != 0.0) continue;
        const Vec c = lat.solve(e);
        if (std::abs(c.x - std::round(c.x)) > 1e-9 || std::abs(c.y - std::round(c.y)) > 1e-9)
            throw InvalidArgument("grid basis not in the periodicity lattice");
    }
    const std::size_t zero = w.find({0.0, 0.0}, 1e-12);
    const Vec anchor_point = zero < w.size() ? Vec{} : w.points().front();
    std::vector<int> colors(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Vec l = g.solve(w.points()[i] - anchor_point);
        const double c[2] = {l.x, l.y};
        bool one = true;
        for (int j = 0; j < dim; ++j) {
            const auto cell = static_cast<long>(std::floor(c[j] + 1e-9));
            if (((cell % grid.l) + grid.l) % grid.l != 0) one = false;
        }
        colors[i] = one ? 1 : 0;
    }
    Periodicity per;
    per.origin = anchor_point;
    per.basis = dim == 1 ? std::vector<Vec>{static_cast<double>(grid.l) * g.e1}
                         : std::vector<Vec>{static_cast<double>(grid.l) * g.e1, static_cast<double>(grid.l) * g.e2};
    return DelonePatch(dim, w.points(), w.window(), w.r(), w.R(), std::move(colors), per);
}

std::string substitution_word(const SubstitutionSpec& spec) {
    validate_substitution(spec);
    std::string word = spec.seed.empty() ? std::string(1, spec.rules.begin()->first) : spec.seed;
    for (int k = 0; k < spec.iterations; ++k) {
        std::string next;
        for (char c : word) next += spec.rules.at(c);
        word = std::move(next);
        if (word.size() > (std::size_t{1} << 30)) throw InvalidArgument("invalid generator: substitution word too long");
    }
    return word;
}

std::map<char, double> perron_lengths(const SubstitutionSpec& spec) {
    validate_substitution(spec);
    std::map<char, double> len;
    for (const auto& [c, image] : spec.rules) {
        (void)image;
        len[c] = 1.0;
    }
    const char first = spec.rules.begin()->first;
    for (int it = 0; it < 2000; ++it) {
        std::map<char, double> next;
        for (const auto& [c, image] : spec.rules) {
            double s = 0.0;
            for (char d : image) s += len[d];
            next[c] = s;
        }
        const double norm0 = next[first];
        double change = 0.0;
        for (auto& [c, v] : next) {
            v /= norm0;
            change = std::max(change, std::abs(v - len[c]));
        }
        len = std::move(next);
        if (change < 1e-15) break;
    }
    return len;
}

std::map<char, long> letter_counts(const std::string& word) {
    std::map<char, long> out;
    for (char c : word) ++out[c];
    return out;
}

}  // namespace delone
