#include "delone/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Core>
#include <boost/version.hpp>

#include "delone/error.hpp"

namespace delone {

json build_info() {
    return {{"delone", DELONE_VERSION},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"boost", BOOST_LIB_VERSION},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                                  "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"compiler", __VERSION__},
            {"cxx_standard", __cplusplus}};
}

std::string format_double(double v) {
    if (v == 0.0) return "0";  // folds -0 as well
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
    return s;
}

json to_json(Vec v, int dim) { return dim == 1 ? json::array({v.x}) : json::array({v.x, v.y}); }

Vec vec_from_json(const json& j, int dim) {
    if (j.is_number() && dim == 1) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.empty() || j.size() > 2) throw InvalidArgument("point must be an array of 1 or 2 numbers");
    for (const auto& c : j)
        if (!c.is_number()) throw InvalidArgument("point coordinates must be numbers");
    if (dim == 2 && j.size() != 2) throw InvalidArgument("2D point needs two coordinates");
    return {j[0].get<double>(), j.size() > 1 && dim == 2 ? j[1].get<double>() : 0.0};
}

json to_json(const Region& q) {
    json j;
    switch (q.kind()) {
        case RegionKind::empty:
            j = {{"type", "empty"}, {"dimension", q.dim()}};
            break;
        case RegionKind::box:
            if (q.dim() == 1) {
                j = {{"type", "interval"}, {"lo", q.lo()}, {"hi", q.hi()}};
            } else {
                const Bounds b = q.bounds();
                j = {{"type", "box"}, {"lo", to_json(b.lo, 2)}, {"hi", to_json(b.hi, 2)}};
            }
            break;
        case RegionKind::ball:
            j = {{"type", "ball"}, {"dimension", q.dim()}, {"center", to_json(q.center(), q.dim())}, {"radius", q.radius()}};
            break;
        case RegionKind::polytope: {
            json vs = json::array();
            for (const Vec& v : q.core()) vs.push_back(to_json(v, 2));
            j = {{"type", "polygon"}, {"vertices", vs}};
            break;
        }
        case RegionKind::rounded: {
            json vs = json::array();
            for (const Vec& v : q.core()) vs.push_back(to_json(v, 2));
            j = {{"type", "rounded"}, {"vertices", vs}, {"radius", q.rounding()}};
            break;
        }
        case RegionKind::composite: {
            json holes = json::array();
            for (const Region& h : q.holes()) holes.push_back(to_json(h));
            j = {{"type", "composite"}, {"outer", to_json(q.outer())}, {"holes", holes}};
            break;
        }
    }
    return j;
}

namespace {

double number_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw InvalidArgument(std::string("region field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::vector<Vec> vertex_list(const json& j) {
    if (!j.contains("vertices") || !j.at("vertices").is_array()) throw InvalidArgument("region needs a vertex list");
    std::vector<Vec> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(vec_from_json(v, 2));
    return vs;
}

}  // namespace

Region region_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw InvalidArgument("region must be an object with a string 'type'");
    const std::string t = j.at("type").get<std::string>();
    if (t == "empty") return Region::empty(j.value("dimension", 1));
    if (t == "interval") return Region::interval(number_field(j, "lo"), number_field(j, "hi"));
    if (t == "box") {
        if (!j.contains("lo") || !j.contains("hi")) throw InvalidArgument("box needs 'lo' and 'hi'");
        const json& lo = j.at("lo");
        const int dim = lo.is_array() ? static_cast<int>(lo.size()) : 1;
        if (dim == 1) {
            const Vec a = vec_from_json(lo, 1), b = vec_from_json(j.at("hi"), 1);
            return Region::interval(a.x, b.x);
        }
        return Region::box(2, vec_from_json(lo, 2), vec_from_json(j.at("hi"), 2));
    }
    if (t == "ball") {
        const int dim = j.value("dimension", 0);
        if (dim != 1 && dim != 2) throw InvalidArgument("ball needs 'dimension' 1 or 2");
        if (!j.contains("center")) throw InvalidArgument("ball needs a 'center'");
        return Region::ball(dim, vec_from_json(j.at("center"), dim), number_field(j, "radius"));
    }
    if (t == "polygon") return Region::polygon(vertex_list(j));
    if (t == "rounded") return Region::rounded(Region::polygon(vertex_list(j)), number_field(j, "radius"));
    if (t == "composite") {
        if (!j.contains("outer")) throw InvalidArgument("composite needs an 'outer' region");
        std::vector<Region> holes;
        if (j.contains("holes"))
            for (const auto& h : j.at("holes")) holes.push_back(region_from_json(h));
        return Region::composite(region_from_json(j.at("outer")), std::move(holes));
    }
    throw InvalidArgument("unknown region type '" + t + "'");
}

json to_json(const DelonePatch& w) {
    json pts = json::array();
    for (const Vec& p : w.points()) pts.push_back(to_json(p, w.dim()));
    json j = {{"dimension", w.dim()}, {"r", w.r()}, {"R", w.R()}, {"window", to_json(w.window())}, {"points", pts}};
    if (w.colored()) j["colors"] = {{"values", w.colors()}};
    if (w.periodicity()) {
        json basis = json::array();
        for (const Vec& b : w.periodicity()->basis) basis.push_back(to_json(b, w.dim()));
        j["periodicity"] = {{"basis", basis}, {"origin", to_json(w.periodicity()->origin, w.dim())}};
    }
    return j;
}

DelonePatch patch_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("patch must be an object");
    for (const char* k : {"dimension", "r", "R", "window", "points"})
        if (!j.contains(k)) throw InvalidArgument(std::string("patch is missing '") + k + "'");
    const int dim = j.at("dimension").get<int>();
    std::vector<Vec> pts;
    for (const auto& p : j.at("points")) pts.push_back(vec_from_json(p, dim));
    std::vector<int> colors;
    if (j.contains("colors")) colors = j.at("colors").at("values").get<std::vector<int>>();
    std::optional<Periodicity> per;
    if (j.contains("periodicity")) {
        Periodicity p;
        for (const auto& b : j.at("periodicity").at("basis")) p.basis.push_back(vec_from_json(b, dim));
        p.origin = vec_from_json(j.at("periodicity").at("origin"), dim);
        per = p;
    }
    return DelonePatch(dim, std::move(pts), region_from_json(j.at("window")), j.at("r").get<double>(),
                       j.at("R").get<double>(), std::move(colors), std::move(per));
}

json to_json(const StepFunction& f) { return {{"breakpoints", f.breakpoints()}, {"values", f.values()}}; }

StepDistribution distribution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values"))
        throw InvalidArgument("distribution needs 'breakpoints' and 'values'");
    return StepDistribution(j.at("breakpoints").get<std::vector<double>>(), j.at("values").get<std::vector<double>>());
}

json to_json(const Decomposition& d) {
    json cells = json::array();
    int dim = d.surface.support.dim();
    for (const Cell& c : d.cells) {
        json verts = json::array();
        if (c.polytope.dim() == 1) {
            verts.push_back(json::array({c.polytope.lo()}));
            verts.push_back(json::array({c.polytope.hi()}));
        } else {
            for (const Vec& v : c.polytope.core()) verts.push_back(to_json(v, 2));
        }
        cells.push_back({{"center", to_json(c.center, dim)},
                         {"vertices", verts},
                         {"key", c.key.digest()},
                         {"content", c.content.points.size()}});
    }
    json surface = json::array();
    for (const Vec& p : d.surface.points) surface.push_back(to_json(p, dim));
    json j = {{"dimension", dim},
              {"cells", cells},
              {"surface", surface},
              {"R", d.radii.R},
              {"r", d.radii.r},
              {"resolution", d.radii.resolution},
              {"region_measure", d.region_measure},
              {"cells_measure", d.cells_measure},
              {"surface_measure", d.surface_measure},
              {"surface_in_band", d.surface_in_band}};
    if (d.tiling_residual) j["tiling_residual"] = *d.tiling_residual;
    return j;
}

std::string distribution_csv(const StepFunction& f, const std::string& comment) {
    std::string out;
    if (!comment.empty()) out += "# " + comment + "\n";
    out += "E,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out += format_double(f.breakpoints()[i]) + "," + format_double(f.values()[i]) + "\n";
    return out;
}

namespace {

const std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

}  // namespace

std::string staircase_svg(const std::vector<Series>& series, double lo, double hi, const std::string& title) {
    const double w = 640, h = 400, m = 40;
    double top = 0.0;
    for (const auto& s : series) top = std::max(top, s.f.sup_norm());
    if (top <= 0.0) top = 1.0;
    if (!(hi > lo)) hi = lo + 1.0;
    auto X = [&](double e) { return m + (e - lo) / (hi - lo) * (w - 2 * m); };
    auto Y = [&](double v) { return h - m - v / top * (h - 2 * m); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<path d=\"M" << fmt(m) << " " << fmt(h - m) << " H" << fmt(w - m) << " M" << fmt(m) << " " << fmt(h - m)
       << " V" << fmt(m) << "\" stroke=\"black\" fill=\"none\"/>\n";
    if (!title.empty()) os << "<text x=\"" << fmt(m) << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
    os << "<text x=\"" << fmt(m) << "\" y=\"" << fmt(h - 10) << "\" font-size=\"11\">" << fmt(lo) << "</text>\n";
    os << "<text x=\"" << fmt(w - m) << "\" y=\"" << fmt(h - 10) << "\" font-size=\"11\">" << fmt(hi) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const StepFunction& f = series[k].f;
        os << "<path fill=\"none\" stroke=\"" << kPalette[k % kPalette.size()] << "\" d=\"M" << fmt(X(lo)) << " "
           << fmt(Y(f(lo)));
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double e = f.breakpoints()[i];
            if (e <= lo || e >= hi) continue;
            os << " H" << fmt(X(e)) << " V" << fmt(Y(f.values()[i]));
        }
        os << " H" << fmt(X(hi)) << "\"/>\n";
        os << "<text x=\"" << fmt(w - m - 150) << "\" y=\"" << fmt(m + 16.0 * static_cast<double>(k)) << "\" font-size=\"11\" fill=\""
           << kPalette[k % kPalette.size()] << "\">" << series[k].label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string decomposition_svg(const Decomposition& d) { return decomposition_svg(to_json(d)); }

std::string decomposition_svg(const json& d) {
    if (d.value("dimension", 0) != 2) throw InvalidArgument("decomposition plots need d = 2");
    Bounds b{{1e300, 1e300}, {-1e300, -1e300}};
    auto grow = [&](Vec v) {
        b.lo = {std::min(b.lo.x, v.x), std::min(b.lo.y, v.y)};
        b.hi = {std::max(b.hi.x, v.x), std::max(b.hi.y, v.y)};
    };
    for (const auto& c : d.at("cells"))
        for (const auto& v : c.at("vertices")) grow(vec_from_json(v, 2));
    for (const auto& p : d.at("surface")) grow(vec_from_json(p, 2));
    if (b.lo.x > b.hi.x) b = {{0, 0}, {1, 1}};
    const double size = 600, m = 20;
    const double span = std::max(b.hi.x - b.lo.x, b.hi.y - b.lo.y);
    const double s = (size - 2 * m) / (span > 0 ? span : 1.0);
    auto X = [&](double x) { return m + (x - b.lo.x) * s; };
    auto Y = [&](double y) { return size - m - (y - b.lo.y) * s; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& c : d.at("cells")) {
        const std::uint64_t h = fnv1a64(c.at("key").get<std::string>());
        char color[8];
        std::snprintf(color, sizeof color, "#%02x%02x%02x", static_cast<unsigned>(96 + (h & 0x7f)),
                      static_cast<unsigned>(96 + ((h >> 8) & 0x7f)), static_cast<unsigned>(96 + ((h >> 16) & 0x7f)));
        os << "<polygon fill=\"" << color << "\" stroke=\"black\" stroke-width=\"0.5\" points=\"";
        for (const auto& v : c.at("vertices")) {
            const Vec p = vec_from_json(v, 2);
            os << fmt(X(p.x)) << "," << fmt(Y(p.y)) << " ";
        }
        os << "\"/>\n";
        const Vec ctr = vec_from_json(c.at("center"), 2);
        os << "<circle cx=\"" << fmt(X(ctr.x)) << "\" cy=\"" << fmt(Y(ctr.y)) << "\" r=\"1.5\" fill=\"#333\"/>\n";
    }
    for (const auto& p : d.at("surface")) {
        const Vec v = vec_from_json(p, 2);
        os << "<circle cx=\"" << fmt(X(v.x)) << "\" cy=\"" << fmt(Y(v.y)) << "\" r=\"1.5\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace delone
