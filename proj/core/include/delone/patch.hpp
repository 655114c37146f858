#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "delone/pattern.hpp"
#include "delone/point_index.hpp"
#include "delone/region.hpp"

namespace delone {

// Known translation symmetry of a patch: the points are invariant under the
// lattice spanned by basis (within the window), origin is one lattice point.
struct Periodicity {
    std::vector<Vec> basis;
    Vec origin;
};

// Finite piece of a Delone set: points inside a window with declared packing
// radius r and covering radius R. Points are stored in lexicographic order.
class DelonePatch {
  public:
    DelonePatch() = default;
    DelonePatch(int dim, std::vector<Vec> points, Region window, double r, double R,
                std::vector<int> colors = {}, std::optional<Periodicity> periodicity = std::nullopt);

    int dim() const { return dim_; }
    const std::vector<Vec>& points() const { return points_; }
    const std::vector<int>& colors() const { return colors_; }
    bool colored() const { return !colors_.empty(); }
    const Region& window() const { return window_; }
    double r() const { return r_; }
    double R() const { return R_; }
    const std::optional<Periodicity>& periodicity() const { return periodicity_; }
    const PointIndex& index() const { return *index_; }
    std::size_t size() const { return points_.size(); }

    // Indices of points inside q (closed), in lexicographic order. No window check.
    std::vector<std::size_t> indices_in(const Region& q) const;
    // Index of the point within tol of p, or size().
    std::size_t find(Vec p, double tol = kPatternTol) const;

  private:
    int dim_ = 1;
    std::vector<Vec> points_;
    std::vector<int> colors_;
    Region window_;
    double r_ = 0.0;
    double R_ = 0.0;
    std::optional<Periodicity> periodicity_;
    std::shared_ptr<const PointIndex> index_;
};

// (points of w in Q, Q). Throws WindowExceeded unless Q lies in the window.
Pattern restrict(const DelonePatch& w, const Region& q);

// [B(x, s) ^ w]; the ball must fit the window.
Pattern ball_pattern(const DelonePatch& w, Vec x, double s);

struct DeloneViolation {
    enum class Kind { separation, covering };
    Kind kind;
    Vec a;          // separation: first point; covering: probe center
    Vec b;          // separation: second point; covering: nearest point (if any)
    double value;   // separation: distance; covering: distance to the nearest point
};

// Checks 2r-separation of all pairs and R-covering on a grid of centers with
// pitch <= r/2 over the part of the window where B(p, R) fits.
std::vector<DeloneViolation> verify_delone(const DelonePatch& w);

}  // namespace delone
