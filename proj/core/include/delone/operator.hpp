#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "delone/patch.hpp"

namespace delone {

// A(x, y) += value for 0 < |x - y| <= radius.
struct HoppingTerm {
    double radius = 1.0;
    double value = 1.0;
};

// Graph Laplacian of the radius graph: degree on the diagonal, -1 off it.
// Degrees count neighbours in the whole set, not only inside the region.
struct LaplacianTerm {
    double radius = 1.0;
};

struct OnsiteTerm {
    double value = 0.0;
};

// Diagonal potential read off the local configuration around each site:
// the points of w in x + S, translated by -x, are matched against a table of
// relative configurations. S is B(0, radius) or, in d = 1, the forward
// interval [0, radius].
struct PatternPotentialTerm {
    enum class Support { ball, forward };
    struct Entry {
        std::vector<Vec> points;  // relative to the site, which sits at 0
        double value = 0.0;
    };
    Support support = Support::ball;
    double radius = 1.0;
    std::vector<Entry> table;
    double fallback = 0.0;
    double match_tol = 1e-6;
};

// Symmetric operator of finite range R^A built from local kernel terms.
class FiniteRangeOperator {
  public:
    FiniteRangeOperator() = default;
    explicit FiniteRangeOperator(double range) : range_(range) {}

    static FiniteRangeOperator adjacency(double hop_radius, double range = 0.0);
    static FiniteRangeOperator laplacian(double hop_radius, double range = 0.0);
    static FiniteRangeOperator zero(double range = 1.0);

    FiniteRangeOperator& add(HoppingTerm t);
    FiniteRangeOperator& add(LaplacianTerm t);
    FiniteRangeOperator& add(OnsiteTerm t);
    FiniteRangeOperator& add(PatternPotentialTerm t);

    double range() const { return range_; }
    // Largest distance at which an off-diagonal entry can be nonzero.
    double hop_reach() const;
    const std::vector<HoppingTerm>& hopping() const { return hopping_; }
    const std::vector<LaplacianTerm>& laplacians() const { return laplacians_; }
    const std::vector<OnsiteTerm>& onsite() const { return onsite_; }
    const std::vector<PatternPotentialTerm>& potentials() const { return potentials_; }

    // Throws InvalidArgument unless every term fits strictly inside the range.
    void validate() const;

    double diagonal(const DelonePatch& w, std::size_t i) const;
    double offdiagonal(Vec x, Vec y) const;

  private:
    double range_ = 0.0;
    std::vector<HoppingTerm> hopping_;
    std::vector<LaplacianTerm> laplacians_;
    std::vector<OnsiteTerm> onsite_;
    std::vector<PatternPotentialTerm> potentials_;
};

// Default range when a configuration names only the hopping radius.
inline double default_range(double hop_radius) { return 1.5 * hop_radius; }

struct AssembledMatrix {
    std::vector<Vec> sites;                 // lexicographic order
    std::vector<std::size_t> patch_index;   // index of each site in the patch
    Eigen::SparseMatrix<double> entries;    // symmetric, both triangles stored

    std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
    int bandwidth() const;
    double norm_inf() const;
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries); }
    static AssembledMatrix from_dense(const Eigen::MatrixXd& m);
};

// Restriction of A to l^2(Q ^ w); requires Q^{R^A} inside the window.
AssembledMatrix assemble(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q);
// Same without the halo check, for callers that guarantee it by construction.
AssembledMatrix assemble_unchecked(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q);
// Restriction to an explicit list of patch indices (kept in the given order).
AssembledMatrix assemble_sites(const FiniteRangeOperator& a, const DelonePatch& w, const std::vector<std::size_t>& idx);

}  // namespace delone
