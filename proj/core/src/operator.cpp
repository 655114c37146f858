#include "delone/operator.hpp"

#include <algorithm>
#include <cmath>

#include "delone/error.hpp"

namespace delone {

namespace {

constexpr double kDistanceTol = 1e-9;

bool matches(const PatternPotentialTerm::Entry& e, const std::vector<Vec>& rel, double tol) {
    if (e.points.size() != rel.size()) return false;
    for (const Vec& p : e.points) {
        bool hit = false;
        for (const Vec& q : rel)
            if (near(p, q, tol)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

FiniteRangeOperator FiniteRangeOperator::adjacency(double hop_radius, double range) {
    FiniteRangeOperator a(range > 0.0 ? range : default_range(hop_radius));
    a.add(HoppingTerm{hop_radius, 1.0});
    return a;
}

FiniteRangeOperator FiniteRangeOperator::laplacian(double hop_radius, double range) {
    FiniteRangeOperator a(range > 0.0 ? range : default_range(hop_radius));
    a.add(LaplacianTerm{hop_radius});
    return a;
}

FiniteRangeOperator FiniteRangeOperator::zero(double range) { return FiniteRangeOperator(range); }

FiniteRangeOperator& FiniteRangeOperator::add(HoppingTerm t) {
    hopping_.push_back(t);
    return *this;
}
FiniteRangeOperator& FiniteRangeOperator::add(LaplacianTerm t) {
    laplacians_.push_back(t);
    return *this;
}
FiniteRangeOperator& FiniteRangeOperator::add(OnsiteTerm t) {
    onsite_.push_back(t);
    return *this;
}
FiniteRangeOperator& FiniteRangeOperator::add(PatternPotentialTerm t) {
    potentials_.push_back(std::move(t));
    return *this;
}

double FiniteRangeOperator::hop_reach() const {
    double r = 0.0;
    for (const auto& h : hopping_) r = std::max(r, h.radius);
    for (const auto& l : laplacians_) r = std::max(r, l.radius);
    return r;
}

void FiniteRangeOperator::validate() const {
    if (!(range_ > 0.0)) throw InvalidArgument("operator range must be positive");
    for (const auto& h : hopping_)
        if (!(h.radius > 0.0) || !(h.radius < range_)) throw InvalidArgument("hopping radius must lie in (0, R^A)");
    for (const auto& l : laplacians_)
        if (!(l.radius > 0.0) || !(l.radius < range_)) throw InvalidArgument("laplacian radius must lie in (0, R^A)");
    for (const auto& p : potentials_) {
        if (!(p.radius > 0.0) || p.radius > range_) throw InvalidArgument("potential support must lie in B(0, R^A)");
        if (!(p.match_tol > 0.0)) throw InvalidArgument("potential match tolerance must be positive");
    }
}

double FiniteRangeOperator::diagonal(const DelonePatch& w, std::size_t i) const {
    const Vec x = w.points()[i];
    double d = 0.0;
    for (const auto& o : onsite_) d += o.value;
    for (const auto& l : laplacians_) {
        for (std::size_t j : w.index().in_ball(x, l.radius + kDistanceTol))
            if (j != i && distance(w.points()[j], x) > 0.0) d += 1.0;
    }
    for (const auto& p : potentials_) {
        std::vector<Vec> rel;
        const double reach = p.radius + kDistanceTol;
        for (std::size_t j : w.index().in_ball(x, reach)) {
            const Vec y = w.points()[j] - x;
            if (p.support == PatternPotentialTerm::Support::forward && y.x < -kDistanceTol) continue;
            rel.push_back(y);
        }
        double v = p.fallback;
        for (const auto& e : p.table)
            if (matches(e, rel, p.match_tol)) {
                v = e.value;
                break;
            }
        d += v;
    }
    return d;
}

double FiniteRangeOperator::offdiagonal(Vec x, Vec y) const {
    const double r = distance(x, y);
    if (r == 0.0) return 0.0;
    double v = 0.0;
    for (const auto& h : hopping_)
        if (r <= h.radius + kDistanceTol) v += h.value;
    for (const auto& l : laplacians_)
        if (r <= l.radius + kDistanceTol) v -= 1.0;
    return v;
}

int AssembledMatrix::bandwidth() const {
    int bw = 0;
    for (int k = 0; k < entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(entries, k); it; ++it)
            if (it.value() != 0.0) bw = std::max(bw, static_cast<int>(std::abs(it.row() - it.col())));
    return bw;
}

double AssembledMatrix::norm_inf() const {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(entries.rows());
    for (int k = 0; k < entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(entries, k); it; ++it) rows[it.row()] += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
}

AssembledMatrix AssembledMatrix::from_dense(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("matrix must be square");
    if (!m.isApprox(m.transpose(), 0.0) && (m - m.transpose()).cwiseAbs().maxCoeff() > 0.0)
        throw InvalidArgument("matrix must be symmetric");
    AssembledMatrix out;
    out.entries = m.sparseView();
    out.entries.makeCompressed();
    return out;
}

AssembledMatrix assemble_sites(const FiniteRangeOperator& a, const DelonePatch& w, const std::vector<std::size_t>& idx) {
    a.validate();
    AssembledMatrix out;
    out.patch_index = idx;
    out.sites.reserve(idx.size());
    for (std::size_t i : idx) out.sites.push_back(w.points()[i]);
    std::vector<long> pos(w.size(), -1);
    for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<long>(k);

    std::vector<Eigen::Triplet<double>> trips;
    const double reach = a.hop_reach() + kDistanceTol;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const std::size_t i = idx[k];
        const double d = a.diagonal(w, i);
        if (d != 0.0) trips.emplace_back(static_cast<int>(k), static_cast<int>(k), d);
        if (reach <= kDistanceTol) continue;
        for (std::size_t j : w.index().in_ball(w.points()[i], reach)) {
            const long kj = pos[j];
            if (kj < 0 || j == i) continue;
            const double v = a.offdiagonal(w.points()[i], w.points()[j]);
            if (v != 0.0) trips.emplace_back(static_cast<int>(k), static_cast<int>(kj), v);
        }
    }
    const auto n = static_cast<Eigen::Index>(idx.size());
    out.entries.resize(n, n);
    out.entries.setFromTriplets(trips.begin(), trips.end());
    out.entries.makeCompressed();
    return out;
}

AssembledMatrix assemble_unchecked(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q) {
    return assemble_sites(a, w, w.indices_in(q));
}

AssembledMatrix assemble(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q) {
    a.validate();
    if (!q.is_empty() && !contains_region(w.window(), dilate(q, a.range())))
        throw WindowExceeded("assembly region plus its R^A halo", a.range());
    return assemble_unchecked(a, w, q);
}

}  // namespace delone
