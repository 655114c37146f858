#include "delone/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "delone/error.hpp"

namespace delone {

namespace {

constexpr double kCertificateSlack = 1e-9;

struct Deviation {
    double value = 0.0;
    double energy = 0.0;
};

// max_E |f(E) - g(E)| over the merged breakpoints, with its location.
Deviation max_deviation(const StepFunction& f, const StepFunction& g) {
    std::vector<double> es = f.breakpoints();
    es.insert(es.end(), g.breakpoints().begin(), g.breakpoints().end());
    std::sort(es.begin(), es.end());
    Deviation d;
    for (double e : es) {
        const double v = std::abs(f(e) - g(e));
        if (v > d.value) d = {v, e};
    }
    return d;
}

}  // namespace

namespace {

StepDistribution f_a_unchecked(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q) {
    const Region inner = erode(q, a.range());
    if (inner.is_empty()) return {};
    const AssembledMatrix m = assemble_unchecked(a, w, inner);
    if (m.size() == 0) return {};
    return resolved_counting(m);
}

}  // namespace

StepDistribution F_A(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q) {
    a.validate();
    if (q.is_empty()) return {};
    const Region& hull = q.is_convex() ? q : q.outer();
    if (!contains_region(w.window(), hull)) throw WindowExceeded("F^A support", 0.0);
    return f_a_unchecked(a, w, q);
}

StepDistribution F_A(const FiniteRangeOperator& a, const Pattern& p) {
    a.validate();
    if (p.support.is_empty()) return {};
    // The pattern carries exactly the points of its support.
    const DelonePatch local(p.dim(), p.points, p.support, 0.0, a.range(), p.colors);
    return f_a_unchecked(a, local, p.support);
}

double error_b(const Region& q, double r, double range) {
    if (q.is_empty()) return 0.0;
    return 8.0 / ball_volume(q.dim(), r) * boundary_band(q, r, range + r);
}

double linear_bound_D(int dim, double r) { return 2.0 / ball_volume(dim, r); }

AlmostAdditiveFunction f_a_function(const FiniteRangeOperator& a, int dim, double r) {
    AlmostAdditiveFunction f;
    f.name = "F^A";
    f.eval = [a](const Pattern& p) { return BanachElement(StepFunction(F_A(a, p))); };
    f.error = [r, range = a.range()](const Pattern& p) { return error_b(p, r, range); };
    f.D = linear_bound_D(dim, r);
    return f;
}

RankReport rank_inequality_check(const AssembledMatrix& b, const AssembledMatrix& c) {
    if (b.size() != c.size()) throw InvalidArgument("rank check needs matrices of equal size");
    AssembledMatrix sum;
    sum.sites = b.sites;
    sum.entries = b.entries + c.entries;
    sum.entries.prune(0.0);
    RankReport rep;
    rep.rank = numerical_rank(c.dense());
    const Deviation d = max_deviation(resolved_counting(b), resolved_counting(sum));
    rep.max_deviation = d.value;
    rep.at_energy = d.energy;
    rep.holds = rep.max_deviation <= static_cast<double>(rep.rank);
    return rep;
}

AssembledMatrix principal_submatrix(const AssembledMatrix& a, const std::vector<std::size_t>& subset) {
    const auto n = static_cast<Eigen::Index>(a.size());
    std::vector<long> pos(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (subset[k] >= a.size()) throw InvalidArgument("subset index out of range");
        if (pos[subset[k]] >= 0) throw InvalidArgument("subset index repeated");
        pos[subset[k]] = static_cast<long>(k);
    }
    AssembledMatrix out;
    std::vector<Eigen::Triplet<double>> trips;
    for (int k = 0; k < a.entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(a.entries, k); it; ++it) {
            const long i = pos[static_cast<std::size_t>(it.row())], j = pos[static_cast<std::size_t>(it.col())];
            if (i >= 0 && j >= 0) trips.emplace_back(static_cast<int>(i), static_cast<int>(j), it.value());
        }
    const auto m = static_cast<Eigen::Index>(subset.size());
    out.entries.resize(m, m);
    out.entries.setFromTriplets(trips.begin(), trips.end());
    out.entries.makeCompressed();
    for (std::size_t k : subset) {
        if (!a.sites.empty()) out.sites.push_back(a.sites[k]);
        if (!a.patch_index.empty()) out.patch_index.push_back(a.patch_index[k]);
    }
    return out;
}

CompressionReport compression_check(const AssembledMatrix& a, const std::vector<std::size_t>& subset) {
    CompressionReport rep;
    rep.codimension = static_cast<long>(a.size()) - static_cast<long>(subset.size());
    rep.bound = 4.0 * static_cast<double>(rep.codimension);
    const AssembledMatrix sub = principal_submatrix(a, subset);
    const StepDistribution full = a.size() ? resolved_counting(a) : StepDistribution{};
    const StepDistribution part = sub.size() ? resolved_counting(sub) : StepDistribution{};
    const Deviation d = max_deviation(full, part);
    rep.max_deviation = d.value;
    rep.at_energy = d.energy;
    rep.holds = rep.max_deviation <= rep.bound;
    return rep;
}

DecouplingReport decoupling_check(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q,
                                  const std::vector<Region>& parts) {
    a.validate();
    DecouplingReport rep;
    const double r = w.r();
    const double vol_r = ball_volume(w.dim(), r);

    std::vector<std::vector<std::size_t>> idx;
    std::vector<std::size_t> all;
    std::vector<int> block_of(w.size(), -1);
    for (std::size_t j = 0; j < parts.size(); ++j) {
        const Region e = erode(parts[j], a.range());
        idx.push_back(e.is_empty() ? std::vector<std::size_t>{} : w.indices_in(e));
        for (std::size_t i : idx.back()) {
            if (block_of[i] >= 0) rep.block_diagonal = false;  // eroded parts overlap
            block_of[i] = static_cast<int>(j);
            all.push_back(i);
        }
        rep.dimension_bound += boundary_band(parts[j], r, a.range() + r) / vol_r;
        rep.b_sum += error_b(parts[j], r, a.range());
    }

    const AssembledMatrix u = assemble_sites(a, w, all);
    std::vector<std::size_t> offset;
    std::size_t off = 0;
    std::vector<int> row_block(all.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        offset.push_back(off);
        for (std::size_t k = 0; k < idx[j].size(); ++k) row_block[off + k] = static_cast<int>(j);
        off += idx[j].size();
    }
    for (int k = 0; k < u.entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(u.entries, k); it; ++it)
            if (it.value() != 0.0 && row_block[static_cast<std::size_t>(it.row())] != row_block[static_cast<std::size_t>(it.col())])
                rep.block_diagonal = false;

    StepFunction sum_parts;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const AssembledMatrix mj = assemble_sites(a, w, idx[j]);
        const auto n = static_cast<Eigen::Index>(idx[j].size());
        const auto o = static_cast<Eigen::Index>(offset[j]);
        if (n > 0) {
            const Eigen::MatrixXd blk = Eigen::MatrixXd(u.entries.block(o, o, n, n));
            if (blk != mj.dense()) rep.blocks_match = false;
            sum_parts = sum_parts + resolved_counting(mj);
        }
    }

    const StepDistribution whole = F_A(a, w, q);
    rep.additivity_defect = sup_distance(whole, sum_parts);

    const Region eq = erode(q, a.range());
    const std::vector<std::size_t> qidx = eq.is_empty() ? std::vector<std::size_t>{} : w.indices_in(eq);
    std::vector<long> pos(w.size(), -1);
    for (std::size_t k = 0; k < qidx.size(); ++k) pos[qidx[k]] = static_cast<long>(k);
    std::vector<std::size_t> subset;
    bool nested = true;
    for (std::size_t i : all) {
        if (pos[i] < 0)
            nested = false;
        else
            subset.push_back(static_cast<std::size_t>(pos[i]));
    }
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());  // overlapping parts
    rep.dimension_difference = static_cast<long>(qidx.size()) - static_cast<long>(all.size());
    if (!qidx.empty()) {
        const AssembledMatrix mq = assemble_sites(a, w, qidx);
        rep.compression_deviation = compression_check(mq, subset).max_deviation;
    } else {
        rep.compression_deviation = sum_parts.sup_norm();
    }

    rep.holds = nested && rep.block_diagonal && rep.blocks_match &&
                rep.compression_deviation <= 4.0 * static_cast<double>(rep.dimension_difference) &&
                static_cast<double>(rep.dimension_difference) <= rep.dimension_bound + kCertificateSlack &&
                rep.additivity_defect <= rep.b_sum + kCertificateSlack;
    return rep;
}

IdsStep ids_step(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q) {
    return ids_step(a, w, q, [](const AssembledMatrix& m, const Region&) { return counting_function(m); });
}

IdsStep ids_step(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q, const CountingProvider& count) {
    IdsStep s;
    s.region = q;
    s.volume = q.measure();
    if (!(s.volume > 0.0)) throw InvalidArgument("ids region has zero measure");
    const AssembledMatrix m = assemble(a, w, q);
    s.sites = m.size();
    s.counts = m.size() ? count(m, q).snapped(kEnergyResolution) : StepDistribution{};
    s.normalized = s.counts.scaled(1.0 / s.volume);
    const Region inner = erode(q, a.range());
    StepDistribution fa;
    if (!inner.is_empty()) {
        const AssembledMatrix mi = assemble_unchecked(a, w, inner);
        if (mi.size()) fa = count(mi, inner).snapped(kEnergyResolution);
    }
    s.certificate_lhs = sup_distance(s.counts, fa);
    s.certificate_rhs = 4.0 / ball_volume(w.dim(), w.r()) * boundary_band(q, w.r(), a.range() + w.r());
    if (s.certificate_lhs > s.certificate_rhs + kCertificateSlack)
        throw InvariantViolation("boundary certificate failed: ||n(A,Q) - F^A|| exceeds its bound");
    return s;
}

IdsResult ids(const FiniteRangeOperator& a, const DelonePatch& w, const VanHoveSequence& seq) {
    return ids(a, w, seq, [](const AssembledMatrix& m, const Region&) { return counting_function(m); });
}

IdsResult ids(const FiniteRangeOperator& a, const DelonePatch& w, const VanHoveSequence& seq,
              const CountingProvider& count) {
    IdsResult res;
    for (const Region& q : seq.regions) {
        res.steps.push_back(ids_step(a, w, q, count));
        if (res.steps.size() > 1)
            res.cauchy.push_back(sup_distance(res.steps.back().normalized, res.steps[res.steps.size() - 2].normalized));
    }
    if (!res.steps.empty()) res.limit = res.steps.back().normalized;
    return res;
}

std::vector<Jump> detect_jumps(const StepFunction& f, double theta, double delta) {
    std::vector<Jump> out;
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    if (bp.empty()) return out;
    if (delta <= 0.0) delta = 1e-8 * (bp.back() - bp.front());
    std::size_t i = 0;
    while (i < bp.size()) {
        std::size_t j = i;
        double best = v[i] - (i ? v[i - 1] : 0.0);
        double where = bp[i];
        while (j + 1 < bp.size() && bp[j + 1] - bp[j] <= delta) {
            ++j;
            const double inc = v[j] - v[j - 1];
            if (inc > best) {
                best = inc;
                where = bp[j];
            }
        }
        const double height = v[j] - (i ? v[i - 1] : 0.0);
        if (height >= theta) out.push_back({where, height});
        i = j + 1;
    }
    return out;
}

double jump_height(const AssembledMatrix& m, double volume, double e, double delta) {
    if (!(volume > 0.0) || !(delta > 0.0)) throw InvalidArgument("jump height needs a positive volume and window");
    return static_cast<double>(count_below(m, e + delta) - count_below(m, e - delta)) / volume;
}

std::vector<LocalEigenfunction> local_eigenfunction_search(const FiniteRangeOperator& a, const DelonePatch& w,
                                                           double e, double rho, const Region* within) {
    a.validate();
    std::vector<LocalEigenfunction> out;
    std::set<std::vector<std::size_t>> seen;
    const double reach = rho + 2.0 * a.range();
    const double tol = 1e-9;
    for (std::size_t c = 0; c < w.size(); ++c) {
        const Vec x = w.points()[c];
        if (within && !within->contains(x)) continue;
        if (!contains_region(w.window(), Region::ball(w.dim(), x, reach))) continue;
        std::vector<std::size_t> inner = w.index().in_ball(x, rho + kBoundaryTol);
        std::vector<std::size_t> outer = w.index().in_ball(x, reach + kBoundaryTol);
        std::sort(inner.begin(), inner.end());
        std::sort(outer.begin(), outer.end());
        if (inner.empty() || seen.count(inner)) continue;
        seen.insert(inner);

        Eigen::MatrixXd k(static_cast<Eigen::Index>(outer.size()), static_cast<Eigen::Index>(inner.size()));
        for (std::size_t row = 0; row < outer.size(); ++row)
            for (std::size_t col = 0; col < inner.size(); ++col) {
                const std::size_t i = outer[row], j = inner[col];
                k(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                    i == j ? a.diagonal(w, i) - e : a.offdiagonal(w.points()[i], w.points()[j]);
            }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        const double scale = std::max(1.0, sv.size() ? sv.maxCoeff() : 0.0);
        const Eigen::Index ncols = k.cols();
        for (Eigen::Index col = 0; col < ncols; ++col) {
            const double s = col < sv.size() ? sv[col] : 0.0;
            if (s > tol * scale) continue;
            Eigen::VectorXd psi = svd.matrixV().col(col);
            for (Eigen::Index t = 0; t < psi.size(); ++t)
                if (std::abs(psi[t]) > 1e-12) {
                    if (psi[t] < 0.0) psi = -psi;
                    break;
                }
            LocalEigenfunction f;
            f.center = x;
            f.support = inner;
            for (std::size_t i : inner) f.sites.push_back(w.points()[i]);
            f.coefficients.assign(psi.data(), psi.data() + psi.size());
            f.residual = (k * psi).norm();
            out.push_back(std::move(f));
        }
    }
    return out;
}

long independent_states(const std::vector<LocalEigenfunction>& states, const Region* within) {
    std::vector<const LocalEigenfunction*> kept;
    for (const auto& f : states) {
        bool inside = true;
        if (within)
            for (const Vec& x : f.sites) inside = inside && within->contains(x);
        if (inside) kept.push_back(&f);
    }
    if (kept.empty()) return 0;
    // Gram matrix over the sparse supports.
    std::vector<std::map<std::size_t, double>> v(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k)
        for (std::size_t t = 0; t < kept[k]->support.size(); ++t) v[k][kept[k]->support[t]] = kept[k]->coefficients[t];
    const auto n = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            double d = 0.0;
            for (const auto& [site, c] : v[static_cast<std::size_t>(i)]) {
                auto it = v[static_cast<std::size_t>(j)].find(site);
                if (it != v[static_cast<std::size_t>(j)].end()) d += c * it->second;
            }
            g(i, j) = g(j, i) = d;
        }
    return numerical_rank(g, 1e-9);
}

}  // namespace delone
