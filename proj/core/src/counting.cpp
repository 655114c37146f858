#include "delone/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "delone/error.hpp"

extern "C" void dsbev_(const char* jobz, const char* uplo, const int* n, const int* kd, double* ab, const int* ldab,
                       double* w, double* z, const int* ldz, double* work, int* info, std::size_t, std::size_t);

namespace delone {

namespace {

using Rational = boost::multiprecision::cpp_rational;

const double kAlpha = (1.0 + std::sqrt(17.0)) / 8.0;

void symmetric_swap(Eigen::MatrixXd& w, Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    w.row(a).swap(w.row(b));
    w.col(a).swap(w.col(b));
}

void add_sign(Inertia& in, double lambda) {
    if (lambda < 0.0)
        ++in.negative;
    else if (lambda > 0.0)
        ++in.positive;
    else
        ++in.zero;
    in.min_abs_pivot = std::min(in.min_abs_pivot, std::abs(lambda));
}

Inertia merge(Inertia a, const Inertia& b) {
    a.negative += b.negative;
    a.zero += b.zero;
    a.positive += b.positive;
    a.min_abs_pivot = std::min(a.min_abs_pivot, b.min_abs_pivot);
    return a;
}

Rational exact_rational(double v) {
    int exp = 0;
    const double mant = std::frexp(v, &exp);
    // 53-bit mantissa as an integer, then scale by the binary exponent.
    const auto m = static_cast<long long>(std::ldexp(mant, 53));
    Rational r(m);
    exp -= 53;
    Rational scale(1);
    for (int k = 0; k < std::abs(exp); ++k) scale *= 2;
    return exp >= 0 ? Rational(r * scale) : Rational(r / scale);
}

bool integral_entries(const AssembledMatrix& m) {
    for (int k = 0; k < m.entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m.entries, k); it; ++it) {
            const double v = it.value();
            if (v != std::round(v) || std::abs(v) > 1e9) return false;
        }
    return true;
}

// Inertia of M - e I in exact arithmetic, by symmetric elimination with
// 1x1 pivots where a diagonal entry is nonzero and 2x2 pivots otherwise.
Inertia exact_inertia(const AssembledMatrix& m, double e) {
    const auto n = static_cast<std::size_t>(m.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    const Rational re = exact_rational(e);
    for (int k = 0; k < m.entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m.entries, k); it; ++it)
            a[static_cast<std::size_t>(it.row())][static_cast<std::size_t>(it.col())] = Rational(static_cast<long long>(it.value()));
    for (std::size_t i = 0; i < n; ++i) a[i][i] -= re;

    Inertia in;
    in.min_abs_pivot = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> live(n);
    for (std::size_t i = 0; i < n; ++i) live[i] = i;

    while (!live.empty()) {
        std::size_t pi = live.size();
        for (std::size_t k = 0; k < live.size(); ++k)
            if (a[live[k]][live[k]] != 0) {
                pi = k;
                break;
            }
        if (pi < live.size()) {
            const std::size_t p = live[pi];
            const Rational d = a[p][p];
            add_sign(in, d > 0 ? 1.0 : -1.0);
            in.min_abs_pivot = std::min(in.min_abs_pivot, std::abs(static_cast<double>(d)));
            live.erase(live.begin() + static_cast<long>(pi));
            for (std::size_t i : live) {
                if (a[i][p] == 0) continue;
                const Rational f = a[i][p] / d;
                for (std::size_t j : live)
                    if (a[p][j] != 0) a[i][j] -= f * a[p][j];
            }
            continue;
        }
        // Every live diagonal entry vanishes: pair p with any q where a[p][q] != 0.
        std::size_t qi = live.size();
        for (std::size_t k = 1; k < live.size(); ++k)
            if (a[live[0]][live[k]] != 0) {
                qi = k;
                break;
            }
        if (qi == live.size()) {
            // Zero row: an exact zero eigenvalue direction.
            ++in.zero;
            in.min_abs_pivot = 0.0;
            live.erase(live.begin());
            continue;
        }
        const std::size_t p = live[0], q = live[qi];
        const Rational b = a[p][q];
        // Block [[0, b], [b, 0]] has eigenvalues +-|b|.
        ++in.negative;
        ++in.positive;
        in.min_abs_pivot = std::min(in.min_abs_pivot, std::abs(static_cast<double>(b)));
        live.erase(live.begin() + static_cast<long>(qi));
        live.erase(live.begin());
        // inverse of the block is [[0, 1/b], [1/b, 0]].
        for (std::size_t i : live) {
            const Rational ip = a[i][p], iq = a[i][q];
            if (ip == 0 && iq == 0) continue;
            for (std::size_t j : live) {
                const Rational& pj = a[p][j];
                const Rational& qj = a[q][j];
                if (pj == 0 && qj == 0) continue;
                a[i][j] -= (ip * qj + iq * pj) / b;
            }
        }
    }
    return in;
}

Inertia dense_inertia(const AssembledMatrix& m, double z) {
    Eigen::MatrixXd a = m.dense();
    a.diagonal().array() -= z;
    return BunchKaufman(a).inertia();
}

Inertia banded_inertia(const AssembledMatrix& m, double z, Eigen::Index block) {
    const Eigen::Index n = m.entries.rows();
    Inertia total;
    total.min_abs_pivot = std::numeric_limits<double>::infinity();
    Eigen::Index start = 0;
    Eigen::Index len = std::min(block, n);
    Eigen::MatrixXd s = Eigen::MatrixXd(m.entries.block(0, 0, len, len));
    s.diagonal().array() -= z;
    BunchKaufman bk;
    while (true) {
        bk.compute(s);
        total = merge(total, bk.inertia());
        const Eigen::Index next = start + len;
        if (next >= n) break;
        const Eigen::Index nlen = std::min(block, n - next);
        if (bk.singular()) {
            // Rest of the count is meaningless; the caller re-shifts on ties.
            total.zero += n - next;
            total.min_abs_pivot = 0.0;
            break;
        }
        const Eigen::MatrixXd c = Eigen::MatrixXd(m.entries.block(start, next, len, nlen));
        Eigen::MatrixXd a = Eigen::MatrixXd(m.entries.block(next, next, nlen, nlen));
        a.diagonal().array() -= z;
        s = a - c.transpose() * bk.solve(c);
        start = next;
        len = nlen;
    }
    return total;
}

}  // namespace

void BunchKaufman::compute(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("factorization needs a square matrix");
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd w = a.triangularView<Eigen::Lower>();
    w.triangularView<Eigen::StrictlyUpper>() = w.transpose().triangularView<Eigen::StrictlyUpper>();
    l_ = Eigen::MatrixXd::Identity(n, n);
    d_ = Eigen::MatrixXd::Zero(n, n);
    blocks_.assign(static_cast<std::size_t>(n), 0);
    swaps_.clear();
    inertia_ = Inertia{};
    inertia_.min_abs_pivot = std::numeric_limits<double>::infinity();

    Eigen::Index k = 0;
    while (k < n) {
        const double absakk = std::abs(w(k, k));
        Eigen::Index imax = k;
        double colmax = 0.0;
        if (k + 1 < n) {
            w.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&imax);
            imax += k + 1;
            colmax = std::abs(w(imax, k));
        }
        int kstep = 1;
        Eigen::Index kp = k;
        if (std::max(absakk, colmax) == 0.0) {
            blocks_[static_cast<std::size_t>(k)] = 1;
            add_sign(inertia_, 0.0);
            ++k;
            continue;
        }
        if (absakk < kAlpha * colmax) {
            double rowmax = 0.0;
            for (Eigen::Index j = k; j < n; ++j)
                if (j != imax) rowmax = std::max(rowmax, std::abs(w(imax, j)));
            if (absakk >= kAlpha * colmax * (colmax / rowmax)) {
                kp = k;
            } else if (std::abs(w(imax, imax)) >= kAlpha * rowmax) {
                kp = imax;
            } else {
                kp = imax;
                kstep = 2;
            }
        }
        const Eigen::Index kk = k + kstep - 1;
        if (kp != kk) {
            symmetric_swap(w, kk, kp);
            if (k > 0) l_.row(kk).head(k).swap(l_.row(kp).head(k));
            swaps_.emplace_back(kk, kp);
        }
        const Eigen::Index rest = n - k - kstep;
        if (kstep == 1) {
            const double d = w(k, k);
            d_(k, k) = d;
            blocks_[static_cast<std::size_t>(k)] = 1;
            add_sign(inertia_, d);
            if (rest > 0) {
                const Eigen::VectorXd col = w.col(k).tail(rest);
                const Eigen::VectorXd lc = col / d;
                w.bottomRightCorner(rest, rest).noalias() -= lc * col.transpose();
                l_.col(k).tail(rest) = lc;
            }
        } else {
            const double p = w(k, k), q = w(k + 1, k), r = w(k + 1, k + 1);
            d_(k, k) = p;
            d_(k + 1, k) = d_(k, k + 1) = q;
            d_(k + 1, k + 1) = r;
            blocks_[static_cast<std::size_t>(k)] = 2;
            blocks_[static_cast<std::size_t>(k + 1)] = 0;
            const double mean = 0.5 * (p + r), rad = std::hypot(0.5 * (p - r), q);
            add_sign(inertia_, mean - rad);
            add_sign(inertia_, mean + rad);
            if (rest > 0) {
                const double det = p * r - q * q;
                Eigen::Matrix2d dinv;
                dinv << r / det, -q / det, -q / det, p / det;
                const Eigen::MatrixXd b = w.block(k + 2, k, rest, 2);
                const Eigen::MatrixXd lb = b * dinv;
                w.bottomRightCorner(rest, rest).noalias() -= lb * b.transpose();
                l_.block(k + 2, k, rest, 2) = lb;
            }
        }
        k += kstep;
    }
    if (n == 0) inertia_.min_abs_pivot = 0.0;
}

Eigen::MatrixXd BunchKaufman::solve(const Eigen::MatrixXd& b) const {
    if (singular()) throw PreconditionError("solve with a singular factorization");
    const Eigen::Index n = l_.rows();
    if (b.rows() != n) throw InvalidArgument("right-hand side has the wrong size");
    Eigen::MatrixXd x = b;
    for (const auto& [i, j] : swaps_) x.row(i).swap(x.row(j));
    for (Eigen::Index k = 0; k < n;) {
        const int s = blocks_[static_cast<std::size_t>(k)];
        const Eigen::Index rest = n - k - s;
        if (rest > 0) x.bottomRows(rest).noalias() -= l_.block(k + s, k, rest, s) * x.middleRows(k, s);
        k += s;
    }
    for (Eigen::Index k = 0; k < n;) {
        const int s = blocks_[static_cast<std::size_t>(k)];
        if (s == 1) {
            x.row(k) /= d_(k, k);
        } else {
            const Eigen::Matrix2d blk = d_.block(k, k, 2, 2);
            x.middleRows(k, 2) = blk.inverse() * x.middleRows(k, 2);
        }
        k += s;
    }
    std::vector<Eigen::Index> starts;
    for (Eigen::Index k = 0; k < n;) {
        starts.push_back(k);
        k += blocks_[static_cast<std::size_t>(k)];
    }
    for (auto it = starts.rbegin(); it != starts.rend(); ++it) {
        const Eigen::Index k = *it;
        const int s = blocks_[static_cast<std::size_t>(k)];
        const Eigen::Index rest = n - k - s;
        if (rest > 0) x.middleRows(k, s).noalias() -= l_.block(k + s, k, rest, s).transpose() * x.bottomRows(rest);
    }
    for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it) x.row(it->first).swap(x.row(it->second));
    return x;
}

Inertia shifted_inertia(const AssembledMatrix& m, double z) {
    const auto n = static_cast<Eigen::Index>(m.size());
    if (n == 0) return Inertia{};
    const Eigen::Index bw = m.bandwidth();
    const Eigen::Index block = std::max<Eigen::Index>(bw, 32);
    if (n <= 400 || (4 * bw > n && n <= static_cast<Eigen::Index>(kMaxDense))) return dense_inertia(m, z);
    return banded_inertia(m, z, block);
}

CountResult count_below_detailed(const AssembledMatrix& m, double e, Convention c) {
    CountResult out;
    const auto n = static_cast<long>(m.size());
    if (n == 0) return out;
    if (!std::isfinite(e)) {
        out.count = (e > 0) ? n : 0;
        out.exact = true;
        return out;
    }
    const double scale = std::max(1.0, m.norm_inf());
    const double tau = 2.5e-13 * scale;
    // A pivot this small means an eigenvalue sits next to the shifted point.
    const double tie_tol = 0.5 * tau;
    const double sign = c == Convention::closed ? 1.0 : -1.0;
    double shift = tau;
    for (int attempt = 0; attempt < 12; ++attempt) {
        const Inertia in = shifted_inertia(m, e + sign * shift);
        if (in.zero == 0 && in.min_abs_pivot > tie_tol) {
            out.count = in.negative;
            return out;
        }
        out.tie = true;
        if (attempt == 0 && n <= 64 && integral_entries(m)) {
            const Inertia ex = exact_inertia(m, e);
            out.exact = true;
            out.count = c == Convention::closed ? n - ex.positive : ex.negative;
            return out;
        }
        shift *= 2.0;
    }
    throw InvariantViolation("inertia count did not stabilize away from an eigenvalue");
}

long count_below(const AssembledMatrix& m, double e, Convention c) { return count_below_detailed(m, e, c).count; }

namespace {

// LAPACK symmetric band eigensolver, lower storage ab(i - j, j) = A(i, j).
std::vector<double> banded_eigenvalues(const AssembledMatrix& m) {
    int n = static_cast<int>(m.size()), kd = m.bandwidth(), ldab = kd + 1, ldz = 1, info = 0;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < m.entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m.entries, k); it; ++it) {
            const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
            if (i >= j) ab[static_cast<std::size_t>(i - j) + static_cast<std::size_t>(ldab) * static_cast<std::size_t>(j)] = it.value();
        }
    std::vector<double> w(static_cast<std::size_t>(n)), work(static_cast<std::size_t>(std::max(1, 3 * n - 2)));
    char jobz = 'N', uplo = 'L';
    dsbev_(&jobz, &uplo, &n, &kd, ab.data(), &ldab, w.data(), nullptr, &ldz, work.data(), &info, 1, 1);
    if (info != 0) throw InvariantViolation("band eigensolver failed to converge");
    return w;  // ascending
}

}  // namespace

std::vector<double> eigenvalues(const AssembledMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    if (n == 0) return {};
    if (m.size() > kMaxDense) throw PreconditionError("matrix too large for a dense eigensolve");
    Eigen::VectorXd ev;
    if (m.bandwidth() <= 1) {
        Eigen::VectorXd diag(n), sub(std::max<Eigen::Index>(n - 1, 0));
        for (Eigen::Index i = 0; i < n; ++i) diag[i] = m.entries.coeff(i, i);
        for (Eigen::Index i = 0; i + 1 < n; ++i) sub[i] = m.entries.coeff(i + 1, i);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        ev = es.eigenvalues();
    } else if (8 * m.bandwidth() < n) {
        return banded_eigenvalues(m);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::EigenvaluesOnly);
        ev = es.eigenvalues();
    }
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

StepDistribution counting_function(const AssembledMatrix& m) {
    const std::vector<double> ev = eigenvalues(m);
    if (ev.empty()) return {};
    const double tol = 1e-12 * std::max(1.0, m.norm_inf());
    std::vector<double> bp, vals;
    std::size_t i = 0;
    while (i < ev.size()) {
        std::size_t j = i;
        while (j + 1 < ev.size() && ev[j + 1] - ev[j] <= tol) ++j;
        bp.push_back(ev[j]);
        vals.push_back(static_cast<double>(j + 1));
        i = j + 1;
    }
    return StepDistribution(std::move(bp), std::move(vals));
}

long numerical_rank(const Eigen::MatrixXd& c, double rel_tol) {
    if (c.size() == 0) return 0;
    const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(c).singularValues();
    const double top = sv.size() ? sv.maxCoeff() : 0.0;
    if (top == 0.0) return 0;
    long r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > rel_tol * top) ++r;
    return r;
}

StepDistribution resolved_counting(const AssembledMatrix& m) { return counting_function(m).snapped(kEnergyResolution); }

}  // namespace delone
