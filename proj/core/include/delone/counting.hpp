#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "delone/operator.hpp"
#include "delone/step_function.hpp"

namespace delone {

struct Inertia {
    long negative = 0;
    long zero = 0;
    long positive = 0;
    double min_abs_pivot = 0.0;  // smallest |eigenvalue| of a diagonal block of D
};

// Symmetric indefinite factorization P A P^T = L D L^T with 1x1 and 2x2 pivots
// (Bunch-Kaufman partial pivoting). Only the lower triangle of A is read.
class BunchKaufman {
  public:
    BunchKaufman() = default;
    explicit BunchKaufman(const Eigen::MatrixXd& a) { compute(a); }

    void compute(const Eigen::MatrixXd& a);
    const Inertia& inertia() const { return inertia_; }
    bool singular() const { return inertia_.zero > 0; }
    Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

    const Eigen::MatrixXd& l() const { return l_; }
    // Block sizes of D in factor order; 2 marks the first row of a 2x2 block.
    const std::vector<int>& blocks() const { return blocks_; }

  private:
    Eigen::MatrixXd l_;
    Eigen::MatrixXd d_;  // tridiagonal in practice; only the block entries are set
    std::vector<int> blocks_;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> swaps_;
    Inertia inertia_;
};

// Inertia of M - z I. Dense factorization for small or wide-band matrices,
// otherwise block elimination along the band (Haynsworth additivity).
Inertia shifted_inertia(const AssembledMatrix& m, double z);

enum class Convention { closed, open };

struct CountResult {
    long count = 0;
    bool tie = false;    // an eigenvalue sat numerically on E; the count was re-evaluated
    bool exact = false;  // computed in rational arithmetic
};

// #eigenvalues <= E (closed) or < E (open), from the inertia of M - (E +- tau) I
// with tau = 2.5e-13 max(1, ||M||_inf). When an eigenvalue lands on the shifted
// point the count is redone exactly for integer matrices with n <= 64, and by
// widening the shift otherwise; either way the result is flagged as a tie.
CountResult count_below_detailed(const AssembledMatrix& m, double e, Convention c = Convention::closed);
long count_below(const AssembledMatrix& m, double e, Convention c = Convention::closed);

// Grid on which spectral comparisons are made (2^-30, about 1e-9). Roundoff
// splits a degenerate level by ~1e-14 ||M||, which an exact sup distance
// would read as a jump of the full multiplicity.
inline constexpr double kEnergyResolution = 0x1p-30;

// Eigenvalues in increasing order; throws PreconditionError above kMaxDense.
inline constexpr std::size_t kMaxDense = 4096;
std::vector<double> eigenvalues(const AssembledMatrix& m);

// E -> #eigenvalues <= E, with eigenvalues closer than 1e-12 max(1, ||M||)
// merged into one breakpoint at the largest member of the cluster.
StepDistribution counting_function(const AssembledMatrix& m);
// counting_function with breakpoints snapped to kEnergyResolution.
StepDistribution resolved_counting(const AssembledMatrix& m);

long numerical_rank(const Eigen::MatrixXd& c, double rel_tol = 1e-9);

}  // namespace delone
