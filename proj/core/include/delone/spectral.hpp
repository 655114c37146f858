#pragma once

#include <functional>
#include <vector>

#include "delone/almost_additive.hpp"
#include "delone/counting.hpp"
#include "delone/operator.hpp"

namespace delone {

// F^A([w ^ Q]) = n(A_w, Q_{R^A}), raw eigenvalue counts. Only Q itself must lie
// in the window: every kernel lookup of the eroded region stays inside Q.
StepDistribution F_A(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q);
// Same, evaluated on a pattern alone (its support plays the role of Q).
StepDistribution F_A(const FiniteRangeOperator& a, const Pattern& p);

// b(P) = 8 / |B(0, r)| * |Q^r \ Q_{R^A + r}| for the support Q of P.
double error_b(const Region& q, double r, double range);
inline double error_b(const Pattern& p, double r, double range) { return error_b(p.support, r, range); }
// D = 2 / |B(0, r)|.
double linear_bound_D(int dim, double r);

AlmostAdditiveFunction f_a_function(const FiniteRangeOperator& a, int dim, double r);

struct RankReport {
    double max_deviation = 0.0;
    double at_energy = 0.0;
    long rank = 0;
    bool holds = true;
};

// |n(B)(E) - n(B + C)(E)| <= rank(C) on the merged breakpoints.
RankReport rank_inequality_check(const AssembledMatrix& b, const AssembledMatrix& c);

struct CompressionReport {
    double max_deviation = 0.0;
    double at_energy = 0.0;
    long codimension = 0;
    double bound = 0.0;  // 4 * codimension
    bool holds = true;
};

AssembledMatrix principal_submatrix(const AssembledMatrix& a, const std::vector<std::size_t>& subset);
CompressionReport compression_check(const AssembledMatrix& a, const std::vector<std::size_t>& subset);

// One step of a diagonal-block split Q = Q_1 u ... u Q_m (boundary-disjoint):
// the chain of estimates that bounds F^A(Q) - sum_j F^A(Q_j).
struct DecouplingReport {
    bool block_diagonal = true;      // A on u_j (Q_j)_{R^A} has no cross-block entries
    bool blocks_match = true;        // and its diagonal blocks are the A|(Q_j)_{R^A}
    double additivity_defect = 0.0;  // ||F^A(Q) - sum_j F^A(Q_j)||
    double compression_deviation = 0.0;
    long dimension_difference = 0;   // #sites in Q_{R^A} minus #sites in the union
    double dimension_bound = 0.0;    // (1/|B_r|) sum_j |Q_j^r \ (Q_j)_{R^A + r}|
    double b_sum = 0.0;              // sum_j b(Q_j)
    bool holds = true;               // every link of the chain
};

DecouplingReport decoupling_check(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q,
                                  const std::vector<Region>& parts);

struct IdsStep {
    Region region;
    double volume = 0.0;
    std::size_t sites = 0;
    StepDistribution counts;      // n(A_w, Q), breakpoints on the kEnergyResolution grid
    StepDistribution normalized;  // |Q|^{-1} n(A_w, Q)
    double certificate_lhs = 0.0; // ||n(A_w, Q) - F^A([w ^ Q])||
    double certificate_rhs = 0.0; // 4 / |B_r| * |Q^r \ Q_{R^A + r}|
};

struct IdsResult {
    std::vector<IdsStep> steps;
    std::vector<double> cauchy;  // sup distance of consecutive normalized distributions
    StepDistribution limit;
};

// Counting function of an assembled restriction; lets callers cache eigensolves.
using CountingProvider = std::function<StepDistribution(const AssembledMatrix&, const Region&)>;

// Throws InvariantViolation if the boundary certificate fails.
IdsStep ids_step(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q);
IdsStep ids_step(const FiniteRangeOperator& a, const DelonePatch& w, const Region& q, const CountingProvider& count);
IdsResult ids(const FiniteRangeOperator& a, const DelonePatch& w, const VanHoveSequence& seq);
IdsResult ids(const FiniteRangeOperator& a, const DelonePatch& w, const VanHoveSequence& seq,
              const CountingProvider& count);

struct Jump {
    double energy = 0.0;
    double height = 0.0;
};

// Increments >= theta after merging breakpoints closer than delta
// (delta <= 0 selects 1e-8 times the spectral width).
std::vector<Jump> detect_jumps(const StepFunction& f, double theta, double delta = 0.0);

// Per-volume increment n(E + delta) - n(E - delta) over |Q| by inertia counts;
// usable beyond the dense-eigensolver size.
double jump_height(const AssembledMatrix& m, double volume, double e, double delta);

struct LocalEigenfunction {
    Vec center;
    std::vector<std::size_t> support;  // patch indices
    std::vector<Vec> sites;
    std::vector<double> coefficients;  // unit l^2 norm
    double residual = 0.0;             // ||(A - E) psi|| on the enlarged ball
};

// Vectors supported in B(c, rho) ^ w whose image under A - E vanishes on all of
// B(c, rho + 2 R^A) ^ w, so they extend by zero to eigenfunctions of A_w.
// Centers are the patch points whose enlarged ball fits the window (restricted
// to `within` when given). Candidates with identical support are reported once.
std::vector<LocalEigenfunction> local_eigenfunction_search(const FiniteRangeOperator& a, const DelonePatch& w,
                                                           double e, double rho,
                                                           const Region* within = nullptr);

// Dimension of the span of the states supported inside `within` (all states
// when null). Each such state is an eigenvector of A restricted to any region
// containing its support, so the count bounds the multiplicity of E there.
long independent_states(const std::vector<LocalEigenfunction>& states, const Region* within = nullptr);

}  // namespace delone
