#pragma once

#include <functional>
#include <string>
#include <vector>

#include "delone/pattern.hpp"
#include "delone/step_function.hpp"

namespace delone {

// Element of the target Banach space: a real scalar or a bounded step
// function with the sup norm. The default value is a neutral zero that adopts
// the kind of whatever is added to it.
class BanachElement {
  public:
    enum class Kind { zero, scalar, function };

    BanachElement() = default;
    BanachElement(double s) : kind_(Kind::scalar), scalar_(s) {}  // NOLINT: implicit by design
    BanachElement(StepFunction f) : kind_(Kind::function), function_(std::move(f)) {}  // NOLINT

    Kind kind() const { return kind_; }
    bool is_scalar() const { return kind_ != Kind::function; }
    double scalar() const { return scalar_; }
    const StepFunction& function() const { return function_; }

    double norm() const;
    BanachElement scaled(double s) const;

    friend BanachElement operator+(const BanachElement& a, const BanachElement& b);
    friend BanachElement operator-(const BanachElement& a, const BanachElement& b);

  private:
    Kind kind_ = Kind::zero;
    double scalar_ = 0.0;
    StepFunction function_;
};

double norm_distance(const BanachElement& a, const BanachElement& b);

// F with its error function b and linear-bound constant D, evaluated on
// concrete patterns (representatives of their classes).
struct AlmostAdditiveFunction {
    std::string name;
    std::function<BanachElement(const Pattern&)> eval;
    std::function<double(const Pattern&)> error;
    double D = 0.0;
};

struct VanHoveSequence {
    std::vector<Region> regions;
    std::vector<double> probes{1.0};

    // Boxes of side L0 * growth^k centered at c, k = 0..count-1.
    static VanHoveSequence centered_boxes(int dim, Vec c, double l0, int count, double growth = 2.0,
                                          std::vector<double> probes = {1.0});

    // ratios[k][i] = boundary_ratio(regions[k], probes[i]).
    std::vector<std::vector<double>> boundary_ratios() const;
    // Every probe column strictly decreasing along the sequence.
    bool boundary_ratios_decrease() const;
};

}  // namespace delone
