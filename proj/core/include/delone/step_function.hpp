#pragma once

#include <functional>
#include <vector>

namespace delone {

// Right-continuous step function that vanishes left of its first breakpoint.
// f(E) = values[k] for breakpoints[k] <= E < breakpoints[k+1].
class StepFunction {
  public:
    StepFunction() = default;
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    bool empty() const { return breakpoints_.empty(); }
    std::size_t size() const { return breakpoints_.size(); }

    double operator()(double e) const;
    // Value left of the first breakpoint is 0; right of the last, values.back().
    double limit_at_infinity() const { return values_.empty() ? 0.0 : values_.back(); }

    // sup_E |f(E)|; exact because f is constant between breakpoints.
    double sup_norm() const;

    StepFunction scaled(double s) const;
    // Breakpoints rounded to the nearest multiple of eps, coinciding ones merged.
    StepFunction snapped(double eps) const;
    bool is_nondecreasing() const;

    friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
    friend StepFunction operator-(const StepFunction& a, const StepFunction& b);

  private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

// Nondecreasing StepFunction: the distribution functions of finite measures.
class StepDistribution : public StepFunction {
  public:
    StepDistribution() = default;
    StepDistribution(std::vector<double> breakpoints, std::vector<double> values);
    explicit StepDistribution(const StepFunction& f);

    StepDistribution scaled(double s) const;
    StepDistribution snapped(double eps) const;
    friend StepDistribution operator+(const StepDistribution& a, const StepDistribution& b);
};

// sup_E |a(E) - b(E)|, evaluated on the merged breakpoints (left limits at a
// breakpoint equal the value at the previous merged breakpoint).
double sup_distance(const StepFunction& a, const StepFunction& b);

// sup_E |sum_i c_i f_i(E)|.
double sup_norm_of_combination(const std::vector<double>& coeffs, const std::vector<const StepFunction*>& fs);

// sup over E in [lo, hi] of |f(E) - g(E)| for a continuous monotone g. Exact:
// on each step the extremes sit at the step ends, where both one-sided values
// of f are compared.
double sup_distance_to(const StepFunction& f, const std::function<double(double)>& g, double lo, double hi);

}  // namespace delone
