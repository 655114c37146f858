#include "delone/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "delone/error.hpp"

namespace delone {

namespace {

std::vector<double> merged(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Values of f at each point of the sorted grid xs, by a single sweep.
std::vector<double> sample(const StepFunction& f, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    std::size_t k = 0;
    double cur = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        while (k < bp.size() && bp[k] <= xs[i]) cur = v[k++];
        out[i] = cur;
    }
    return out;
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size()) throw InvalidArgument("step function: size mismatch");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i]) || !std::isfinite(values_[i]))
            throw InvalidArgument("step function: non-finite entry");
        if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))
            throw InvalidArgument("step function: breakpoints must be strictly increasing");
    }
}

double StepFunction::operator()(double e) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), e);
    if (it == breakpoints_.begin()) return 0.0;
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::sup_norm() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

StepFunction StepFunction::scaled(double s) const {
    StepFunction out = *this;
    for (double& v : out.values_) v *= s;
    return out;
}

bool StepFunction::is_nondecreasing() const {
    double prev = 0.0;
    for (double v : values_) {
        if (v < prev) return false;
        prev = v;
    }
    return true;
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
    auto xs = merged(a.breakpoints_, b.breakpoints_);
    auto va = sample(a, xs), vb = sample(b, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) va[i] += vb[i];
    return StepFunction(std::move(xs), std::move(va));
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) { return a + b.scaled(-1.0); }

StepFunction StepFunction::snapped(double eps) const {
    if (!(eps > 0.0)) throw InvalidArgument("snapping resolution must be positive");
    std::vector<double> bp, v;
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const double e = std::nearbyint(breakpoints_[i] / eps) * eps;
        if (!bp.empty() && bp.back() == e) {
            v.back() = values_[i];
        } else {
            bp.push_back(e);
            v.push_back(values_[i]);
        }
    }
    return StepFunction(std::move(bp), std::move(v));
}

StepDistribution::StepDistribution(std::vector<double> breakpoints, std::vector<double> values)
    : StepFunction(std::move(breakpoints), std::move(values)) {
    if (!is_nondecreasing()) throw InvalidArgument("step distribution must be nondecreasing and start at 0");
}

StepDistribution::StepDistribution(const StepFunction& f) : StepFunction(f) {
    if (!is_nondecreasing()) throw InvalidArgument("step distribution must be nondecreasing and start at 0");
}

StepDistribution StepDistribution::scaled(double s) const {
    if (s < 0.0) throw InvalidArgument("step distribution scale must be nonnegative");
    return StepDistribution(StepFunction::scaled(s));
}

StepDistribution StepDistribution::snapped(double eps) const { return StepDistribution(StepFunction::snapped(eps)); }

StepDistribution operator+(const StepDistribution& a, const StepDistribution& b) {
    return StepDistribution(static_cast<const StepFunction&>(a) + static_cast<const StepFunction&>(b));
}

double sup_distance(const StepFunction& a, const StepFunction& b) {
    const auto xs = merged(a.breakpoints(), b.breakpoints());
    const auto va = sample(a, xs), vb = sample(b, xs);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s = std::max(s, std::abs(va[i] - vb[i]));
    return s;
}

double sup_norm_of_combination(const std::vector<double>& coeffs, const std::vector<const StepFunction*>& fs) {
    if (coeffs.size() != fs.size()) throw InvalidArgument("combination: size mismatch");
    std::vector<double> xs;
    for (const StepFunction* f : fs) xs = merged(xs, f->breakpoints());
    std::vector<double> total(xs.size(), 0.0);
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const auto v = sample(*fs[k], xs);
        for (std::size_t i = 0; i < xs.size(); ++i) total[i] += coeffs[k] * v[i];
    }
    double s = 0.0;
    for (double t : total) s = std::max(s, std::abs(t));
    return s;
}

double sup_distance_to(const StepFunction& f, const std::function<double(double)>& g, double lo, double hi) {
    double s = std::max(std::abs(f(lo) - g(lo)), std::abs(f(hi) - g(hi)));
    const auto& bp = f.breakpoints();
    const auto& v = f.values();
    for (std::size_t k = 0; k < bp.size(); ++k) {
        if (bp[k] < lo || bp[k] > hi) continue;
        const double ge = g(bp[k]);
        const double left = k == 0 ? 0.0 : v[k - 1];
        s = std::max({s, std::abs(v[k] - ge), std::abs(left - ge)});
    }
    return s;
}

}  // namespace delone
