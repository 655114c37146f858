#include "delone/almost_additive.hpp"

#include <cmath>

#include "delone/error.hpp"

namespace delone {

double BanachElement::norm() const {
    switch (kind_) {
        case Kind::zero: return 0.0;
        case Kind::scalar: return std::abs(scalar_);
        case Kind::function: return function_.sup_norm();
    }
    return 0.0;
}

BanachElement BanachElement::scaled(double s) const {
    switch (kind_) {
        case Kind::zero: return {};
        case Kind::scalar: return BanachElement(scalar_ * s);
        case Kind::function: return BanachElement(function_.scaled(s));
    }
    return {};
}

BanachElement operator+(const BanachElement& a, const BanachElement& b) {
    using K = BanachElement::Kind;
    if (a.kind_ == K::zero) return b;
    if (b.kind_ == K::zero) return a;
    if (a.kind_ != b.kind_) throw InvalidArgument("cannot add a scalar to a step function");
    if (a.kind_ == K::scalar) return BanachElement(a.scalar_ + b.scalar_);
    return BanachElement(a.function_ + b.function_);
}

BanachElement operator-(const BanachElement& a, const BanachElement& b) { return a + b.scaled(-1.0); }

double norm_distance(const BanachElement& a, const BanachElement& b) {
    if (!a.is_scalar() && !b.is_scalar()) return sup_distance(a.function(), b.function());
    return (a - b).norm();
}

VanHoveSequence VanHoveSequence::centered_boxes(int dim, Vec c, double l0, int count, double growth,
                                                std::vector<double> probes) {
    if (!(l0 > 0.0) || count < 1 || !(growth > 1.0)) throw InvalidArgument("invalid van Hove box parameters");
    VanHoveSequence seq;
    seq.probes = std::move(probes);
    double l = l0;
    for (int k = 0; k < count; ++k, l *= growth) {
        const Vec h{0.5 * l, dim == 2 ? 0.5 * l : 0.0};
        seq.regions.push_back(dim == 1 ? Region::interval(c.x - h.x, c.x + h.x) : Region::box(2, c - h, c + h));
    }
    return seq;
}

std::vector<std::vector<double>> VanHoveSequence::boundary_ratios() const {
    std::vector<std::vector<double>> out;
    for (const Region& q : regions) {
        std::vector<double> row;
        for (double h : probes) row.push_back(boundary_ratio(q, h));
        out.push_back(std::move(row));
    }
    return out;
}

bool VanHoveSequence::boundary_ratios_decrease() const {
    const auto t = boundary_ratios();
    for (std::size_t k = 1; k < t.size(); ++k)
        for (std::size_t i = 0; i < probes.size(); ++i)
            if (!(t[k][i] < t[k - 1][i])) return false;
    return true;
}

}  // namespace delone
