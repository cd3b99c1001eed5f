#include "wl/herglotz.hpp"

namespace wl {

cplx semicircle_transform_unit(cplx lam) {
    // -z_inner(lam): the root of z^2 - lam z + 1 = 0 inside the unit disk.
    return -joukowski_inner(lam);
}

double StieltjesMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    for (const auto& b : bumps) s += b.mass;
    return s;
}

cplx StieltjesMeasure::transform(cplx lam) const {
    cplx s = 0.0;
    for (const auto& a : atoms) s += a.mass / (cplx(a.pos) - lam);
    for (const auto& b : bumps) {
        const double c = 0.5 * (b.lo + b.hi);
        const double r = 0.25 * (b.hi - b.lo);
        s += b.mass / r * semicircle_transform_unit((lam - c) / r);
    }
    return s;
}

double StieltjesMeasure::density(double tau) const {
    double s = 0.0;
    for (const auto& b : bumps) {
        if (tau <= b.lo || tau >= b.hi) continue;
        const double c = 0.5 * (b.lo + b.hi);
        const double r = 0.25 * (b.hi - b.lo);
        const double t = (tau - c) / r;
        s += b.mass / r * std::sqrt(4.0 - t * t) / (2.0 * pi);
    }
    return s;
}

double StieltjesMeasure::mean() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass * a.pos;
    for (const auto& b : bumps) s += b.mass * 0.5 * (b.lo + b.hi);
    return s;
}

} // namespace wl
