#pragma once

#include "wl/types.hpp"

#include <vector>

namespace wl {

// Point mass.
struct Atom {
    double pos = 0.0;
    double mass = 0.0;
};

// Scaled semicircle density on [lo, hi] with the given total mass:
// d(tau) = mass * sqrt((tau-lo)(hi-tau)) * 8 / (pi (hi-lo)^2).
// Its Cauchy transform is in closed form, so boundary values cost nothing.
struct SemicircleBump {
    double lo = -2.0;
    double hi = 2.0;
    double mass = 1.0;
};

// Cauchy transform of the unit semicircle measure on [-2, 2]:
// integral of sqrt(4-t^2)/(2 pi (t - lam)) dt = (-lam + sqrt(lam^2-4))/2,
// branch decaying at infinity.
cplx semicircle_transform_unit(cplx lam);

// Finite positive measure: atoms plus semicircle bumps.
class StieltjesMeasure {
public:
    std::vector<Atom> atoms;
    std::vector<SemicircleBump> bumps;

    double total_mass() const;
    // integral d rho(tau) / (tau - lam)
    cplx transform(cplx lam) const;
    // AC density at a real point (atoms excluded)
    double density(double tau) const;
    // first moment: integral tau d rho(tau)
    double mean() const;
};

} // namespace wl
