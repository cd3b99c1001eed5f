#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wl {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;

// Joukowski map and its two inverse branches. lambda = z + 1/z sends both
// the inner point z and its mirror 1/z to the same spectral parameter.
inline cplx joukowski(cplx z) { return z + 1.0 / z; }

// Inner branch: |z| <= 1, with Im(lambda) > 0 mapped from the lower unit
// half-disk boundary side. Chosen as the root of z^2 - lambda z + 1 = 0
// with the smaller modulus.
inline cplx joukowski_inner(cplx lambda) {
    cplx s = std::sqrt(lambda * lambda - 4.0);
    cplx z1 = 0.5 * (lambda + s);
    cplx z2 = 0.5 * (lambda - s);
    return std::abs(z1) <= std::abs(z2) ? z1 : z2;
}

inline cplx joukowski_outer(cplx lambda) {
    cplx zi = joukowski_inner(lambda);
    return 1.0 / zi;
}

inline double sq(double x) { return x * x; }

// Relative-or-absolute closeness with a shared floor.
inline bool close(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when the admissibility conditions on the two spectral measures
// (mutual distances, argument bounds, oscillation, band-edge behavior)
// fail for a given instance.
struct conditions_violated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wl
