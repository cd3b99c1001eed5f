#pragma once

#include "wl/types.hpp"

#include <functional>
#include <vector>

namespace wl {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
    explicit GaussLegendre(int n);
};

// Multiplicative Cauchy integral over the real line:
//   P(z) = exp{ (1/pi) * integral gamma(t) * (1/(t-z) - t/(1+t^2)) dt }
// gamma is a finite sum of indicator steps (closed forms) and smooth pieces
// on bounded segments (Gauss-Legendre). Boundary values from the upper half
// plane: |P| via subtracted principal value, arg = gamma(t0).
class LineMult {
public:
    // step height on (c, d); c may be -inf, d may be +inf
    void add_step(double c, double d, double height);
    // smooth piece on [lo, hi]; nodes per segment (panel count fixed)
    void add_segment(double lo, double hi, std::function<double(double)> gamma, int nodes = 64);

    double gamma_at(double t) const;
    cplx eval(cplx z) const;            // away from the support
    cplx boundary_upper(double t0) const; // limit from Im z > 0 (PV + i gamma)
    bool empty() const { return steps_.empty() && segments_.empty(); }

    // true when t lies inside the support of some step or segment
    bool covers(double t, double tol = 0.0) const;
    // exact limit of the multiplier at z -> infinity (bounded support only)
    cplx limit_infinity() const;

private:
    struct Step {
        double c, d, h;
    };
    struct Segment {
        double lo, hi;
        std::function<double(double)> gamma;
        std::vector<double> nodes, weights, values;
    };
    std::vector<Step> steps_;
    std::vector<Segment> segments_;
};

// Odd 2pi-periodic phase, stored as explicit jumps at theta = 0 and pi plus
// a sine series for the continuous remainder:
//   gamma(theta) = (j0/pi) saw0(theta) + (jpi/pi) sawpi(theta) + sum s_n sin(n theta)
// where saw0 has jump pi at 0 (saw0 = (pi - theta)/2 on (0, pi), odd) and
// sawpi has jump pi at +-pi (sawpi = -theta/2 on (-pi, pi)).
struct CirclePhase {
    double jump0 = 0.0;
    double jumppi = 0.0;
    std::vector<double> sine; // s_1, s_2, ...

    double eval(double theta) const;
    CirclePhase scaled(double s) const;
};

// Fit from samples at the offset grid theta_j = 2 pi (j + 1/2) / M, given
// the two jump values (known analytically by the caller).
CirclePhase fit_odd_circle_phase(const std::function<double(double)>& gamma, double jump0,
                                 double jumppi, int M);

// Multiplicative circle integral
//   Phat(z, gamma) = exp{ -(1/2 pi i) integral (e^{i t}+z)/(e^{i t}-z) gamma(t) dt }
// for an odd phase; inner/outer values and inner boundary limit.
cplx hat_mult(const CirclePhase& g, cplx z);
cplx hat_mult_boundary_inner(const CirclePhase& g, double theta);

// Even cosine series c_m = (1/2pi) integral f(t) e^{-i m t} dt of a real even
// function on the circle (e.g. log of a band density ratio).
struct CosSeries {
    std::vector<double> coef; // c_0, c_1, ...
    double eval(double theta) const;
};
CosSeries fit_even_series(const std::function<double(double)>& f, int M);

// Szego-type multiplicative factor
//   S(z) = exp{ -(1/2 pi) integral e^{i a}/(e^{i a} - z) f(2 cos a) da }:
// inner: exp(-c0 - sum c_m z^m); outer: exp(+sum c_m z^-m).
cplx szego_mult(const CosSeries& c, cplx z);
cplx szego_mult_boundary_inner(const CosSeries& c, double theta);
cplx szego_mult_boundary_outer(const CosSeries& c, double theta);

} // namespace wl
