#pragma once

#include "wl/lattice.hpp"
#include "wl/types.hpp"

#include <vector>

namespace wl {

// Classical scattering route for coefficient windows embedded in free tails:
// decaying solutions seeded in the tails, transmission/reflection data on
// the circle, bound states with norming constants, and the reconstruction
// through the singular integral equation on the circle.  Serves as an
// independent oracle for instances where both tails are free.

// Decaying solution seeded as z^{k+1} in the right tail.
cplx jost_right(const LatticeSpec& J, int k, cplx z);
// Solution seeded as z^{k+1} in the left tail.
cplx jost_left(const LatticeSpec& J, int k, cplx z);
// Wronskian <f_-(., 1/z), f_+(., z)> with <u, v> = b_k (u_k v_{k+1} - u_{k+1} v_k).
cplx jost_wronskian(const LatticeSpec& J, cplx z);

struct ScatteringData {
    double W_inf = 1.0;            // normalization constant of the outside branch
    std::vector<double> bound_z;   // bound-state points in (-1, 1) \ {0}
    std::vector<double> norming;   // weights rho_m / c'(z_m)
    std::vector<double> theta;     // circle grid (offset, power of two)
    std::vector<cplx> r;           // reflection coefficient on the grid
    double max_r = 0.0;
};

// Direct scattering transform. Throws invalid_input unless both tails are free.
ScatteringData scattering_direct(const LatticeSpec& J, int grid_circle = 256);

struct ScatteringResult {
    int k_lo = 0;
    int k_hi = 0;
    std::vector<double> a;
    std::vector<double> b;
    double max_residual = 0.0;
};

// Solve the reconstruction equation over a window of row indices.
ScatteringResult scattering_reconstruct(const ScatteringData& data, int k_lo, int k_hi,
                                        double tol = 1e-10);

} // namespace wl
