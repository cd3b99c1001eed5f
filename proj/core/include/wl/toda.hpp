#pragma once

#include "wl/lattice.hpp"
#include "wl/types.hpp"

#include <vector>

namespace wl {

// Isospectral lattice flow
//   da_k/dt = 2 (b_k^2 - b_{k-1}^2),   db_k/dt = b_k (a_{k+1} - a_k),
// integrated two ways: a classical Runge-Kutta oracle on a padded window,
// and the spectral route that solves the time-rescaled reconstruction
// equation and reads the evolved entries from its solution.

struct TodaState {
    long lo = 0;            // first index carried explicitly
    std::vector<double> a;  // entries a_{lo} .. a_{lo + n - 1}
    std::vector<double> b;  // entries b_{lo} .. b_{lo + n - 1}
    double t = 0.0;
    double conserved_drift = 0.0; // max drift of the first two trace sums

    double a_at(long k) const;
    double b_at(long k) const;
    LatticeSpec to_lattice(long window_lo, long window_hi) const;
};

struct TodaOptions {
    double dt = 1e-3;
    int pad = 24; // extra free sites carried on each side of the window
};

// Runge-Kutta oracle. Requires free tails (the padding closure assumes them).
TodaState toda_rk4(const LatticeSpec& J, double t_final, const TodaOptions& opts = {});

// Max drift of the stable beyond-band eigenvalues between two lattices.
double isospectral_drift(const LatticeSpec& J0, const LatticeSpec& J1);

// Exponent coefficient of the spectral-data transport under the flow above:
// support weights are rescaled by e^{c (beta - 1/beta) t} and the circle
// coefficient by e^{c (xi - 1/xi) t}.  Resolved once against the
// Runge-Kutta oracle and then frozen.
double toda_time_scale();

struct TodaSpectralOptions {
    int grid_circle = 512;
    int panels = 8;
    int panel_nodes = 12;
    double solver_tol = 1e-10;
    double time_scale = 0.0; // transport exponent; 0 = use the frozen built-in value
};

struct TodaSpectralResult {
    int k_lo = 0;
    int k_hi = 0;
    std::vector<double> a;
    std::vector<double> b;
    double max_residual = 0.0;
};

// Entries of the flowed lattice at physical time t from the spectral side.
TodaSpectralResult toda_spectral_entries(const LatticeSpec& J, double t, int k_lo, int k_hi,
                                         const TodaSpectralOptions& opts = {});

// Fit the time-scale constant at one checkpoint against the oracle
// (used once to pin the frozen constant; kept for the self checks).
double toda_calibrate(const LatticeSpec& J, double t_check = 0.1,
                      const TodaSpectralOptions& opts = {});

} // namespace wl
