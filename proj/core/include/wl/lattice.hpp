#pragma once

#include "wl/types.hpp"

#include <vector>

namespace wl {

// Constant coefficients used outside the explicit window.
struct TailModel {
    double a = 0.0;
    double b = 1.0;
    // Essential band of the constant-coefficient half-lattice.
    double band_lo() const { return a - 2.0 * b; }
    double band_hi() const { return a + 2.0 * b; }
};

// Doubly-infinite tridiagonal operator: diagonal a_k, off-diagonal b_k > 0
// coupling sites k and k+1. Entries are explicit on [window_lo, window_hi]
// and constant beyond (left tail for k < window_lo, right for k > window_hi).
class LatticeSpec {
public:
    int window_lo = -2;
    int window_hi = 1;
    std::vector<double> a_window; // a_{window_lo} .. a_{window_hi}
    std::vector<double> b_window; // b_{window_lo} .. b_{window_hi}
    TailModel left_tail;
    TailModel right_tail;

    static LatticeSpec free_lattice();

    // Throws invalid_input unless: window bounds cover [-2, 1], array sizes
    // match the window, every b is positive and finite, and both tail bands
    // contain [-2, 2].
    void validate() const;

    double a(long k) const;
    double b(long k) const;

    // Cumulative off-diagonal weight h_k, normalized by h_{-1} = 1 and the
    // law h_{k+1} = h_k * b_k.
    double h(long k) const;
};

// Solutions of b_{k-1} w_{k-1} + (a_k - lambda) w_k + b_k w_{k+1} = 0 with
// the standard seeds P_0 = 1, P_{-1} = 0 and Q_0 = 0, Q_{-1} = 1, evaluated
// on the index range [lo, hi] (must contain {-1, 0}).
struct PolyPair {
    int lo = 0;
    std::vector<cplx> p;
    std::vector<cplx> q;
    cplx P(long k) const { return p.at(static_cast<size_t>(k - lo)); }
    cplx Q(long k) const { return q.at(static_cast<size_t>(k - lo)); }
};
PolyPair eval_pq(const LatticeSpec& J, cplx lambda, int lo, int hi);

// Finite section on sites [lo, hi] with Dirichlet cutoff.
struct Truncation {
    int lo = 0;
    std::vector<double> diag; // a_lo .. a_hi
    std::vector<double> off;  // b_lo .. b_{hi-1}
    int size() const { return static_cast<int>(diag.size()); }
};
Truncation truncate(const LatticeSpec& J, int lo, int hi);

// Eigenvalues of the finite section, ascending.
std::vector<double> eigenvalues(const Truncation& T);

// Column j (0-based within the section) of (T - lambda)^{-1}.
std::vector<cplx> resolvent_column(const Truncation& T, cplx lambda, int j);
cplx resolvent_entry(const Truncation& T, cplx lambda, int j, int k);

// Squared first/last-site amplitude of the normalized eigenvector at an
// isolated eigenvalue, via inverse iteration on the section.
double eigenvector_weight(const Truncation& T, double eig, int site_index);

// Isolated eigenvalues outside the tail band, stable under doubling the
// section size (checked at n and 2n), for the three operators of interest.
std::vector<double> half_lattice_atoms_right(const LatticeSpec& J, int site_lo, int n = 2000);
std::vector<double> half_lattice_atoms_left(const LatticeSpec& J, int site_hi, int n = 2000);
std::vector<double> full_lattice_point_spectrum(const LatticeSpec& J, int n = 2000);

} // namespace wl
