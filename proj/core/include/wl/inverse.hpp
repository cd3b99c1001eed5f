#pragma once

#include "wl/spectral_data.hpp"
#include "wl/types.hpp"

#include <Eigen/Dense>

#include <vector>

namespace wl {

// Nystrom solver for the fundamental reconstruction equation.  Unknowns are
// the rescaled boundary values v(beta) = e^{(beta - 1/beta) t} beta^{2(k+1)}
// u(k, beta) at the support nodes and the circle nodes; in these variables
// the system has uniformly bounded coefficients, the free instance collapses
// to v = -1 on the circle, and the time-dependent problem differs from the
// static one only by the data rescaling.
class InverseSolver {
public:
    explicit InverseSolver(const SpectralData& data, double tol = 1e-10);

    struct Row {
        int k = 0;
        double t = 0.0;
        Eigen::VectorXcd v;      // support nodes first, then circle nodes
        double residual = 0.0;   // relative infinity-norm residual of the solve
        double g0 = 0.0;         // g(k, 0)
        double s1 = 0.0;         // first moment of g at infinity
    };

    // Assemble and solve the equation for one row index k at flow time t.
    Row solve_row(int k, double t = 0.0) const;

    struct Result {
        int k_lo = 0;
        int k_hi = 0;
        std::vector<double> a;   // a_k, k in [k_lo, k_hi]
        std::vector<double> b;   // b_k, k in [k_lo, k_hi]
        double max_residual = 0.0;
        double min_g0 = 0.0;
    };

    // Reconstruct the matrix entries over a window of row indices.
    Result reconstruct(int k_lo, int k_hi, double t = 0.0) const;

    // Lower bound d = (1 - max |rhat|^2)/2 for the real part of the operator.
    double coercivity_lower_bound() const;

    // Minimum over random probes of Re<Lv, v> / ||v||^2 in the weighted
    // discrete inner product (certificate for the bound above).
    double coercivity_probe_min(int k, double t, int probes, unsigned seed) const;

    // Evaluate g(k, z) off the supports from a solved row.
    cplx g_value(const Row& row, cplx z) const;

    // u recovered from the rescaled unknowns (support node / circle node).
    double u_support(const Row& row, int i) const;
    cplx u_circle(const Row& row, int j) const;

    // Max scaled row residual of the assembled system on an externally
    // supplied coefficient vector (support nodes first, then circle nodes),
    // e.g. one built from directly computed boundary values.
    double system_residual(int k, double t, const Eigen::VectorXcd& v) const;

    const SpectralData& data() const { return *data_; }

private:
    void assemble(int k, double t, Eigen::MatrixXcd& A, Eigen::VectorXcd& rhs) const;
    double E_line(double beta, int k, double t) const;   // e^{(b-1/b)t} b^{2(k+1)}
    cplx E_circle(double theta, int k, double t) const;

    const SpectralData* data_;
    double tol_;
    std::vector<Eigen::MatrixXd> panel_diff_; // differentiation matrix per panel
};

} // namespace wl
