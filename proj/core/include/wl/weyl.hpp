#pragma once

#include "wl/herglotz.hpp"
#include "wl/lattice.hpp"
#include "wl/types.hpp"

#include <functional>
#include <memory>

namespace wl {

// The pair of half-lattice Weyl functions of a doubly-infinite operator,
// together with everything derived pointwise from them: the uniformized
// function n on the slit plane, its difference N across the circle, and
// the sum function M on the lambda plane.
class WeylField {
public:
    virtual ~WeylField() = default;

    virtual double b_minus1() const = 0;

    // m-function of the half-lattice on sites >= 0 (Cauchy transform of a
    // probability measure).
    virtual cplx mR(cplx lam) const = 0;

    // -1/(b_{-1} m^L(lambda)); grows like lambda/b_{-1} at infinity.
    virtual cplx mL_recip(cplx lam) const = 0;

    // m-function of the half-lattice on sites <= -1.
    cplx mL(cplx lam) const { return -1.0 / (b_minus1() * mL_recip(lam)); }

    cplx M(cplx lam) const { return b_minus1() * mR(lam) + mL_recip(lam); }

    // n(z): -b_{-1} m^R(z + 1/z) inside the unit disk, -1/(b_{-1} m^L)
    // outside. Singularities on the real axis and the unit circle only.
    cplx n(cplx z) const {
        const cplx lam = joukowski(z);
        return std::abs(z) < 1.0 ? -b_minus1() * mR(lam) : mL_recip(lam);
    }

    cplx N(cplx z) const { return n(z) - n(1.0 / z); }

    // Boundary argument of M folded to [0, pi] (defines the phase data on
    // the absolutely continuous spectrum; {0, pi} on gaps).
    double eta(double tau, double delta = 1e-9) const;

    // Validator-side boundary arguments of the one-sided Herglotz functions
    // -1/m^R and -1/(b_{-1} m^L), folded to [0, pi].
    double etaR(double tau, double delta = 1e-9) const;
    double etaL(double tau, double delta = 1e-9) const;
};

// Weyl field computed from lattice coefficients by descending/ascending
// continued fractions with constant-tail closures.
class LatticeWeylField final : public WeylField {
public:
    explicit LatticeWeylField(LatticeSpec spec);
    double b_minus1() const override { return spec_.b(-1); }
    cplx mR(cplx lam) const override;
    cplx mL_recip(cplx lam) const override;
    const LatticeSpec& spec() const { return spec_; }

private:
    LatticeSpec spec_;
};

// Weyl field synthesized from two explicit measures: d rho_R (probability
// measure of the right half-lattice) and the auxiliary measure entering
// -1/(b_{-1} m^L) = lambda/b_{-1} + beta + Cauchy[rho_L](lambda).
class SyntheticWeylField final : public WeylField {
public:
    SyntheticWeylField(StieltjesMeasure rho_R, StieltjesMeasure rho_L,
                       double beta = 0.0, double b_m1 = 1.0);
    double b_minus1() const override { return b_m1_; }
    cplx mR(cplx lam) const override;
    cplx mL_recip(cplx lam) const override;
    const StieltjesMeasure& rhoR() const { return rho_R_; }
    const StieltjesMeasure& rhoL() const { return rho_L_; }
    double beta() const { return beta_; }

private:
    StieltjesMeasure rho_R_;
    StieltjesMeasure rho_L_;
    double beta_;
    double b_m1_;
};

// Four-point Richardson extrapolation of F(x + i eps) to eps -> 0 along
// eps0 / 2^j; cross-check for the direct small-offset boundary values.
cplx boundary_richardson(const std::function<cplx(cplx)>& F, double x, double eps0 = 1e-2);

// Wave solution psi(k, z) = n(z) P_k(lambda) + Q_k(lambda).
std::vector<cplx> psi_range(const WeylField& W, const LatticeSpec& J, cplx z, int lo, int hi);

} // namespace wl
