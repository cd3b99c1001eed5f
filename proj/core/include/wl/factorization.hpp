#pragma once

#include "wl/cauchy.hpp"
#include "wl/lattice.hpp"
#include "wl/partition.hpp"
#include "wl/types.hpp"
#include "wl/weyl.hpp"

#include <vector>

namespace wl {

// Multiplicative splitting of (z - 1/z)/N(z) into R(z) R(1/z), where R is
// holomorphic and zero-free off the singular supports of n.  R is assembled
// from
//   * a rational part: one zero per selected cut representative, one pole
//     per interior sign-change representative, balanced by (z+1) factors,
//   * line multipliers carrying the boundary phase over the one-sided and
//     the beyond-band two-sided AC sets,
//   * a circle multiplier carrying the in-band phase (odd in the angle),
//   * a Szego-type factor for the in-band density ratio.
// The constant is calibrated against (z - 1/z)/N at off-support points; the
// relative sign sigma between the two sides is resolved by the same probe
// and recorded.
//
// The field and partition must outlive this object.
class Factorization {
public:
    Factorization(const WeylField& W, const Partition& P, int circle_modes = 1024,
                  int segment_nodes = 96);

    // R(z) away from the cuts (real support sets and the unit circle)
    cplx R(cplx z) const;

    // limits of R on the unit circle from inside / outside
    cplx boundary_circle(double theta, bool inner) const;

    // limit of R at a real point from the upper half plane (valid on the
    // line cuts and at regular real points alike)
    cplx boundary_line_upper(double t) const;

    // |R| on a real cut (the modulus is two-sided there)
    double abs_on_cut(double t) const;

    cplx R_infinity() const { return Rinf_; }
    double C2() const { return C2_; }
    int sigma() const { return sigma_; }

    // comparison function from the direct side:
    //   g(k, z) = (R(z)/R(inf)) z^{-(k+1)} h_k (n(z) P_k + Q_k)
    // (equals 1 identically on the free lattice; -> 1 at infinity and 0)
    cplx g_direct(const LatticeSpec& J, int k, cplx z) const;

    struct Residuals {
        double identity = 0.0; // (z-1/z)/N vs sigma R(z)R(1/z), relative
        double balance = 0.0;  // circle modulus balance with |Im n^{+-}|
        double anchor = 0.0;   // R(inf) R(0) vs b_{-1}, relative
    };
    Residuals verify(int line_samples = 50, int circle_samples = 64, unsigned seed = 11) const;

    const Partition& partition() const { return *P_; }
    const WeylField& field() const { return *W_; }

private:
    cplx pieces(cplx z) const; // product of all factors, constant excluded
    cplx rational(cplx z) const;

    const WeylField* W_;
    const Partition* P_;
    std::vector<double> zero_roots_; // numerator roots (cut representatives)
    std::vector<double> pole_roots_; // denominator roots (sign-change reps)
    int edge_pos_ = 0;               // multiplicity of the (z-1) edge zero
    int edge_neg_ = 0;               // multiplicity of the (z+1) edge zero
    LineMult one_sided_;             // phase over the one-sided AC images
    LineMult two_sided_;             // phase over the beyond-band two-sided AC images
    CirclePhase in_band_;            // odd in-band phase (factor uses -1/2 scale)
    CosSeries density_ratio_;        // cosine series of log sqrt(rho'_R / rho'_L)
    double C2_ = 1.0;
    int sigma_ = 1;
    double C_ = 1.0;
    cplx Rinf_ = 1.0;
};

} // namespace wl
