#pragma once

#include "wl/types.hpp"
#include "wl/weyl.hpp"

#include <optional>
#include <vector>

namespace wl {

struct ACSegment {
    double lo = 0.0;
    double hi = 0.0;
};

enum class AtomSide { right, left, common };

// Isolated pole of one (or both) of the boundary measures, in the lambda
// plane, with the masses carried by each side.
struct SpectralAtom {
    double tau = 0.0;
    AtomSide side = AtomSide::right;
    double mass_R = 0.0; // residue mass in d rho_R = b_{-1} d rho^R
    double mass_L = 0.0; // residue mass in the measure of -1/(b_{-1} m^L)
};

enum class EndpointKind { infinite, unit, atom_R_mirror, atom_L, atom_common };

// Maximal interval of R \ ((-1,1) U cut points) on the z axis, |t| >= 1.
// phi is the sign change of N (negative to positive) if interior, else
// pinned at an endpoint. Star values follow the representative selection
// rules; they live on either side of the unit circle.
struct DeltaInterval {
    double alpha = 0.0;
    double beta = 0.0;
    EndpointKind alpha_kind = EndpointKind::infinite;
    EndpointKind beta_kind = EndpointKind::infinite;
    double phi = 0.0;
    bool phi_interior = false;
    bool phi_in_ac = false; // sign transition hidden inside an AC segment
    double phi_star = 0.0;  // representative (equals phi when no flip applies)
    std::optional<double> alpha_star; // representative of alpha when finite cut
};

struct ConditionsReport {
    bool mutual_distance_ok = true;  // positive distances, finite common point set
    bool band_inside_common_ac = true;
    bool arg_bounds_ok = true;       // both one-sided phases inside (margin, pi - margin) on common AC
    double arg_margin = 0.0;
    bool holder_ok = true;           // sampled Holder quotient of the phase difference bounded
    double holder_constant = 0.0;
    bool oscillation_ok = true;      // per beyond-band segment, oscillation of each phase < pi
    double max_oscillation = 0.0;
    bool edge_values_ok = true;      // phases -> 0 at the top edge, -> pi at the bottom edge
    bool ok() const {
        return mutual_distance_ok && band_inside_common_ac && arg_bounds_ok && holder_ok &&
               oscillation_ok && edge_values_ok;
    }
};

// Reduced description of the two boundary measures and every derived set
// needed by the factorization: atoms with sides and masses, AC supports,
// gap intervals with their sign-change points, and selected representatives.
class Partition {
public:
    // lambda-plane ingredients
    std::vector<ACSegment> band_R; // AC support of d rho_R
    std::vector<ACSegment> band_L;
    std::vector<SpectralAtom> atoms;

    // derived AC pieces
    std::vector<ACSegment> ac_common() const;    // intersection of the AC supports
    std::vector<ACSegment> ac_only_R() const;    // R-side AC minus L-side
    std::vector<ACSegment> ac_only_L() const;
    std::vector<ACSegment> ac_common_beyond() const; // common AC outside [-2, 2]

    // z-plane gap structure (built by analyze())
    std::vector<DeltaInterval> intervals;

    // Phi: interior sign-change representatives, band edges excluded
    std::vector<double> phi_set() const;

    // membership helpers on the real z axis (tolerance tol)
    bool in_omega1(double t, double tol = 1e-9) const;        // n-singular one-sided points/segments
    bool in_v_omega1(double t, double tol = 1e-9) const;
    bool in_omega2a_line(double t, double tol = 1e-9) const;  // beyond-band common AC, both mirrors
    bool chi0(double t) const;                                // Delta^(1) union its mirror

    // interior point of the essential band common to both sides
    double band_edge_lo() const; // typically -2
    double band_edge_hi() const; // typically +2
};

// Build the gap intervals and sign-change points from the Weyl field
// (fills partition.intervals given bands/atoms already present).
void analyze_gaps(Partition& P, const WeylField& W);

// Detect bands (from the given essential supports), beyond-band atoms and
// their masses from the Weyl field by pole scanning plus contour residues.
Partition detect_partition(const WeylField& W, const std::vector<ACSegment>& band_R,
                           const std::vector<ACSegment>& band_L, double search_lo,
                           double search_hi, int grid = 16384);

// Convenience: detection for a lattice-backed field (bands from the tails,
// search region from the coefficient hull).
Partition detect_partition(const LatticeWeylField& W);

// Direct construction for a synthetic field (measures are declared).
Partition declared_partition(const SyntheticWeylField& W);

// Conditions on the boundary data; samples the phase functions on the
// common AC support and near its edges.
ConditionsReport validate_conditions(const WeylField& W, const Partition& P, int samples = 256);

} // namespace wl
