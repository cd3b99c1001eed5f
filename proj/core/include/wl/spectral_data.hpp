#pragma once

#include "wl/factorization.hpp"
#include "wl/lattice.hpp"
#include "wl/partition.hpp"
#include "wl/types.hpp"
#include "wl/weyl.hpp"

#include <optional>
#include <vector>

namespace wl {

// One quadrature node of the reduced measure on the real axis, or an atom.
// kind decides which blocks of the reconstruction equation the node joins:
// atoms and one-sided AC nodes couple only through the Cauchy kernel, the
// two-sided beyond-band nodes also carry the mirror coupling coefficient.
enum class NodeKind { atom_phi, atom_common, ac_one_sided, ac_two_sided };

struct SupportNode {
    NodeKind kind = NodeKind::atom_phi;
    double beta = 0.0;    // position on the real z axis
    double weight = 0.0;  // sigma-measure weight (atom mass or density x quadrature)
    double glw = 0.0;     // raw quadrature weight on the beta axis (0 for atoms)
    double p = 0.0;       // two-sided nodes only
    double q = 0.0;
    double m = 0.0;
    double coupling = 0.0; // m(beta) / (2 q(1/beta))
    int mirror = -1;       // index of the mirror node (two-sided nodes)
    int panel = -1;        // quadrature panel id (AC nodes)
};

// A quadrature panel over one AC piece: node index range plus endpoints,
// retained for the principal-value treatment of the mirror singularity.
struct SupportPanel {
    int first = 0;
    int count = 0;
    double lo = 0.0;
    double hi = 0.0;
    bool two_sided = false;
};

struct CircleNode {
    double theta = 0.0;
    cplx rhat = 0.0;
    double q = 0.0;
};

// Reduced spectral data of the operator: the circle coefficient, the mirror
// coupling on the two-sided beyond-band set, and the measure on the real
// cuts, discretized and ready for the reconstruction equation.
struct SpectralData {
    double b_minus1 = 1.0;
    int sigma = 1;      // relative sign of the two splitting halves
    double C2 = 1.0;    // squared splitting constant
    int jump_sign = 1;  // orientation of the circle jump coefficient
    std::vector<CircleNode> circle;   // offset grid, power-of-two size
    std::vector<SupportNode> support; // atoms first, then AC nodes panel by panel
    std::vector<SupportPanel> panels;
    double max_rhat = 0.0;
    double min_circle_q = 0.0;
    double mirror_identity_residual = 0.0; // coefficient identity on the circle

    int circle_size() const { return static_cast<int>(circle.size()); }
};

struct DataOptions {
    int grid_circle = 512;  // power of two
    int panels = 8;         // quadrature panels per AC piece
    int panel_nodes = 12;   // Gauss-Legendre nodes per panel
    double atom_mass_floor = 1e-8;
    double density_floor = 1e-12;
    double boundary_delta = 1e-9;
    // lattice coefficients, when available, let the builder resolve the
    // circle jump orientation against the direct-side comparison function
    const LatticeSpec* lattice = nullptr;
};

// Assemble the reduced data from the field, the partition and the splitting.
// Performs the admissibility checks: |rhat| < 1 with margin, q bounded away
// from zero, positive masses and weights, mirror symmetry of p and m, and
// the coefficient identity on the circle.
SpectralData build_spectral_data(const WeylField& W, const Partition& P, const Factorization& F,
                                 const DataOptions& opts = {});

// Limits of the comparison function g(k, .) on the unit circle.
cplx g_circle_boundary(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                       double theta, bool inner, double delta = 1e-9);

// Limit of g(k, .) at a real cut point from the upper z half plane.
cplx g_line_boundary_upper(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                           double t, double delta = 1e-9);

// The solution of the reconstruction equation expressed directly through
// the boundary values of g (direct-side oracle for the solver's unknowns):
// real values on the support nodes, complex on the circle.
double u_direct_support(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                        const SupportNode& node);
cplx u_direct_circle(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                     const CircleNode& node);

} // namespace wl
