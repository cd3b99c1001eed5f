#include "wl/spectral_data.hpp"

#include "wl/cauchy.hpp"
#include "wl/log.hpp"

#include <algorithm>
#include <cmath>

namespace wl {

namespace {

// Real outer root of z + 1/z = tau for |tau| > 2.
double z_outer_of(double tau) {
    const double s = std::sqrt(tau * tau - 4.0);
    return 0.5 * (tau + (tau > 0 ? s : -s));
}

cplx circle_point(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct CircleValues {
    cplx n_in;     // limit of n at e^{i theta} from inside
    cplx n_out;    // limit of n at e^{i theta} from outside
    double q = 0;  // circle coefficient q
    cplx rhat0;    // circle jump coefficient, default orientation
};

// Imaginary offset for boundary values, shrunk with the distance from the
// band edges: phase and value errors of a limit taken at tau + i*delta grow
// like delta / sin^2(theta), so a fixed offset would dominate near the edges.
double scaled_delta(double delta, double theta) {
    const double s = std::sin(theta);
    return std::max(1e-13, delta * s * s);
}

CircleValues circle_values(const WeylField& W, const Factorization& F, double theta,
                           double delta) {
    const double tau = 2.0 * std::cos(theta);
    const double sg = theta > 0 ? 1.0 : -1.0;
    const double d = scaled_delta(delta, theta);
    CircleValues cv;
    cv.n_in = -W.b_minus1() * W.mR(cplx(tau, -d * sg));
    cv.n_out = W.mL_recip(cplx(tau, d * sg));
    const cplx xi = circle_point(theta);
    const cplx diff_same = cv.n_in - cv.n_out;               // n^+(xi) - n^-(xi)
    const cplx diff_cross = cv.n_in - std::conj(cv.n_out);   // n^+(xi) - n^-(1/xi)
    const double prod = std::abs(cv.n_in.imag() * cv.n_out.imag());
    cv.q = 2.0 * std::sqrt(prod) / std::abs(diff_cross);
    const cplx Rp = F.boundary_circle(theta, true);
    const cplx Rm = F.boundary_circle(theta, false);
    cv.rhat0 = -(diff_same / (xi - 1.0 / xi)) * Rp * Rm / (1.0 + cv.q);
    return cv;
}

// Resolve the orientation of the circle jump coefficient against the
// boundary values of the direct-side comparison function.
int resolve_jump_sign(const WeylField& W, const Factorization& F, const LatticeSpec& J,
                      double delta) {
    static const double angles[] = {0.31, 0.77, 1.21, 1.83, 2.33, 2.71, -0.93, -1.87};
    const int k = 0;
    double resid_plus = 0.0, resid_minus = 0.0, scale = 0.0, max_r = 0.0;
    for (double th : angles) {
        const CircleValues cv = circle_values(W, F, th, delta);
        max_r = std::max(max_r, std::abs(cv.rhat0));
        const cplx gp = g_circle_boundary(W, F, J, k, th, true, delta);
        const cplx gm = g_circle_boundary(W, F, J, k, th, false, delta);
        const cplx gp_m = g_circle_boundary(W, F, J, k, -th, true, delta);
        const cplx gm_m = g_circle_boundary(W, F, J, k, -th, false, delta);
        const cplx lhs = std::exp(cplx(0.0, 2.0 * (k + 1) * th)) * (gp - gm);
        const cplx rhs0 = cv.rhat0 * (gp_m + gm_m);
        resid_plus += std::abs(lhs + rhs0);  // jump with coefficient -rhat0
        resid_minus += std::abs(lhs - rhs0); // jump with coefficient +rhat0
        scale += std::max(1.0, std::abs(lhs));
    }
    if (max_r < 1e-7) return 1; // reflectionless up to boundary noise: orientation immaterial
    const int sign = resid_plus <= resid_minus ? 1 : -1;
    const double best = std::min(resid_plus, resid_minus);
    const double worst = std::max(resid_plus, resid_minus);
    if (best > 1e-5 * scale)
        throw numeric_error("circle jump orientation unresolved (residual " +
                            std::to_string(best / scale) + ")");
    if (worst < 1e3 * best && worst > 1e-12 * scale)
        throw numeric_error("circle jump orientation ambiguous");
    return sign;
}

// Derivative of a function real-analytic at a real point, by complex step.
double real_derivative(const WeylField& W, double t) {
    const double h = 1e-8;
    return W.N(cplx(t, h)).imag() / h;
}

double real_R(const Factorization& F, double t) {
    const cplx v = F.R(cplx(t, 0.0));
    if (std::abs(v.imag()) > 1e-6 * std::max(1.0, std::abs(v.real())))
        log::warn("splitting factor not real at regular point ", t);
    return v.real();
}

struct PanelSpec {
    double lo = 0.0, hi = 0.0; // tau interval
};

std::vector<PanelSpec> split_panels(const ACSegment& s, int panels) {
    std::vector<PanelSpec> out;
    const double len = s.hi - s.lo;
    for (int i = 0; i < panels; ++i)
        out.push_back({s.lo + len * i / panels, s.lo + len * (i + 1) / panels});
    return out;
}

} // namespace

cplx g_circle_boundary(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                       double theta, bool inner, double delta) {
    const double tau = 2.0 * std::cos(theta);
    const double sg = theta > 0 ? 1.0 : -1.0;
    const double d = scaled_delta(delta, theta);
    const cplx nval = inner ? cplx(-W.b_minus1() * W.mR(cplx(tau, -d * sg)))
                            : W.mL_recip(cplx(tau, d * sg));
    const PolyPair pq = eval_pq(J, cplx(tau, 0.0), k, k);
    const cplx psi = nval * pq.P(k) + pq.Q(k);
    const cplx Rb = F.boundary_circle(theta, inner);
    return (Rb / F.R_infinity()) * std::exp(cplx(0.0, -(k + 1) * theta)) * J.h(k) * psi;
}

cplx g_line_boundary_upper(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                           double t, double delta) {
    const cplx z(t, delta);
    const cplx psi = psi_range(W, J, z, k, k)[0];
    const cplx Rb = F.boundary_line_upper(t);
    const double zpow = std::pow(t, -(k + 1));
    return (Rb / F.R_infinity()) * zpow * J.h(k) * psi;
}

double u_direct_support(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                        const SupportNode& node) {
    const double beta = node.beta;
    if (node.kind == NodeKind::ac_two_sided) {
        const cplx gp = g_line_boundary_upper(W, F, J, k, beta);
        const double sgn_diff = (beta - 1.0 / beta) > 0 ? 1.0 : -1.0;
        if (node.p <= 0.0) throw numeric_error("nonpositive p at a two-sided node");
        return 2.0 * (node.q / node.p) * sgn_diff * gp.imag();
    }
    const cplx gmirror = F.g_direct(J, k, cplx(1.0 / beta, 0.0));
    return -std::pow(beta, -2 * (k + 1)) * gmirror.real();
}

cplx u_direct_circle(const WeylField& W, const Factorization& F, const LatticeSpec& J, int k,
                     const CircleNode& node) {
    const double th = node.theta;
    if (std::abs(node.rhat) < 1e-14) {
        // reflectionless limit: boundary average at the mirror point
        const cplx gp = g_circle_boundary(W, F, J, k, -th, true);
        const cplx gm = g_circle_boundary(W, F, J, k, -th, false);
        return -std::exp(cplx(0.0, -2.0 * (k + 1) * th)) * 0.5 * (gp + gm);
    }
    const cplx gp = g_circle_boundary(W, F, J, k, th, true);
    const cplx gm = g_circle_boundary(W, F, J, k, th, false);
    return (gp - gm) / (2.0 * node.rhat);
}

SpectralData build_spectral_data(const WeylField& W, const Partition& P, const Factorization& F,
                                 const DataOptions& opts) {
    const int N = opts.grid_circle;
    if (N < 8 || (N & (N - 1)) != 0)
        throw invalid_input("circle grid size must be a power of two, at least 8");
    if (opts.panels < 1 || opts.panel_nodes < 2)
        throw invalid_input("panel counts must be positive");

    SpectralData data;
    data.b_minus1 = W.b_minus1();
    data.sigma = F.sigma();
    data.C2 = F.C2();
    const double delta = opts.boundary_delta;

    // ---- circle jump orientation (resolved against the direct side when
    // lattice coefficients are available)
    data.jump_sign = opts.lattice ? resolve_jump_sign(W, F, *opts.lattice, delta) : 1;
    if (data.jump_sign != 1)
        log::info("circle jump orientation resolved to ", data.jump_sign);

    // ---- circle nodes on the offset grid
    data.circle.resize(static_cast<size_t>(N));
    data.min_circle_q = std::numeric_limits<double>::infinity();
    for (int j = 0; j < N; ++j) {
        const double theta = 2.0 * pi * (j + 0.5) / N - pi;
        const CircleValues cv = circle_values(W, F, theta, delta);
        CircleNode& cn = data.circle[static_cast<size_t>(j)];
        cn.theta = theta;
        cn.q = cv.q;
        cn.rhat = static_cast<double>(data.jump_sign) * cv.rhat0;
        if (!std::isfinite(cn.q) || cn.q <= 0.0)
            throw numeric_error("circle coefficient q not positive at theta " +
                                std::to_string(theta));
        if (!std::isfinite(std::abs(cn.rhat)))
            throw numeric_error("circle jump coefficient not finite");
        data.max_rhat = std::max(data.max_rhat, std::abs(cn.rhat));
        data.min_circle_q = std::min(data.min_circle_q, cn.q);

        // mirror coefficient identity, checked away from the band edges
        if (std::abs(std::sin(theta)) > 0.05) {
            const cplx np = cv.n_in, nm = cv.n_out;
            const cplx np_m = std::conj(np), nm_m = std::conj(nm);
            const cplx a = (np_m - nm) / (np_m - np);
            const cplx b = (np - nm) / (np - np_m);
            const cplx c = (nm_m - np) / (nm_m - nm);
            const cplx d = (nm - np) / (nm - nm_m);
            const cplx Rp = F.boundary_circle(theta, true);
            const cplx Rm = F.boundary_circle(theta, false);
            const cplx Rp_m = F.boundary_circle(-theta, true);
            const cplx Rm_m = F.boundary_circle(-theta, false);
            const cplx t1 = (b / a) * (Rp / Rp_m);
            const cplx t2 = (d / c) * (Rm / Rm_m);
            const double scale = std::max({std::abs(t1), std::abs(t2), 1e-30});
            data.mirror_identity_residual =
                std::max(data.mirror_identity_residual, std::abs(t1 + t2) / scale);
        }
    }
    if (data.max_rhat < 1e-7) {
        // The jump coefficient vanishes identically up to boundary-value noise;
        // snap it to the exact reflectionless limit so the solved coefficients
        // inherit no spurious coupling.
        for (CircleNode& cn : data.circle) cn.rhat = 0.0;
        data.max_rhat = 0.0;
    }
    if (data.max_rhat >= 1.0 - 1e-6)
        throw numeric_error("circle jump coefficient reaches modulus one (max " +
                            std::to_string(data.max_rhat) + ")");
    if (data.mirror_identity_residual > 1e-8)
        log::warn("mirror coefficient identity residual ", data.mirror_identity_residual);

    // ---- atoms of the reduced measure
    // sign-change representatives: mass 1/N'(phi*), transplanted by the
    // mirror-regularized weight
    for (const auto& iv : P.intervals) {
        if (!iv.phi_interior) continue;
        if (iv.phi_in_ac) {
            log::warn("sign change inside an AC segment at ", iv.phi_star,
                      "; no isolated mass assigned");
            continue;
        }
        const double phi = iv.phi_star;
        const double dN = real_derivative(W, phi);
        if (!(dN > 0.0))
            throw numeric_error("sign-change point with nonpositive slope at " +
                                std::to_string(phi));
        const double mass = 1.0 / dN;
        const double Rmir = real_R(F, 1.0 / phi);
        const double w =
            (1.0 / std::abs(phi)) * std::abs(phi - 1.0 / phi) * mass / (Rmir * Rmir);
        if (w < opts.atom_mass_floor) {
            log::warn("dropping negligible atom at ", phi, " (weight ", w, ")");
            continue;
        }
        SupportNode node;
        node.kind = NodeKind::atom_phi;
        node.beta = phi;
        node.weight = w;
        data.support.push_back(node);
    }
    // common poles: the inner member carries the transplanted two-sided mass
    for (const auto& at : P.atoms) {
        if (at.side != AtomSide::common) continue;
        if (std::abs(at.tau) <= 2.0)
            throw numeric_error("common pole inside the essential band");
        if (at.mass_L <= 0.0 || at.mass_R <= 0.0)
            throw numeric_error("common pole with nonpositive side mass");
        const double zo = z_outer_of(at.tau);
        const double beta = 1.0 / zo;
        const double rho2 = (at.mass_R / at.mass_L) * (at.mass_R + at.mass_L);
        const double Rin = real_R(F, beta);
        const double w =
            (1.0 / std::abs(beta)) * (Rin * Rin) / std::abs(beta - 1.0 / beta) * rho2;
        if (w < opts.atom_mass_floor) {
            log::warn("dropping negligible common-pole weight at ", beta);
            continue;
        }
        SupportNode node;
        node.kind = NodeKind::atom_common;
        node.beta = beta;
        node.weight = w;
        data.support.push_back(node);
    }
    std::sort(data.support.begin(), data.support.end(),
              [](const SupportNode& x, const SupportNode& y) { return x.beta < y.beta; });

    const GaussLegendre gl(opts.panel_nodes);

    // ---- one-sided AC pieces: images carry the mirror-regularized density
    const auto add_one_sided = [&](const std::vector<ACSegment>& segs, bool inner) {
        for (const auto& s : segs) {
            if (!(s.lo >= 2.0 || s.hi <= -2.0)) continue; // in-band part handled on the circle
            for (const auto& pan : split_panels(s, opts.panels)) {
                const int first = static_cast<int>(data.support.size());
                const double mid = 0.5 * (pan.lo + pan.hi), half = 0.5 * (pan.hi - pan.lo);
                double blo = std::numeric_limits<double>::infinity(), bhi = -blo;
                for (int i = 0; i < opts.panel_nodes; ++i) {
                    const double tau = mid + half * gl.x[static_cast<size_t>(i)];
                    const double glw = half * gl.w[static_cast<size_t>(i)];
                    const double zo = z_outer_of(tau);
                    const double jac_out = std::abs(zo * zo / (zo * zo - 1.0));
                    const double beta = inner ? 1.0 / zo : zo;
                    const double jac = inner ? std::abs(1.0 / (zo * zo - 1.0)) : jac_out;
                    const double dens =
                        std::max(0.0, (-1.0 / W.N(cplx(beta, delta))).imag() / pi);
                    const double Rmir = real_R(F, 1.0 / beta);
                    SupportNode node;
                    node.kind = NodeKind::ac_one_sided;
                    node.beta = beta;
                    node.glw = jac * glw;
                    node.weight = (1.0 / std::abs(beta)) * std::abs(beta - 1.0 / beta) /
                                  (Rmir * Rmir) * dens * node.glw;
                    node.panel = static_cast<int>(data.panels.size());
                    data.support.push_back(node);
                    blo = std::min(blo, beta);
                    bhi = std::max(bhi, beta);
                }
                // snap panel ends to the exact segment images
                const double za = z_outer_of(pan.lo), zb = z_outer_of(pan.hi);
                const double ia = inner ? 1.0 / za : za, ib = inner ? 1.0 / zb : zb;
                data.panels.push_back({first, opts.panel_nodes, std::min(ia, ib),
                                       std::max(ia, ib), false});
            }
        }
    };
    add_one_sided(P.ac_only_R(), true);
    add_one_sided(P.ac_only_L(), false);

    // ---- beyond-band two-sided AC: mirror-paired nodes with the coupling data
    for (const auto& s : P.ac_common_beyond()) {
        for (const auto& pan : split_panels(s, opts.panels)) {
            const int first_out = static_cast<int>(data.support.size());
            const int nodes = opts.panel_nodes;
            std::vector<SupportNode> outer(static_cast<size_t>(nodes)),
                inner(static_cast<size_t>(nodes));
            const double mid = 0.5 * (pan.lo + pan.hi), half = 0.5 * (pan.hi - pan.lo);
            for (int i = 0; i < nodes; ++i) {
                const double tau = mid + half * gl.x[static_cast<size_t>(i)];
                const double glw = half * gl.w[static_cast<size_t>(i)];
                const double zo = z_outer_of(tau);
                const double b_out = zo, b_in = 1.0 / zo;
                const double jac_out = std::abs(zo * zo / (zo * zo - 1.0));
                const double jac_in = std::abs(1.0 / (zo * zo - 1.0));
                double sig_out = W.mL_recip(cplx(tau, delta)).imag() / pi;       // |beta| > 1
                double sig_in = W.b_minus1() * W.mR(cplx(tau, delta)).imag() / pi; // |beta| < 1
                sig_out = std::max(sig_out, opts.density_floor);
                sig_in = std::max(sig_in, opts.density_floor);
                const bool chi0 = P.chi0(b_out);
                const double eta = W.eta(tau);
                const double gap2 = 0.5 * std::abs(eta - (chi0 ? pi : 0.0));
                const double tg = std::tan(gap2);
                if (!std::isfinite(tg))
                    throw numeric_error("unbounded phase ratio on the two-sided set");
                const double ratio = std::sqrt(sig_in / sig_out); // sigma(1/b_out)/sigma(b_out)
                const double p = (ratio + 1.0 / ratio) * tg;
                const double absR_out = F.abs_on_cut(b_out);
                const double absR_in = F.abs_on_cut(b_in);
                if (!(absR_out > 0.0) || !(absR_in > 0.0))
                    throw numeric_error("vanishing splitting modulus on a two-sided cut");
                const double q_out = (absR_in / absR_out) * ratio;
                const double q_in = (absR_out / absR_in) / ratio;
                const double cs = chi0 ? -1.0 : 1.0;
                const double m_out = (ratio - 1.0 / ratio) * cs;

                SupportNode& no = outer[static_cast<size_t>(i)];
                no.kind = NodeKind::ac_two_sided;
                no.beta = b_out;
                no.p = p;
                no.q = q_out;
                no.m = m_out;
                no.coupling = m_out / (2.0 * q_in);
                no.glw = jac_out * glw;
                no.weight = (1.0 / std::abs(b_out)) * p / (2.0 * pi * q_out) * no.glw;

                SupportNode& ni = inner[static_cast<size_t>(i)];
                ni.kind = NodeKind::ac_two_sided;
                ni.beta = b_in;
                ni.p = p;
                ni.q = q_in;
                ni.m = -m_out;
                ni.coupling = -m_out / (2.0 * q_out);
                ni.glw = jac_in * glw;
                ni.weight = (1.0 / std::abs(b_in)) * p / (2.0 * pi * q_in) * ni.glw;
            }
            const int first_in = first_out + nodes;
            for (int i = 0; i < nodes; ++i) {
                outer[static_cast<size_t>(i)].panel = static_cast<int>(data.panels.size());
                outer[static_cast<size_t>(i)].mirror = first_in + i;
                inner[static_cast<size_t>(i)].panel = static_cast<int>(data.panels.size()) + 1;
                inner[static_cast<size_t>(i)].mirror = first_out + i;
            }
            for (auto& n : outer) data.support.push_back(n);
            for (auto& n : inner) data.support.push_back(n);
            const double za = z_outer_of(pan.lo), zb = z_outer_of(pan.hi);
            data.panels.push_back(
                {first_out, nodes, std::min(za, zb), std::max(za, zb), true});
            data.panels.push_back(
                {first_in, nodes, std::min(1.0 / za, 1.0 / zb), std::max(1.0 / za, 1.0 / zb),
                 true});
        }
    }

    for (const auto& node : data.support) {
        if (!std::isfinite(node.weight) || node.weight < 0.0)
            throw numeric_error("invalid reduced-measure weight at " + std::to_string(node.beta));
    }
    return data;
}

} // namespace wl
