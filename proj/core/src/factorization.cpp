#include "wl/factorization.hpp"

#include "wl/log.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wl {

namespace {

double z_outer_real(double tau) {
    const double s = std::sqrt(std::max(0.0, tau * tau - 4.0));
    return tau > 0 ? 0.5 * (tau + s) : 0.5 * (tau - s);
}

// integer power with explicit sign handling, single-valued for complex z
cplx ipow(cplx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r = 1.0, b = z;
    for (unsigned m = static_cast<unsigned>(n); m != 0; m >>= 1) {
        if (m & 1u) r *= b;
        b *= b;
    }
    return r;
}

struct ZSeg {
    double lo, hi;
    double sgn; // sign(|t| - 1) on the segment
};

// z images of a lambda segment beyond the band: outer (|z|>1) or inner
ZSeg z_image(double lam_lo, double lam_hi, bool inner) {
    double u = z_outer_real(lam_lo), v = z_outer_real(lam_hi);
    if (inner) {
        u = 1.0 / u;
        v = 1.0 / v;
    }
    return {std::min(u, v), std::max(u, v), inner ? -1.0 : 1.0};
}

} // namespace

Factorization::Factorization(const WeylField& W, const Partition& P, int circle_modes,
                             int segment_nodes)
    : W_(&W), P_(&P) {
    // ---- rational part: zeros at the cut representatives, poles at the
    // interior sign-change representatives, (z+1)-padding for balance
    for (const auto& iv : P.intervals) {
        if (iv.alpha_star) zero_roots_.push_back(*iv.alpha_star);
        if (iv.phi_interior && std::abs(std::abs(iv.phi_star) - 1.0) > 1e-12)
            pole_roots_.push_back(iv.phi_star);
        if (iv.phi_in_ac)
            log::warn("sign change hidden inside an AC segment; representative at ", iv.phi_star,
                      " uses the blocker midpoint");
    }
    // ---- integer edge zeros at z = +-1. Their multiplicities make the
    // splitting match the actual vanishing order of (z - 1/z)/N at the band
    // edges: the in-band phase factor alone contributes the fractional edge
    // exponents (1 - 2 eta(2-)/pi) at +1 and (2 eta(-2+)/pi - 1) at -1, and
    // whatever even-integer excess the target has must be rational.
    {
        const auto edge_exponent = [&W](double sgn) {
            const double s1 = 1e-3, s2 = 1e-5;
            const auto probe = [&](double s) {
                const cplx z(sgn * (1.0 - s), 0.0);
                return std::abs((z - 1.0 / z) / W.N(z));
            };
            return (std::log(probe(s1)) - std::log(probe(s2))) / (std::log(s1) - std::log(s2));
        };
        const double provided_pos = 1.0 - 2.0 * W.eta(2.0 - 1e-6, 1e-13) / pi;
        const double provided_neg = 2.0 * W.eta(-2.0 + 1e-6, 1e-13) / pi - 1.0;
        const double ep = edge_exponent(+1.0), en = edge_exponent(-1.0);
        edge_pos_ = std::max(0, static_cast<int>(std::lround(0.5 * (ep - provided_pos))));
        edge_neg_ = std::max(0, static_cast<int>(std::lround(0.5 * (en - provided_neg))));
        if (std::abs(ep - provided_pos - 2.0 * edge_pos_) > 0.1 ||
            std::abs(en - provided_neg - 2.0 * edge_neg_) > 0.1)
            log::warn("edge exponents ", ep, ", ", en, " sit away from the admissible ladder (",
                      provided_pos, " + 2Z, ", provided_neg, " + 2Z)");
    }
    const int balance = static_cast<int>(pole_roots_.size()) -
                        static_cast<int>(zero_roots_.size()) - edge_pos_ - edge_neg_;
    if (balance != 0)
        throw numeric_error("unbalanced cut/sign-change counts in the rational factor");

    // ---- line phase over the one-sided AC images
    const auto add_ac = [&](const std::vector<ACSegment>& segs, bool inner, bool one_sided) {
        for (const auto& s : segs) {
            if (!(s.lo >= 2.0 || s.hi <= -2.0)) continue; // beyond-band pieces only
            const ZSeg zs = z_image(s.lo, s.hi, inner);
            if (one_sided) {
                one_sided_.add_segment(
                    zs.lo, zs.hi,
                    [W = W_, zs](double t) { return -zs.sgn * W->eta(t + 1.0 / t); },
                    segment_nodes);
            } else {
                two_sided_.add_segment(
                    zs.lo, zs.hi,
                    [W = W_, P = P_, zs](double t) {
                        const double chi = P->chi0(t) ? 1.0 : 0.0;
                        return -0.5 * zs.sgn * (W->eta(t + 1.0 / t) - chi * pi);
                    },
                    segment_nodes);
            }
        }
    };
    add_ac(P.ac_only_R(), /*inner=*/true, /*one_sided=*/true);
    add_ac(P.ac_only_L(), /*inner=*/false, /*one_sided=*/true);
    add_ac(P.ac_common_beyond(), /*inner=*/false, /*one_sided=*/false);
    add_ac(P.ac_common_beyond(), /*inner=*/true, /*one_sided=*/false);

    // ---- odd in-band phase; its jumps at theta = 0, pi are set by the
    // one-sided limits of the boundary argument at the band edges.  The
    // imaginary offset is shrunk with the distance from the band edges: the
    // phase error of a boundary value taken at tau + i*delta grows like
    // delta / sin^2(theta), so a fixed offset would contaminate the fitted
    // jump sizes and series coefficients near theta = 0, pi.
    const auto edge_delta = [](double sin_theta) {
        return std::max(1e-13, 1e-9 * sin_theta * sin_theta);
    };
    // The boundary argument is smooth in the circle angle but only
    // Hoelder-continuous in tau, so the one-sided edge limits are
    // extrapolated along a dyadic angle ladder.
    const auto edge_eta = [&W, &edge_delta](double sgn) {
        double x[4], y[4], th = 0.1;
        for (int j = 0; j < 4; ++j, th *= 0.5) {
            x[j] = th;
            y[j] = W.eta(sgn * 2.0 * std::cos(th), edge_delta(std::sin(th)));
        }
        for (int lev = 1; lev < 4; ++lev)
            for (int i = 3; i >= lev; --i)
                y[i] = (x[i - lev] * y[i] - x[i] * y[i - 1]) / (x[i - lev] - x[i]);
        return y[3];
    };
    const double eta_top = edge_eta(1.0);
    const double eta_bot = edge_eta(-1.0);
    in_band_ = fit_odd_circle_phase(
        [&W, &edge_delta](double th) {
            const double a = std::abs(th);
            const double v = 0.5 * pi - W.eta(2.0 * std::cos(a), edge_delta(std::sin(a)));
            return th >= 0.0 ? v : -v;
        },
        pi - 2.0 * eta_top, 2.0 * eta_bot - pi, circle_modes);

    // ---- in-band density ratio factor
    density_ratio_ = fit_even_series(
        [&W, &edge_delta](double a) {
            const double tau = 2.0 * std::cos(a);
            const double d = edge_delta(std::sin(a));
            const double dr = std::max(1e-300, W.b_minus1() * W.mR(cplx(tau, d)).imag());
            const double dl = std::max(1e-300, W.mL_recip(cplx(tau, d)).imag());
            return 0.5 * (std::log(dr) - std::log(dl));
        },
        circle_modes);

    // ---- constant and relative sign from off-support probes
    const double radii[] = {1.31, 1.73, 2.19, 2.83};
    const double angles[] = {0.47, 1.13, 1.91, 2.63};
    cplx mean = 0.0;
    std::vector<cplx> ratios;
    for (double r : radii)
        for (double a : angles) {
            const cplx z = std::polar(r, a);
            const cplx F = (z - 1.0 / z) / W.N(z);
            const cplx q = F / (pieces(z) * pieces(1.0 / z));
            ratios.push_back(q);
            mean += q;
        }
    mean /= static_cast<double>(ratios.size());
    double spread = 0.0;
    for (const cplx& q : ratios) spread = std::max(spread, std::abs(q - mean) / std::abs(mean));
    if (spread > 1e-6)
        log::warn("splitting constant probe spread ", spread);
    if (std::abs(mean.imag()) > 1e-6 * std::abs(mean))
        log::warn("splitting constant has an imaginary part ", mean.imag());
    sigma_ = mean.real() >= 0.0 ? 1 : -1;
    C2_ = std::abs(mean.real());
    if (C2_ <= 0.0) throw numeric_error("degenerate splitting constant");
    C_ = std::sqrt(C2_);
    log::info("splitting constant C^2 = ", C2_, ", sigma = ", sigma_, ", spread = ", spread);

    Rinf_ = C_ * one_sided_.limit_infinity() * two_sided_.limit_infinity();
}

cplx Factorization::rational(cplx z) const {
    cplx v = ipow(z - 1.0, edge_pos_) * ipow(z + 1.0, edge_neg_);
    for (double a : zero_roots_) v *= z - a;
    for (double p : pole_roots_) v /= z - p;
    return v;
}

cplx Factorization::pieces(cplx z) const {
    cplx v = rational(z);
    if (!one_sided_.empty()) v *= one_sided_.eval(z);
    if (!two_sided_.empty()) v *= two_sided_.eval(z);
    v *= hat_mult(in_band_.scaled(-0.5), z);
    v *= szego_mult(density_ratio_, z);
    return v;
}

cplx Factorization::R(cplx z) const { return C_ * pieces(z); }

cplx Factorization::boundary_circle(double theta, bool inner) const {
    const cplx xi = std::polar(1.0, theta);
    cplx v = C_ * rational(xi);
    if (!one_sided_.empty()) v *= one_sided_.eval(xi);
    if (!two_sided_.empty()) v *= two_sided_.eval(xi);
    const CirclePhase ph = in_band_.scaled(-0.5);
    v *= inner ? hat_mult_boundary_inner(ph, theta) : hat_mult_boundary_inner(ph, -theta);
    v *= inner ? szego_mult_boundary_inner(density_ratio_, theta)
               : szego_mult_boundary_outer(density_ratio_, theta);
    return v;
}

cplx Factorization::boundary_line_upper(double t) const {
    cplx v = C_ * rational(t);
    if (!one_sided_.empty())
        v *= one_sided_.covers(t) ? one_sided_.boundary_upper(t) : one_sided_.eval(t);
    if (!two_sided_.empty())
        v *= two_sided_.covers(t) ? two_sided_.boundary_upper(t) : two_sided_.eval(t);
    v *= hat_mult(in_band_.scaled(-0.5), t);
    v *= szego_mult(density_ratio_, t);
    return v;
}

double Factorization::abs_on_cut(double t) const { return std::abs(boundary_line_upper(t)); }

cplx Factorization::g_direct(const LatticeSpec& J, int k, cplx z) const {
    const cplx psi = psi_range(*W_, J, z, k, k)[0];
    return (R(z) / Rinf_) * ipow(z, -(k + 1)) * J.h(k) * psi;
}

Factorization::Residuals Factorization::verify(int line_samples, int circle_samples,
                                               unsigned seed) const {
    Residuals res;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.15, pi - 0.15);
    std::uniform_real_distribution<double> rad(std::log(1.05), std::log(3.5));
    for (int i = 0; i < line_samples; ++i) {
        double r = std::exp(rad(rng));
        if (i % 3 == 2) r = 1.0 / r; // a share of interior probes
        const cplx z = std::polar(r, ang(rng) * (i % 2 == 0 ? 1.0 : -1.0));
        const cplx F = (z - 1.0 / z) / W_->N(z);
        const cplx model = static_cast<double>(sigma_) * C2_ * pieces(z) * pieces(1.0 / z);
        res.identity = std::max(res.identity, std::abs(F - model) / (std::abs(F) + 1e-300));
    }
    for (int j = 0; j < circle_samples; ++j) {
        const double th = 2.0 * pi * (j + 0.5) / circle_samples - pi;
        if (std::abs(std::sin(th)) < 1e-3) continue;
        const double tau = 2.0 * std::cos(th);
        const double sg = std::sin(th) > 0.0 ? 1.0 : -1.0;
        const cplx lam_in = cplx(tau, -1e-9 * sg);  // z -> circle from inside
        const cplx lam_out = cplx(tau, 1e-9 * sg);
        const double im_in = std::abs((-W_->b_minus1() * W_->mR(lam_in)).imag());
        const double im_out = std::abs(W_->mL_recip(lam_out).imag());
        const cplx lhs = boundary_circle(th, true) * boundary_circle(-th, true) * im_in;
        const cplx rhs = boundary_circle(th, false) * boundary_circle(-th, false) * im_out;
        const double den = std::max(std::abs(lhs), std::abs(rhs)) + 1e-300;
        res.balance = std::max(res.balance, std::abs(lhs - rhs) / den);
    }
    const cplx r0 = R(cplx(0.0, 0.0));
    res.anchor = std::abs(Rinf_ * r0 - W_->b_minus1()) / W_->b_minus1();
    return res;
}

} // namespace wl
