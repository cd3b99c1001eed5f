#include "wl/partition.hpp"

#include "wl/log.hpp"

#include <algorithm>
#include <cmath>

namespace wl {

namespace {

// sorted, disjoint segment set algebra
std::vector<ACSegment> normalize(std::vector<ACSegment> v) {
    std::sort(v.begin(), v.end(), [](const ACSegment& a, const ACSegment& b) { return a.lo < b.lo; });
    std::vector<ACSegment> out;
    for (const auto& s : v) {
        if (s.hi <= s.lo) continue;
        if (!out.empty() && s.lo <= out.back().hi + 1e-12)
            out.back().hi = std::max(out.back().hi, s.hi);
        else
            out.push_back(s);
    }
    return out;
}

std::vector<ACSegment> intersect(const std::vector<ACSegment>& a, const std::vector<ACSegment>& b) {
    std::vector<ACSegment> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            double lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
            if (hi > lo) out.push_back({lo, hi});
        }
    return normalize(out);
}

std::vector<ACSegment> subtract(const std::vector<ACSegment>& a, const std::vector<ACSegment>& b) {
    std::vector<ACSegment> out;
    for (const auto& x : a) {
        double cur = x.lo;
        for (const auto& y : b) {
            if (y.hi <= cur || y.lo >= x.hi) continue;
            if (y.lo > cur) out.push_back({cur, y.lo});
            cur = std::max(cur, y.hi);
        }
        if (cur < x.hi) out.push_back({cur, x.hi});
    }
    return normalize(out);
}

// outer Joukowski image of a real point with |tau| >= 2
double z_outer_real(double tau) {
    const double s = std::sqrt(std::max(0.0, tau * tau - 4.0));
    return tau > 0 ? 0.5 * (tau + s) : 0.5 * (tau - s);
}

double lambda_of_z(double t) { return t + 1.0 / t; }

double m_real(const WeylField& W, double x) { return W.M(cplx(x, 1e-12)).real(); }

} // namespace

std::vector<ACSegment> Partition::ac_common() const { return intersect(band_R, band_L); }
std::vector<ACSegment> Partition::ac_only_R() const { return subtract(band_R, band_L); }
std::vector<ACSegment> Partition::ac_only_L() const { return subtract(band_L, band_R); }

std::vector<ACSegment> Partition::ac_common_beyond() const {
    return subtract(ac_common(), {{-2.0, 2.0}});
}

double Partition::band_edge_lo() const { return -2.0; }
double Partition::band_edge_hi() const { return 2.0; }

std::vector<double> Partition::phi_set() const {
    std::vector<double> out;
    for (const auto& iv : intervals)
        if (iv.phi_interior && std::abs(std::abs(iv.phi_star) - 1.0) > 1e-12)
            out.push_back(iv.phi_star);
    return out;
}

bool Partition::in_omega1(double t, double tol) const {
    for (const auto& a : atoms) {
        if (a.side == AtomSide::common) continue;
        const double out = z_outer_real(a.tau);
        const double member = (a.side == AtomSide::right) ? 1.0 / out : out;
        if (std::abs(t - member) <= tol) return true;
    }
    for (const auto& s : ac_only_R()) {
        // inner images of an R-only AC segment beyond the band
        if (s.lo >= 2.0 || s.hi <= -2.0) {
            double u = 1.0 / z_outer_real(s.lo), v = 1.0 / z_outer_real(s.hi);
            if (t >= std::min(u, v) - tol && t <= std::max(u, v) + tol) return true;
        }
    }
    for (const auto& s : ac_only_L()) {
        if (s.lo >= 2.0 || s.hi <= -2.0) {
            double u = z_outer_real(s.lo), v = z_outer_real(s.hi);
            if (t >= std::min(u, v) - tol && t <= std::max(u, v) + tol) return true;
        }
    }
    return false;
}

bool Partition::in_v_omega1(double t, double tol) const {
    if (t == 0.0) return false;
    return in_omega1(1.0 / t, tol);
}

bool Partition::in_omega2a_line(double t, double tol) const {
    for (const auto& s : ac_common_beyond()) {
        double u = z_outer_real(s.lo), v = z_outer_real(s.hi);
        if (t >= std::min(u, v) - tol && t <= std::max(u, v) + tol) return true;
        u = 1.0 / u;
        v = 1.0 / v;
        if (t >= std::min(u, v) - tol && t <= std::max(u, v) + tol) return true;
    }
    return false;
}

bool Partition::chi0(double t) const {
    double x = std::abs(t) >= 1.0 ? t : 1.0 / t;
    for (const auto& iv : intervals)
        if (x > iv.alpha && x < iv.phi) return true;
    return false;
}

void analyze_gaps(Partition& P, const WeylField& W) {
    P.intervals.clear();
    // all AC support (both sides) blocks the real-sign analysis
    std::vector<ACSegment> blockers = normalize([&] {
        std::vector<ACSegment> v = P.band_R;
        v.insert(v.end(), P.band_L.begin(), P.band_L.end());
        return v;
    }());

    // cut points: lambda positions of all beyond-band atoms
    std::vector<const SpectralAtom*> cuts;
    for (const auto& a : P.atoms) cuts.push_back(&a);
    std::sort(cuts.begin(), cuts.end(),
              [](const SpectralAtom* x, const SpectralAtom* y) { return x->tau < y->tau; });

    // far-left sample where M is guaranteed negative
    double far = -50.0;
    for (const auto& s : blockers) far = std::min(far, s.lo - 10.0);
    if (!cuts.empty()) far = std::min(far, cuts.front()->tau - 10.0);
    while (m_real(W, far) >= 0.0) far *= 2.0;
    double far_hi = -far;
    while (m_real(W, far_hi) <= 0.0) far_hi *= 2.0;

    // merged lambda intervals delimited by -inf, atoms below -2, -2 | 2, atoms above 2, +inf
    struct LamEnd {
        double lam;
        EndpointKind kind;
        const SpectralAtom* atom;
    };
    auto kind_of = [](const SpectralAtom* a) {
        switch (a->side) {
            case AtomSide::right: return EndpointKind::atom_R_mirror;
            case AtomSide::left: return EndpointKind::atom_L;
            default: return EndpointKind::atom_common;
        }
    };
    std::vector<std::pair<LamEnd, LamEnd>> lam_intervals;
    {
        std::vector<LamEnd> lo_side{{-std::numeric_limits<double>::infinity(), EndpointKind::infinite, nullptr}};
        for (const auto* a : cuts)
            if (a->tau < -2.0) lo_side.push_back({a->tau, kind_of(a), a});
        lo_side.push_back({-2.0, EndpointKind::unit, nullptr});
        for (size_t i = 0; i + 1 < lo_side.size(); ++i)
            lam_intervals.emplace_back(lo_side[i], lo_side[i + 1]);

        std::vector<LamEnd> hi_side{{2.0, EndpointKind::unit, nullptr}};
        for (const auto* a : cuts)
            if (a->tau > 2.0) hi_side.push_back({a->tau, kind_of(a), a});
        hi_side.push_back({std::numeric_limits<double>::infinity(), EndpointKind::infinite, nullptr});
        for (size_t i = 0; i + 1 < hi_side.size(); ++i)
            lam_intervals.emplace_back(hi_side[i], hi_side[i + 1]);
    }

    for (const auto& [le, re] : lam_intervals) {
        // sample points strictly inside, excluding AC blockers
        const double lo = std::isinf(le.lam) ? far : le.lam;
        const double hi = std::isinf(re.lam) ? far_hi : re.lam;
        const double len = hi - lo;
        const double inset = 1e-7 * std::max(1.0, len);
        std::vector<ACSegment> pieces = subtract({{lo + (std::isinf(le.lam) ? 0.0 : inset),
                                                   hi - (std::isinf(re.lam) ? 0.0 : inset)}},
                                                 blockers);
        if (pieces.empty()) continue;

        DeltaInterval iv;
        iv.alpha_kind = le.kind;
        iv.beta_kind = re.kind;
        // z images (outer axis); the interval adjacent to the band touches ±1
        if (le.kind == EndpointKind::infinite)
            iv.alpha = -std::numeric_limits<double>::infinity();
        else if (le.kind == EndpointKind::unit)
            iv.alpha = 1.0;
        else
            iv.alpha = z_outer_real(le.lam);
        if (re.kind == EndpointKind::infinite)
            iv.beta = std::numeric_limits<double>::infinity();
        else if (re.kind == EndpointKind::unit)
            iv.beta = -1.0;
        else
            iv.beta = z_outer_real(re.lam);

        // sample M's sign over the gap pieces: 5 points per piece
        struct Sample {
            double x;
            int sign;
            size_t piece;
        };
        std::vector<Sample> smp;
        for (size_t pi = 0; pi < pieces.size(); ++pi) {
            const auto& pc = pieces[pi];
            for (int j = 0; j < 5; ++j) {
                const double x = pc.lo + (pc.hi - pc.lo) * j / 4.0;
                smp.push_back({x, m_real(W, x) < 0.0 ? -1 : 1, pi});
            }
        }
        int flips = 0;
        size_t flip_at = 0;
        for (size_t i = 0; i + 1 < smp.size(); ++i)
            if (smp[i].sign != smp[i + 1].sign) {
                ++flips;
                flip_at = i;
            }
        if (flips > 1)
            log::warn("gap interval has ", flips, " sign transitions; using the last");
        if (flips >= 1 && smp.front().sign < 0 && smp.back().sign > 0) {
            iv.phi_interior = true;
            double phi_lam;
            if (smp[flip_at].piece == smp[flip_at + 1].piece) {
                double a = smp[flip_at].x, b = smp[flip_at + 1].x;
                for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                    const double mid = 0.5 * (a + b);
                    (m_real(W, mid) < 0.0 ? a : b) = mid;
                }
                phi_lam = 0.5 * (a + b);
                iv.phi_in_ac = false;
            } else {
                phi_lam = 0.5 * (smp[flip_at].x + smp[flip_at + 1].x);
                iv.phi_in_ac = true;
            }
            iv.phi = z_outer_real(phi_lam);
        } else {
            iv.phi_interior = false;
            iv.phi_in_ac = false;
            iv.phi = smp.front().sign < 0 ? iv.beta : iv.alpha; // pinned
        }

        // representative selection
        auto flip_if = [](double v, bool flip) { return flip ? 1.0 / v : v; };
        if (le.kind == EndpointKind::atom_R_mirror)
            iv.alpha_star = flip_if(iv.alpha, true);
        else if (le.kind == EndpointKind::atom_L || le.kind == EndpointKind::atom_common)
            iv.alpha_star = iv.alpha;
        if (iv.phi_interior) {
            const bool both_L = le.kind == EndpointKind::atom_L && re.kind == EndpointKind::atom_L;
            const bool both_Rm =
                le.kind == EndpointKind::atom_R_mirror && re.kind == EndpointKind::atom_R_mirror;
            iv.phi_star = both_Rm ? 1.0 / iv.phi : (both_L ? iv.phi : iv.phi);
        } else {
            iv.phi_star = iv.phi;
        }
        P.intervals.push_back(iv);
    }
}

namespace {

struct PoleScan {
    std::vector<double> poles;
};

// Scan for poles of a Herglotz-type function given by its reciprocal being
// real on gaps: finds zeros of recip via grid sign changes + bisection, then
// keeps points where |recip| is tiny (pole of the function itself).
std::vector<double> scan_poles(const std::function<cplx(cplx)>& recip,
                               const std::vector<ACSegment>& blockers, double lo, double hi,
                               int grid) {
    std::vector<ACSegment> pieces = subtract({{lo, hi}}, blockers);
    std::vector<double> out;
    for (const auto& pc : pieces) {
        const int n = std::max(16, static_cast<int>(grid * (pc.hi - pc.lo) / (hi - lo)));
        double px = pc.lo + 1e-9;
        double pv = recip(cplx(px, 1e-12)).real();
        for (int i = 1; i <= n; ++i) {
            const double x = pc.lo + (pc.hi - pc.lo) * (static_cast<double>(i) / n) -
                             (i == n ? 1e-9 : 0.0);
            const double v = recip(cplx(x, 1e-12)).real();
            if (pv * v < 0.0) {
                double a = px, b = x;
                for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                    const double mid = 0.5 * (a + b);
                    const double mv = recip(cplx(mid, 1e-12)).real();
                    if (mv * recip(cplx(a, 1e-12)).real() < 0.0)
                        b = mid;
                    else
                        a = mid;
                }
                const double root = 0.5 * (a + b);
                if (std::abs(recip(cplx(root, 1e-12))) < 1e-4) out.push_back(root);
            }
            px = x;
            pv = v;
        }
    }
    return out;
}

// Contour residue of a function with a simple pole at tau0:
// mass = -(1/2 pi i) * closed integral of F around tau0.
double contour_mass(const std::function<cplx(cplx)>& F, double tau0, double radius) {
    const int n = 64;
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * pi * (static_cast<double>(j) + 0.5) / n;
        const cplx z = cplx(tau0) + radius * std::exp(cplx(0.0, th));
        acc += F(z) * radius * cplx(0.0, 1.0) * std::exp(cplx(0.0, th));
    }
    acc *= 2.0 * pi / static_cast<double>(n);
    const cplx mass = -acc / cplx(0.0, 2.0 * pi);
    return mass.real();
}

} // namespace

Partition detect_partition(const WeylField& W, const std::vector<ACSegment>& band_R,
                           const std::vector<ACSegment>& band_L, double search_lo,
                           double search_hi, int grid) {
    Partition P;
    P.band_R = normalize(band_R);
    P.band_L = normalize(band_L);

    const double b = W.b_minus1();
    auto recip_R = [&](cplx lam) { return 1.0 / (b * W.mR(lam)); };
    auto recip_L = [&](cplx lam) { return -b * W.mL(lam); }; // 1 / mL_recip

    std::vector<double> pr = scan_poles(recip_R, P.band_R, search_lo, search_hi, grid);
    std::vector<double> pl = scan_poles(recip_L, P.band_L, search_lo, search_hi, grid);

    auto nearest_gap = [&](double x, const std::vector<double>& same, const std::vector<double>& other) {
        double d = std::min(std::abs(x - 2.0), std::abs(x + 2.0));
        for (const auto& s : P.band_R) d = std::min({d, std::abs(x - s.lo), std::abs(x - s.hi)});
        for (const auto& s : P.band_L) d = std::min({d, std::abs(x - s.lo), std::abs(x - s.hi)});
        for (double y : same)
            if (std::abs(y - x) > 1e-12) d = std::min(d, std::abs(y - x));
        for (double y : other)
            if (std::abs(y - x) > 1e-12) d = std::min(d, std::abs(y - x));
        return d;
    };

    const double match_tol = 1e-9;
    for (double x : pr) {
        const double r = std::min(1e-3, 0.25 * nearest_gap(x, pr, pl));
        const double mass = contour_mass([&](cplx lam) { return b * W.mR(lam); }, x, r);
        if (mass < 1e-8) continue; // mass floor
        auto it = std::find_if(pl.begin(), pl.end(),
                               [&](double y) { return std::abs(y - x) <= match_tol; });
        if (it != pl.end()) {
            const double rl = std::min(1e-3, 0.25 * nearest_gap(*it, pl, pr));
            const double mass_l = contour_mass([&](cplx lam) { return W.mL_recip(lam); }, *it, rl);
            P.atoms.push_back({0.5 * (x + *it), AtomSide::common, mass, std::max(mass_l, 0.0)});
            pl.erase(it);
        } else {
            P.atoms.push_back({x, AtomSide::right, mass, 0.0});
        }
    }
    for (double x : pl) {
        const double r = std::min(1e-3, 0.25 * nearest_gap(x, pl, pr));
        const double mass = contour_mass([&](cplx lam) { return W.mL_recip(lam); }, x, r);
        if (mass < 1e-8) continue;
        P.atoms.push_back({x, AtomSide::left, 0.0, mass});
    }
    std::sort(P.atoms.begin(), P.atoms.end(),
              [](const SpectralAtom& a, const SpectralAtom& b2) { return a.tau < b2.tau; });

    analyze_gaps(P, W);
    return P;
}

Partition detect_partition(const LatticeWeylField& W) {
    const LatticeSpec& J = W.spec();
    std::vector<ACSegment> bR{{J.right_tail.band_lo(), J.right_tail.band_hi()}};
    std::vector<ACSegment> bL{{J.left_tail.band_lo(), J.left_tail.band_hi()}};
    double lo = std::min(bR[0].lo, bL[0].lo), hi = std::max(bR[0].hi, bL[0].hi);
    for (long k = J.window_lo - 1; k <= J.window_hi + 1; ++k) {
        lo = std::min(lo, J.a(k) - 2.0 * (J.b(k) + J.b(k - 1)));
        hi = std::max(hi, J.a(k) + 2.0 * (J.b(k) + J.b(k - 1)));
    }
    return detect_partition(W, bR, bL, lo - 1.0, hi + 1.0, 16384);
}

Partition declared_partition(const SyntheticWeylField& W) {
    Partition P;
    const double b = W.b_minus1();
    for (const auto& s : W.rhoR().bumps) P.band_R.push_back({s.lo, s.hi});
    for (const auto& s : W.rhoL().bumps) P.band_L.push_back({s.lo, s.hi});
    P.band_R = normalize(P.band_R);
    P.band_L = normalize(P.band_L);

    std::vector<SpectralAtom> tmp;
    for (const auto& a : W.rhoR().atoms) {
        // d rho_R carries b_{-1} * (normalized atom mass)
        tmp.push_back({a.pos, AtomSide::right, b * a.mass / W.rhoR().total_mass(), 0.0});
    }
    for (const auto& a : W.rhoL().atoms) {
        auto it = std::find_if(tmp.begin(), tmp.end(),
                               [&](const SpectralAtom& t) { return std::abs(t.tau - a.pos) <= 1e-9; });
        if (it != tmp.end()) {
            it->side = AtomSide::common;
            it->mass_L = a.mass;
        } else {
            tmp.push_back({a.pos, AtomSide::left, 0.0, a.mass});
        }
    }
    for (const auto& a : tmp)
        if (std::abs(a.tau) > 2.0) P.atoms.push_back(a);
    std::sort(P.atoms.begin(), P.atoms.end(),
              [](const SpectralAtom& a, const SpectralAtom& b2) { return a.tau < b2.tau; });
    analyze_gaps(P, W);
    return P;
}

ConditionsReport validate_conditions(const WeylField& W, const Partition& P, int samples) {
    ConditionsReport rep;

    // A) positive mutual distances among the one-sided set, the common point
    // set, and the common AC support; band inside the common AC support.
    std::vector<std::pair<double, double>> sets1; // one-sided: atoms + AC segments
    for (const auto& a : P.atoms)
        if (a.side != AtomSide::common) sets1.push_back({a.tau, a.tau});
    for (const auto& s : P.ac_only_R()) sets1.push_back({s.lo, s.hi});
    for (const auto& s : P.ac_only_L()) sets1.push_back({s.lo, s.hi});
    std::vector<std::pair<double, double>> sets2s;
    for (const auto& a : P.atoms)
        if (a.side == AtomSide::common) sets2s.push_back({a.tau, a.tau});
    std::vector<std::pair<double, double>> sets2a;
    for (const auto& s : P.ac_common()) sets2a.push_back({s.lo, s.hi});

    auto dist = [](const std::pair<double, double>& x, const std::pair<double, double>& y) {
        if (x.second < y.first) return y.first - x.second;
        if (y.second < x.first) return x.first - y.second;
        return 0.0;
    };
    double min_d = std::numeric_limits<double>::infinity();
    for (const auto& x : sets1)
        for (const auto& y : sets2s) min_d = std::min(min_d, dist(x, y));
    for (const auto& x : sets1)
        for (const auto& y : sets2a) min_d = std::min(min_d, dist(x, y));
    for (const auto& x : sets2s)
        for (const auto& y : sets2a) min_d = std::min(min_d, dist(x, y));
    rep.mutual_distance_ok = !(min_d < 1e-9);

    const auto common = P.ac_common();
    bool covered = false;
    for (const auto& s : common)
        if (s.lo <= -2.0 + 1e-12 && s.hi >= 2.0 - 1e-12) covered = true;
    rep.band_inside_common_ac = covered;

    // B) phase bounds on the interior of the common AC support
    double margin = pi;
    for (const auto& s : common) {
        const double buf = 0.05 * (s.hi - s.lo);
        for (int i = 0; i < samples; ++i) {
            const double x = s.lo + buf + (s.hi - s.lo - 2 * buf) * (i + 0.5) / samples;
            for (double e : {W.etaR(x), W.etaL(x)})
                margin = std::min({margin, e, pi - e});
        }
    }
    rep.arg_margin = margin;
    rep.arg_bounds_ok = margin > 1e-6;

    // C) sampled Holder quotient (exponent 1/2) of the phase difference
    double hold = 0.0;
    for (const auto& s : common) {
        for (int i = 0; i + 1 < samples / 4; ++i) {
            const double x = s.lo + (s.hi - s.lo) * (i + 0.5) / (samples / 4);
            const double y = x + (s.hi - s.lo) / (4.0 * samples);
            if (y >= s.hi) continue;
            const double dx = std::abs((W.etaR(x) - W.etaL(x)) - (W.etaR(y) - W.etaL(y)));
            hold = std::max(hold, dx / std::sqrt(y - x));
        }
    }
    rep.holder_constant = hold;
    rep.holder_ok = std::isfinite(hold) && hold < 1e6;

    // D) oscillation of each phase over every beyond-band common AC segment
    double osc = 0.0;
    for (const auto& s : P.ac_common_beyond()) {
        double rlo = pi, rhi = 0.0, llo = pi, lhi = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double x = s.lo + (s.hi - s.lo) * (i + 0.5) / samples;
            const double er = W.etaR(x), el = W.etaL(x);
            rlo = std::min(rlo, er);
            rhi = std::max(rhi, er);
            llo = std::min(llo, el);
            lhi = std::max(lhi, el);
        }
        osc = std::max({osc, rhi - rlo, lhi - llo});
    }
    rep.max_oscillation = osc;
    rep.oscillation_ok = osc < pi - 1e-9;

    // E) just outside the band both boundary functions must be real -- their
    // folded phases pinned at 0 or pi and not moving -- and the in-band
    // density ratio must stay bounded up to the edges. (The eigenvalue-free
    // strip just outside the band makes the phases constant; which endpoint
    // they sit at depends on the discrete spectrum beyond, so only constancy
    // and reality are demanded.)
    bool edge_ok = true;
    double gap = 1e-3; // room beyond the band free of the other supports
    for (const auto& a : P.atoms) gap = std::min(gap, 0.45 * (std::abs(a.tau) - 2.0));
    std::vector<ACSegment> beyond = P.ac_only_R();
    for (const auto& s : P.ac_only_L()) beyond.push_back(s);
    for (const auto& s : P.ac_common_beyond()) beyond.push_back(s);
    for (const auto& s : beyond) {
        if (s.lo > 2.0) gap = std::min(gap, 0.45 * (s.lo - 2.0));
        if (s.hi < -2.0) gap = std::min(gap, 0.45 * (-2.0 - s.hi));
    }
    if (!(gap > 1e-9)) {
        edge_ok = false;
    } else {
        for (double sgn : {+1.0, -1.0}) {
            for (bool right_side : {true, false}) {
                double ref = -1.0;
                for (double f : {1.0, 0.3, 0.1, 0.03}) {
                    const double tau = sgn * (2.0 + f * gap);
                    const double e = right_side ? W.etaR(tau) : W.etaL(tau);
                    const double snapped = e < 0.5 * pi ? 0.0 : pi;
                    if (std::abs(e - snapped) > 1e-3) edge_ok = false;
                    if (ref >= 0.0 && std::abs(snapped - ref) > 1e-12) edge_ok = false;
                    ref = snapped;
                }
            }
        }
        for (int k = 2; k <= 5; ++k)
            for (double sgn : {+1.0, -1.0}) {
                const double tau = sgn * (2.0 - std::pow(10.0, -k));
                const double dr = W.b_minus1() * W.mR(cplx(tau, 1e-9)).imag();
                const double dl = W.mL_recip(cplx(tau, 1e-9)).imag();
                if (!(dr > 0.0) || !(dl > 0.0)) {
                    edge_ok = false;
                    continue;
                }
                const double mu = std::sqrt(dr / dl);
                if (!(mu > 1e-3 && mu < 1e3)) edge_ok = false;
            }
    }
    rep.edge_values_ok = edge_ok;
    return rep;
}

} // namespace wl
