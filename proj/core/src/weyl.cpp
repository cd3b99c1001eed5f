#include "wl/weyl.hpp"

#include <array>

namespace wl {

namespace {

double fold_arg(cplx v) {
    double a = std::arg(v);
    if (a < 0.0) a = (a > -0.5 * pi) ? 0.0 : pi; // fold tiny negative phases
    return a;
}

} // namespace

double WeylField::eta(double tau, double delta) const {
    return fold_arg(M(cplx(tau, delta)));
}

double WeylField::etaR(double tau, double delta) const {
    return fold_arg(-1.0 / mR(cplx(tau, delta)));
}

double WeylField::etaL(double tau, double delta) const {
    return fold_arg(mL_recip(cplx(tau, delta)));
}

LatticeWeylField::LatticeWeylField(LatticeSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
}

cplx LatticeWeylField::mR(cplx lam) const {
    // constant-tail closure at the first purely-tail site, then descend
    const TailModel& t = spec_.right_tail;
    const int start = spec_.window_hi + 1;
    cplx m = -joukowski_inner((lam - t.a) / t.b) / t.b;
    for (int k = start - 1; k >= 0; --k) {
        const double bk = spec_.b(k);
        m = 1.0 / (spec_.a(k) - lam - bk * bk * m);
    }
    return m;
}

cplx LatticeWeylField::mL_recip(cplx lam) const {
    const TailModel& t = spec_.left_tail;
    const int start = spec_.window_lo - 1;
    cplx mu = -joukowski_inner((lam - t.a) / t.b) / t.b;
    for (int k = start + 1; k <= -1; ++k) {
        const double bkm = spec_.b(k - 1);
        mu = 1.0 / (spec_.a(k) - lam - bkm * bkm * mu);
    }
    return -1.0 / (spec_.b(-1) * mu);
}

SyntheticWeylField::SyntheticWeylField(StieltjesMeasure rho_R, StieltjesMeasure rho_L,
                                       double beta, double b_m1)
    : rho_R_(std::move(rho_R)), rho_L_(std::move(rho_L)), beta_(beta), b_m1_(b_m1) {
    if (!(b_m1_ > 0.0)) throw invalid_input("b_minus1 must be positive");
    const double mass = rho_R_.total_mass();
    if (std::abs(mass - 1.0) > 1e-12) {
        // normalize: m^R is the transform of a probability measure
        for (auto& a : rho_R_.atoms) a.mass /= mass;
        for (auto& b : rho_R_.bumps) b.mass /= mass;
    }
}

cplx SyntheticWeylField::mR(cplx lam) const { return rho_R_.transform(lam); }

cplx SyntheticWeylField::mL_recip(cplx lam) const {
    return lam / b_m1_ + beta_ + rho_L_.transform(lam);
}

cplx boundary_richardson(const std::function<cplx(cplx)>& F, double x, double eps0) {
    std::array<cplx, 4> v;
    std::array<double, 4> e;
    for (int j = 0; j < 4; ++j) {
        e[static_cast<size_t>(j)] = eps0 / static_cast<double>(1 << j);
        v[static_cast<size_t>(j)] = F(cplx(x, e[static_cast<size_t>(j)]));
    }
    // Neville tableau toward eps = 0
    for (int level = 1; level < 4; ++level)
        for (int i = 3; i >= level; --i) {
            const double ei = e[static_cast<size_t>(i)];
            const double eil = e[static_cast<size_t>(i - level)];
            v[static_cast<size_t>(i)] =
                (eil * v[static_cast<size_t>(i)] - ei * v[static_cast<size_t>(i - 1)]) / (eil - ei);
        }
    return v[3];
}

std::vector<cplx> psi_range(const WeylField& W, const LatticeSpec& J, cplx z, int lo, int hi) {
    const cplx nz = W.n(z);
    const PolyPair pq = eval_pq(J, joukowski(z), lo, hi);
    std::vector<cplx> out(static_cast<size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k)
        out[static_cast<size_t>(k - lo)] = nz * pq.P(k) + pq.Q(k);
    return out;
}

} // namespace wl
