#include "wl/lattice.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace wl {

LatticeSpec LatticeSpec::free_lattice() {
    LatticeSpec J;
    J.window_lo = -2;
    J.window_hi = 1;
    J.a_window.assign(4, 0.0);
    J.b_window.assign(4, 1.0);
    return J;
}

void LatticeSpec::validate() const {
    if (window_lo > -2 || window_hi < 1)
        throw invalid_input("window must cover sites -2..1");
    const size_t n = static_cast<size_t>(window_hi - window_lo + 1);
    if (a_window.size() != n || b_window.size() != n)
        throw invalid_input("window arrays must have window_hi - window_lo + 1 entries");
    for (double v : a_window)
        if (!std::isfinite(v)) throw invalid_input("non-finite diagonal entry");
    for (double v : b_window)
        if (!(v > 0.0) || !std::isfinite(v)) throw invalid_input("off-diagonal entries must be positive");
    for (const TailModel* t : {&left_tail, &right_tail}) {
        if (!(t->b > 0.0) || !std::isfinite(t->b) || !std::isfinite(t->a))
            throw invalid_input("tail coefficients must be finite with b > 0");
        if (t->band_lo() > -2.0 || t->band_hi() < 2.0)
            throw invalid_input("tail band must contain [-2, 2]");
    }
}

double LatticeSpec::a(long k) const {
    if (k < window_lo) return left_tail.a;
    if (k > window_hi) return right_tail.a;
    return a_window[static_cast<size_t>(k - window_lo)];
}

double LatticeSpec::b(long k) const {
    if (k < window_lo) return left_tail.b;
    if (k > window_hi) return right_tail.b;
    return b_window[static_cast<size_t>(k - window_lo)];
}

double LatticeSpec::h(long k) const {
    double h = 1.0; // h_{-1}
    if (k >= 0) {
        for (long j = -1; j < k; ++j) h *= b(j);
    } else {
        for (long j = -2; j >= k; --j) h /= b(j);
    }
    return h;
}

PolyPair eval_pq(const LatticeSpec& J, cplx lambda, int lo, int hi) {
    if (lo > hi) throw invalid_input("eval_pq range is empty");
    // The recurrence is seeded at sites {-1, 0}; widen the computed range so it
    // always covers them, then expose the widened block.
    lo = std::min(lo, -1);
    hi = std::max(hi, 0);
    using lc = std::complex<long double>;
    const lc lam(lambda.real(), lambda.imag());
    PolyPair out;
    out.lo = lo;
    out.p.resize(static_cast<size_t>(hi - lo + 1));
    out.q.resize(static_cast<size_t>(hi - lo + 1));

    auto store = [&](long k, lc pv, lc qv) {
        out.p[static_cast<size_t>(k - lo)] = cplx(static_cast<double>(pv.real()), static_cast<double>(pv.imag()));
        out.q[static_cast<size_t>(k - lo)] = cplx(static_cast<double>(qv.real()), static_cast<double>(qv.imag()));
    };

    lc pm1 = 0.0L, p0 = 1.0L, qm1 = 1.0L, q0 = 0.0L;
    store(-1, pm1, qm1);
    store(0, p0, q0);
    // upward: w_{k+1} = ((lambda - a_k) w_k - b_{k-1} w_{k-1}) / b_k
    lc pk = p0, pk1 = pm1, qk = q0, qk1 = qm1;
    for (long k = 0; k < hi; ++k) {
        const long double bk = static_cast<long double>(J.b(k));
        const long double bkm = static_cast<long double>(J.b(k - 1));
        const lc c = lam - static_cast<long double>(J.a(k));
        lc pn = (c * pk - bkm * pk1) / bk;
        lc qn = (c * qk - bkm * qk1) / bk;
        pk1 = pk; pk = pn;
        qk1 = qk; qk = qn;
        store(k + 1, pk, qk);
    }
    // downward: w_{k-1} = ((lambda - a_k) w_k - b_k w_{k+1}) / b_{k-1}
    pk = pm1; pk1 = p0; qk = qm1; qk1 = q0;
    for (long k = -1; k > lo; --k) {
        const long double bk = static_cast<long double>(J.b(k));
        const long double bkm = static_cast<long double>(J.b(k - 1));
        const lc c = lam - static_cast<long double>(J.a(k));
        lc pn = (c * pk - bk * pk1) / bkm;
        lc qn = (c * qk - bk * qk1) / bkm;
        pk1 = pk; pk = pn;
        qk1 = qk; qk = qn;
        store(k - 1, pk, qk);
    }
    return out;
}

Truncation truncate(const LatticeSpec& J, int lo, int hi) {
    if (lo > hi) throw invalid_input("empty truncation");
    Truncation T;
    T.lo = lo;
    T.diag.reserve(static_cast<size_t>(hi - lo + 1));
    for (long k = lo; k <= hi; ++k) T.diag.push_back(J.a(k));
    T.off.reserve(static_cast<size_t>(hi - lo));
    for (long k = lo; k < hi; ++k) T.off.push_back(J.b(k));
    return T;
}

std::vector<double> eigenvalues(const Truncation& T) {
    const int n = T.size();
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(T.diag.data(), n);
    Eigen::VectorXd e(n > 1 ? n - 1 : 0);
    for (int i = 0; i + 1 < n; ++i) e[i] = T.off[static_cast<size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

namespace {

// Tridiagonal solve with partial pivoting (one fill-in superdiagonal),
// right-hand side overwritten with the solution.
void solve_tridiag(std::vector<cplx> dl, std::vector<cplx> d, std::vector<cplx> du,
                   std::vector<cplx>& x) {
    const int n = static_cast<int>(d.size());
    std::vector<cplx> du2(static_cast<size_t>(std::max(0, n - 2)), 0.0);
    std::vector<int> piv(static_cast<size_t>(n), 0);
    for (int i = 0; i < n - 1; ++i) {
        if (std::abs(d[static_cast<size_t>(i)]) >= std::abs(dl[static_cast<size_t>(i)])) {
            piv[static_cast<size_t>(i)] = 0;
            if (d[static_cast<size_t>(i)] == cplx(0.0)) throw numeric_error("singular tridiagonal system");
            cplx f = dl[static_cast<size_t>(i)] / d[static_cast<size_t>(i)];
            dl[static_cast<size_t>(i)] = f;
            d[static_cast<size_t>(i + 1)] -= f * du[static_cast<size_t>(i)];
            if (i + 2 < n) du2[static_cast<size_t>(i)] = 0.0;
        } else {
            piv[static_cast<size_t>(i)] = 1;
            cplx f = d[static_cast<size_t>(i)] / dl[static_cast<size_t>(i)];
            std::swap(d[static_cast<size_t>(i)], dl[static_cast<size_t>(i)]);
            cplx tmp = d[static_cast<size_t>(i + 1)];
            d[static_cast<size_t>(i + 1)] = du[static_cast<size_t>(i)] - f * tmp;
            du[static_cast<size_t>(i)] = tmp;
            if (i + 2 < n) {
                du2[static_cast<size_t>(i)] = du[static_cast<size_t>(i + 1)];
                du[static_cast<size_t>(i + 1)] = -f * du2[static_cast<size_t>(i)];
            }
            dl[static_cast<size_t>(i)] = f;
        }
        if (piv[static_cast<size_t>(i)] == 1) std::swap(x[static_cast<size_t>(i)], x[static_cast<size_t>(i + 1)]);
        x[static_cast<size_t>(i + 1)] -= dl[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    }
    if (d[static_cast<size_t>(n - 1)] == cplx(0.0)) throw numeric_error("singular tridiagonal system");
    for (int i = n - 1; i >= 0; --i) {
        cplx s = x[static_cast<size_t>(i)];
        if (i + 1 < n) s -= du[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
        if (i + 2 < n) s -= du2[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 2)];
        x[static_cast<size_t>(i)] = s / d[static_cast<size_t>(i)];
    }
}

} // namespace

std::vector<cplx> resolvent_column(const Truncation& T, cplx lambda, int j) {
    const int n = T.size();
    if (j < 0 || j >= n) throw invalid_input("resolvent column out of range");
    std::vector<cplx> dl(static_cast<size_t>(std::max(0, n - 1)));
    std::vector<cplx> du(static_cast<size_t>(std::max(0, n - 1)));
    std::vector<cplx> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = cplx(T.diag[static_cast<size_t>(i)]) - lambda;
    for (int i = 0; i + 1 < n; ++i) dl[static_cast<size_t>(i)] = du[static_cast<size_t>(i)] = T.off[static_cast<size_t>(i)];
    std::vector<cplx> x(static_cast<size_t>(n), 0.0);
    x[static_cast<size_t>(j)] = 1.0;
    solve_tridiag(std::move(dl), std::move(d), std::move(du), x);
    return x;
}

cplx resolvent_entry(const Truncation& T, cplx lambda, int j, int k) {
    return resolvent_column(T, lambda, j).at(static_cast<size_t>(k));
}

double eigenvector_weight(const Truncation& T, double eig, int site_index) {
    const int n = T.size();
    std::vector<cplx> x(static_cast<size_t>(n));
    uint32_t state = 0x9e3779b9u;
    for (int i = 0; i < n; ++i) {
        state = state * 1664525u + 1013904223u;
        x[static_cast<size_t>(i)] = 0.5 + static_cast<double>(state) / 8.589934592e9;
    }
    const cplx shift(eig, 0.0);
    const double jitter = 1e-11 * std::max(1.0, std::abs(eig));
    for (int it = 0; it < 6; ++it) {
        std::vector<cplx> dl(static_cast<size_t>(std::max(0, n - 1)));
        std::vector<cplx> du(static_cast<size_t>(std::max(0, n - 1)));
        std::vector<cplx> d(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            d[static_cast<size_t>(i)] = cplx(T.diag[static_cast<size_t>(i)]) - shift - cplx(jitter, 0.0);
        for (int i = 0; i + 1 < n; ++i) dl[static_cast<size_t>(i)] = du[static_cast<size_t>(i)] = T.off[static_cast<size_t>(i)];
        solve_tridiag(std::move(dl), std::move(d), std::move(du), x);
        double nrm = 0.0;
        for (const cplx& v : x) nrm += std::norm(v);
        nrm = std::sqrt(nrm);
        for (cplx& v : x) v /= nrm;
    }
    return std::norm(x.at(static_cast<size_t>(site_index)));
}

namespace {

std::vector<double> stable_outliers(const LatticeSpec& J, int lo1, int hi1, int lo2, int hi2,
                                    double band_lo, double band_hi) {
    auto e1 = eigenvalues(truncate(J, lo1, hi1));
    auto e2 = eigenvalues(truncate(J, lo2, hi2));
    std::vector<double> out;
    for (double v : e1) {
        if (v > band_lo - 1e-6 && v < band_hi + 1e-6) continue;
        auto it = std::lower_bound(e2.begin(), e2.end(), v - 1e-7);
        bool stable = false;
        for (; it != e2.end() && *it < v + 1e-7; ++it)
            if (std::abs(*it - v) < 1e-7) { stable = true; break; }
        if (stable) out.push_back(v);
    }
    return out;
}

} // namespace

std::vector<double> half_lattice_atoms_right(const LatticeSpec& J, int site_lo, int n) {
    const double blo = std::min(-2.0, J.right_tail.band_lo());
    const double bhi = std::max(2.0, J.right_tail.band_hi());
    return stable_outliers(J, site_lo, site_lo + n, site_lo, site_lo + 2 * n, blo, bhi);
}

std::vector<double> half_lattice_atoms_left(const LatticeSpec& J, int site_hi, int n) {
    const double blo = std::min(-2.0, J.left_tail.band_lo());
    const double bhi = std::max(2.0, J.left_tail.band_hi());
    return stable_outliers(J, site_hi - n, site_hi, site_hi - 2 * n, site_hi, blo, bhi);
}

std::vector<double> full_lattice_point_spectrum(const LatticeSpec& J, int n) {
    const double blo = std::min(J.left_tail.band_lo(), J.right_tail.band_lo());
    const double bhi = std::max(J.left_tail.band_hi(), J.right_tail.band_hi());
    return stable_outliers(J, -n, n, -2 * n, 2 * n, blo, bhi);
}

} // namespace wl
