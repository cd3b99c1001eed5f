#include "wl/inverse.hpp"

#include "wl/log.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wl {

namespace {

double sign_of(double x) { return x >= 0 ? 1.0 : -1.0; }

// sum_{m=1}^{M} sin(m psi), closed form
double dirichlet_sin_sum(double psi, int M) {
    const double s = std::sin(0.5 * psi);
    if (std::abs(s) < 1e-12) return 0.0;
    return std::sin(0.5 * M * psi) * std::sin(0.5 * (M + 1) * psi) / s;
}

// Differentiation matrix for a set of distinct nodes (barycentric form).
Eigen::MatrixXd diff_matrix(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXd wb(n);
    for (int j = 0; j < n; ++j) {
        double p = 1.0;
        for (int l = 0; l < n; ++l)
            if (l != j) p *= (x[static_cast<size_t>(j)] - x[static_cast<size_t>(l)]);
        wb(j) = 1.0 / p;
    }
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            D(i, j) = (wb(j) / wb(i)) / (x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
            diag -= D(i, j);
        }
        D(i, i) = diag;
    }
    return D;
}

} // namespace

InverseSolver::InverseSolver(const SpectralData& data, double tol) : data_(&data), tol_(tol) {
    panel_diff_.reserve(data.panels.size());
    for (const auto& p : data.panels) {
        std::vector<double> x(static_cast<size_t>(p.count));
        for (int i = 0; i < p.count; ++i)
            x[static_cast<size_t>(i)] = data.support[static_cast<size_t>(p.first + i)].beta;
        panel_diff_.push_back(diff_matrix(x));
    }
}

double InverseSolver::E_line(double beta, int k, double t) const {
    const double ex = (beta - 1.0 / beta) * t + 2.0 * (k + 1) * std::log(std::abs(beta));
    if (std::abs(ex) > 600.0)
        throw numeric_error("rescaling factor overflows at beta " + std::to_string(beta));
    return std::exp(ex);
}

cplx InverseSolver::E_circle(double theta, int k, double t) const {
    return std::exp(cplx(0.0, 2.0 * std::sin(theta) * t + 2.0 * theta * (k + 1)));
}

void InverseSolver::assemble(int k, double t, Eigen::MatrixXcd& A, Eigen::VectorXcd& rhs) const {
    const auto& S = data_->support;
    const auto& C = data_->circle;
    const int ns = static_cast<int>(S.size());
    const int nc = static_cast<int>(C.size());
    const int n = ns + nc;
    A.setZero(n, n);
    rhs.setZero(n);

    // per-node rescalings
    std::vector<double> Es(static_cast<size_t>(ns)), wt(static_cast<size_t>(ns)),
        sgn(static_cast<size_t>(ns));
    for (int i = 0; i < ns; ++i) {
        Es[static_cast<size_t>(i)] = E_line(S[static_cast<size_t>(i)].beta, k, t);
        wt[static_cast<size_t>(i)] =
            S[static_cast<size_t>(i)].weight / Es[static_cast<size_t>(i)];
        sgn[static_cast<size_t>(i)] =
            sign_of(std::abs(S[static_cast<size_t>(i)].beta) - 1.0);
    }
    std::vector<cplx> rt(static_cast<size_t>(nc));
    for (int j = 0; j < nc; ++j)
        rt[static_cast<size_t>(j)] =
            C[static_cast<size_t>(j)].rhat / E_circle(C[static_cast<size_t>(j)].theta, k, t);

    // ---- support rows
    for (int i = 0; i < ns; ++i) {
        const SupportNode& ni = S[static_cast<size_t>(i)];
        const double beta = ni.beta;
        A(i, i) += 1.0;
        const bool two = ni.kind == NodeKind::ac_two_sided;
        int pstar = -1;
        double alpha0 = 0.0;
        if (two) {
            A(i, ni.mirror) -= sign_of(beta) * ni.coupling * Es[static_cast<size_t>(i)];
            pstar = S[static_cast<size_t>(ni.mirror)].panel;
            alpha0 = 1.0 / beta;
        }
        for (int j = 0; j < ns; ++j) {
            if (two && S[static_cast<size_t>(j)].panel == pstar && pstar >= 0) continue;
            const double alpha = S[static_cast<size_t>(j)].beta;
            A(i, j) += sgn[static_cast<size_t>(j)] * wt[static_cast<size_t>(j)] /
                       (1.0 - 1.0 / (beta * alpha));
        }
        if (two) {
            // principal value over the panel holding the mirror point:
            //   integrand u s sigma' alpha / (alpha - alpha0)
            const SupportPanel& p = data_->panels[static_cast<size_t>(pstar)];
            const Eigen::MatrixXd& D = panel_diff_[static_cast<size_t>(pstar)];
            const int j0 = ni.mirror;
            const int l0 = j0 - p.first;
            const double L = std::log(std::abs((p.hi - alpha0) / (alpha0 - p.lo)));
            double sum0 = 0.0;
            std::vector<double> hcol(static_cast<size_t>(p.count));
            for (int l = 0; l < p.count; ++l) {
                const int j = p.first + l;
                const SupportNode& nj = S[static_cast<size_t>(j)];
                const double dens = nj.glw > 0.0 ? nj.weight / nj.glw : 0.0;
                hcol[static_cast<size_t>(l)] = sgn[static_cast<size_t>(j)] * dens * nj.beta /
                                               Es[static_cast<size_t>(j)];
            }
            for (int l = 0; l < p.count; ++l) {
                const int j = p.first + l;
                if (j == j0) continue;
                const SupportNode& nj = S[static_cast<size_t>(j)];
                A(i, j) += nj.glw * hcol[static_cast<size_t>(l)] / (nj.beta - alpha0);
                sum0 += nj.glw / (nj.beta - alpha0);
            }
            A(i, j0) += (L - sum0) * hcol[static_cast<size_t>(l0)];
            const double g0w = S[static_cast<size_t>(j0)].glw;
            for (int l = 0; l < p.count; ++l)
                A(i, p.first + l) += g0w * D(l0, l) * hcol[static_cast<size_t>(l)];
        }
        // circle block (regular for real beta)
        for (int j = 0; j < nc; ++j) {
            const double th = C[static_cast<size_t>(j)].theta;
            const cplx ximinv = std::exp(cplx(0.0, -th));
            A(i, ns + j) += (2.0 / nc) * rt[static_cast<size_t>(j)] / (1.0 - ximinv / beta);
        }
        rhs(i) = -std::exp(-t / beta);
    }

    // ---- circle rows
    const int M = nc / 2 - 1;
    for (int j = 0; j < nc; ++j) {
        const int r = ns + j;
        const double phi = C[static_cast<size_t>(j)].theta;
        A(r, r) += 1.0;
        const cplx xiinv = std::exp(cplx(0.0, -phi));
        for (int i = 0; i < ns; ++i) {
            const double alpha = S[static_cast<size_t>(i)].beta;
            A(r, i) += sgn[static_cast<size_t>(i)] * wt[static_cast<size_t>(i)] /
                       (1.0 - xiinv / alpha);
        }
        for (int l = 0; l < nc; ++l) {
            const double psi = phi + C[static_cast<size_t>(l)].theta;
            const cplx Sjl = cplx(1.0, -2.0 * dirichlet_sin_sum(psi, M));
            A(r, ns + l) += (1.0 / nc) * rt[static_cast<size_t>(l)] * Sjl;
        }
        rhs(r) = -std::exp(-xiinv * t);
    }
}

double InverseSolver::system_residual(int k, double t, const Eigen::VectorXcd& v) const {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd rhs;
    assemble(k, t, A, rhs);
    if (v.size() != rhs.size()) throw invalid_input("coefficient vector has the wrong length");
    const double vmax = std::max(v.cwiseAbs().maxCoeff(), 1.0);
    const double scale = A.cwiseAbs().rowwise().sum().maxCoeff() * vmax + rhs.cwiseAbs().maxCoeff();
    return (A * v - rhs).cwiseAbs().maxCoeff() / scale;
}

InverseSolver::Row InverseSolver::solve_row(int k, double t) const {
    const auto& S = data_->support;
    const auto& C = data_->circle;
    const int ns = static_cast<int>(S.size());
    const int nc = static_cast<int>(C.size());
    Eigen::MatrixXcd A;
    Eigen::VectorXcd rhs;
    assemble(k, t, A, rhs);

    // row equilibration, then LU
    Eigen::MatrixXcd Aeq = A;
    Eigen::VectorXcd beq = rhs;
    for (int r = 0; r < Aeq.rows(); ++r) {
        const double m = Aeq.row(r).cwiseAbs().maxCoeff();
        if (m > 0) {
            Aeq.row(r) /= m;
            beq(r) /= m;
        }
    }
    Row row;
    row.k = k;
    row.t = t;
    row.v = Aeq.partialPivLu().solve(beq);
    const double vmax = row.v.cwiseAbs().maxCoeff();
    const double scale =
        A.cwiseAbs().rowwise().sum().maxCoeff() * std::max(vmax, 1.0) +
        rhs.cwiseAbs().maxCoeff();
    row.residual = (A * row.v - rhs).cwiseAbs().maxCoeff() / scale;
    if (row.residual > tol_)
        throw numeric_error("linear solve residual " + std::to_string(row.residual) +
                            " above tolerance at k " + std::to_string(k));

    // moments of the solution: g(k, 0) and the 1/z coefficient at infinity
    cplx g0 = 1.0, s1 = 0.0;
    for (int i = 0; i < ns; ++i) {
        const SupportNode& node = S[static_cast<size_t>(i)];
        const double wti = node.weight / E_line(node.beta, k, t);
        const double si = sign_of(std::abs(node.beta) - 1.0);
        g0 += si * wti * row.v(i);
        s1 += node.beta * si * wti * row.v(i);
    }
    for (int j = 0; j < nc; ++j) {
        const double th = C[static_cast<size_t>(j)].theta;
        const cplx rt = C[static_cast<size_t>(j)].rhat / E_circle(th, k, t);
        g0 += (2.0 / nc) * rt * row.v(ns + j);
        s1 += (2.0 / nc) * std::exp(cplx(0.0, th)) * rt * row.v(ns + j);
    }
    if (std::abs(g0.imag()) > 1e-8 * std::max(1.0, std::abs(g0.real())))
        log::warn("comparison function at zero has imaginary part ", g0.imag());
    row.g0 = g0.real();
    row.s1 = s1.real();
    return row;
}

InverseSolver::Result InverseSolver::reconstruct(int k_lo, int k_hi, double t) const {
    if (k_hi < k_lo) throw invalid_input("empty reconstruction window");
    Result res;
    res.k_lo = k_lo;
    res.k_hi = k_hi;
    std::vector<Row> rows;
    rows.reserve(static_cast<size_t>(k_hi - k_lo + 2));
    for (int k = k_lo; k <= k_hi + 1; ++k) rows.push_back(solve_row(k, t));
    res.min_g0 = rows.front().g0;
    for (const auto& r : rows) {
        res.max_residual = std::max(res.max_residual, r.residual);
        res.min_g0 = std::min(res.min_g0, r.g0);
    }
    if (!(res.min_g0 > 0.0))
        throw numeric_error("comparison function nonpositive at zero (min " +
                            std::to_string(res.min_g0) + ")");
    for (int k = k_lo; k <= k_hi; ++k) {
        const size_t i = static_cast<size_t>(k - k_lo);
        res.b.push_back(std::sqrt(rows[i + 1].g0 / rows[i].g0));
        res.a.push_back(rows[i + 1].s1 - rows[i].s1);
    }
    return res;
}

double InverseSolver::coercivity_lower_bound() const {
    return 0.5 * (1.0 - data_->max_rhat * data_->max_rhat);
}

double InverseSolver::coercivity_probe_min(int k, double t, int probes, unsigned seed) const {
    const auto& S = data_->support;
    const auto& C = data_->circle;
    const int ns = static_cast<int>(S.size());
    const int nc = static_cast<int>(C.size());
    const int n = ns + nc;
    Eigen::MatrixXcd A;
    Eigen::VectorXcd rhs;
    assemble(k, t, A, rhs);
    Eigen::VectorXd w(n);
    for (int i = 0; i < ns; ++i)
        w(i) = S[static_cast<size_t>(i)].weight / E_line(S[static_cast<size_t>(i)].beta, k, t);
    for (int j = 0; j < nc; ++j) w(ns + j) = 2.0 / nc;

    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int p = 0; p < probes; ++p) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = cplx(dist(gen), dist(gen));
        const Eigen::VectorXcd Av = A * v;
        cplx num = 0.0;
        double den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += std::conj(v(i)) * Av(i) * w(i);
            den += std::norm(v(i)) * w(i);
        }
        worst = std::min(worst, num.real() / den);
    }
    return worst;
}

cplx InverseSolver::g_value(const Row& row, cplx z) const {
    const auto& S = data_->support;
    const auto& C = data_->circle;
    const int ns = static_cast<int>(S.size());
    const int nc = static_cast<int>(C.size());
    cplx g = 1.0;
    for (int i = 0; i < ns; ++i) {
        const SupportNode& node = S[static_cast<size_t>(i)];
        const double wti = node.weight / E_line(node.beta, row.k, row.t);
        const double si = sign_of(std::abs(node.beta) - 1.0);
        g += si * wti * row.v(i) / (1.0 - z / node.beta);
    }
    for (int j = 0; j < nc; ++j) {
        const double th = C[static_cast<size_t>(j)].theta;
        const cplx rt = C[static_cast<size_t>(j)].rhat / E_circle(th, row.k, row.t);
        g += (2.0 / nc) * rt * row.v(ns + j) / (1.0 - z * std::exp(cplx(0.0, -th)));
    }
    return g;
}

double InverseSolver::u_support(const Row& row, int i) const {
    const SupportNode& node = data_->support[static_cast<size_t>(i)];
    return (row.v(i) / E_line(node.beta, row.k, row.t)).real();
}

cplx InverseSolver::u_circle(const Row& row, int j) const {
    const int ns = static_cast<int>(data_->support.size());
    return row.v(ns + j) / E_circle(data_->circle[static_cast<size_t>(j)].theta, row.k, row.t);
}

} // namespace wl
