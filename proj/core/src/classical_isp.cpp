#include "wl/classical_isp.hpp"

#include "wl/log.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace wl {

namespace {

cplx ipow_c(cplx z, long n) {
    if (n < 0) return 1.0 / ipow_c(z, -n);
    cplx r = 1.0, b = z;
    for (long e = n; e > 0; e >>= 1, b *= b)
        if (e & 1) r *= b;
    return r;
}

bool tail_free(const TailModel& t) {
    return std::abs(t.a) < 1e-14 && std::abs(t.b - 1.0) < 1e-14;
}

void require_free_tails(const LatticeSpec& J) {
    if (!tail_free(J.left_tail) || !tail_free(J.right_tail))
        throw invalid_input("classical scattering route requires free tails on both sides");
}

// sum_{m=1}^{M} sin(m psi), closed form
double dirichlet_sin_sum(double psi, int M) {
    const double s = std::sin(0.5 * psi);
    if (std::abs(s) < 1e-12) return 0.0;
    return std::sin(0.5 * M * psi) * std::sin(0.5 * (M + 1) * psi) / s;
}

} // namespace

cplx jost_right(const LatticeSpec& J, int k, cplx z) {
    const int KR = static_cast<int>(J.window_hi) + 1;
    if (k >= KR) return ipow_c(z, k + 1);
    const cplx lambda = z + 1.0 / z;
    cplx up1 = ipow_c(z, KR + 2); // f(KR + 1)
    cplx u = ipow_c(z, KR + 1);   // f(KR)
    for (int j = KR; j > k; --j) {
        const cplx um1 = ((lambda - J.a(j)) * u - J.b(j) * up1) / J.b(j - 1);
        up1 = u;
        u = um1;
    }
    return u;
}

cplx jost_left(const LatticeSpec& J, int k, cplx z) {
    const int KL = static_cast<int>(J.window_lo) - 1;
    if (k <= KL) return ipow_c(z, k + 1);
    const cplx lambda = z + 1.0 / z;
    cplx um1 = ipow_c(z, KL);   // f(KL - 1)
    cplx u = ipow_c(z, KL + 1); // f(KL)
    for (int j = KL; j < k; ++j) {
        const cplx up1 = ((lambda - J.a(j)) * u - J.b(j - 1) * um1) / J.b(j);
        um1 = u;
        u = up1;
    }
    return u;
}

cplx jost_wronskian(const LatticeSpec& J, cplx z) {
    const int k = static_cast<int>(J.window_hi);
    const cplx fm = jost_left(J, k, 1.0 / z);
    const cplx fm1 = jost_left(J, k + 1, 1.0 / z);
    const cplx fp = jost_right(J, k, z);
    const cplx fp1 = jost_right(J, k + 1, z);
    return J.b(k) * (fm * fp1 - fm1 * fp);
}

ScatteringData scattering_direct(const LatticeSpec& J, int grid_circle) {
    require_free_tails(J);
    const int N = grid_circle;
    if (N < 8 || (N & (N - 1)) != 0)
        throw invalid_input("circle grid size must be a power of two, at least 8");

    ScatteringData data;
    data.W_inf = J.h(static_cast<long>(J.window_lo) - 1);

    // ---- bound states: real zeros of the Wronskian in (-1, 1) \ {0}
    const auto Wre = [&](double x) { return jost_wronskian(J, cplx(x, 0.0)).real(); };
    const int scan = 8000;
    const double zmin = 5e-3, zmax = 1.0 - 1e-7;
    for (int side = 0; side < 2; ++side) {
        const double sg = side == 0 ? 1.0 : -1.0;
        double xprev = sg * zmax, fprev = Wre(xprev);
        for (int i = 1; i <= scan; ++i) {
            const double x = sg * (zmax + (zmin - zmax) * i / scan);
            const double f = Wre(x);
            if (fprev == 0.0) fprev = 1e-300;
            if (f * fprev < 0.0) {
                double lo = std::min(x, xprev), hi = std::max(x, xprev);
                double flo = Wre(lo);
                for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = Wre(mid);
                    if (fm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if (flo * fm < 0.0)
                        hi = mid;
                    else {
                        lo = mid;
                        flo = fm;
                    }
                }
                data.bound_z.push_back(0.5 * (lo + hi));
            }
            xprev = x;
            fprev = f;
        }
    }
    std::sort(data.bound_z.begin(), data.bound_z.end());

    // ---- norming weights rho_m / c'(z_m)
    for (double zn : data.bound_z) {
        const cplx fp0 = jost_right(J, 0, cplx(zn, 0.0));
        const cplx fm0 = jost_left(J, 0, cplx(1.0 / zn, 0.0));
        const cplx fp1 = jost_right(J, 1, cplx(zn, 0.0));
        const cplx fm1 = jost_left(J, 1, cplx(1.0 / zn, 0.0));
        const double rho = (fp0 / fm0).real();
        const double rho_b = (fp1 / fm1).real();
        if (std::abs(rho - rho_b) > 1e-6 * std::max(1.0, std::abs(rho)))
            log::warn("proportionality constant drifts across rows at bound state ", zn);
        // c(z) = W(z)/(z - 1/z); at a zero of W: c'(z_n) = W'(z_n)/(z_n - 1/z_n)
        const double h = 1e-8;
        const double dW = jost_wronskian(J, cplx(zn, h)).imag() / h;
        const double cp = dW / (zn - 1.0 / zn);
        if (std::abs(cp) < 1e-300) throw numeric_error("degenerate bound state");
        data.norming.push_back(rho / cp);
    }

    // ---- reflection coefficient on the circle: r = -<f_-(xi), f_+(xi)> / W(xi)
    data.theta.resize(static_cast<size_t>(N));
    data.r.resize(static_cast<size_t>(N));
    const int kw = static_cast<int>(J.window_hi);
    for (int j = 0; j < N; ++j) {
        const double th = 2.0 * pi * (j + 0.5) / N - pi;
        data.theta[static_cast<size_t>(j)] = th;
        const cplx xi(std::cos(th), std::sin(th));
        const cplx fm = jost_left(J, kw, xi);
        const cplx fm1 = jost_left(J, kw + 1, xi);
        const cplx fp = jost_right(J, kw, xi);
        const cplx fp1 = jost_right(J, kw + 1, xi);
        const cplx cross = J.b(kw) * (fm * fp1 - fm1 * fp);
        const cplx W = jost_wronskian(J, xi);
        data.r[static_cast<size_t>(j)] = -cross / W;
        data.max_r = std::max(data.max_r, std::abs(data.r[static_cast<size_t>(j)]));
    }
    if (data.max_r >= 1.0 - 1e-6)
        throw numeric_error("reflection coefficient reaches modulus one");
    return data;
}

namespace {

struct MarchenkoRow {
    double g0 = 0.0; // Phi_k(0)
    double s = 0.0;  // first moment
    double residual = 0.0;
};

MarchenkoRow marchenko_solve(const ScatteringData& data, int k, double tol) {
    const int nm = static_cast<int>(data.bound_z.size());
    const int N = static_cast<int>(data.theta.size());
    const int n = nm + N;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Constant(n, 1.0);

    // ---- bound-state rows, unknowns u(z_m)
    for (int m = 0; m < nm; ++m) {
        const double zm = data.bound_z[static_cast<size_t>(m)];
        A(m, m) += std::pow(zm, 2 * (k + 1));
        for (int l = 0; l < nm; ++l)
            A(m, l) -= data.norming[static_cast<size_t>(l)] /
                       (1.0 / zm - data.bound_z[static_cast<size_t>(l)]);
        for (int j = 0; j < N; ++j) {
            const cplx ximinv =
                std::exp(cplx(0.0, -data.theta[static_cast<size_t>(j)]));
            A(m, nm + j) -= (1.0 / N) * data.r[static_cast<size_t>(j)] /
                            (1.0 - ximinv / zm);
        }
    }

    // ---- circle rows
    const int M = N / 2 - 1;
    for (int j = 0; j < N; ++j) {
        const int rrow = nm + j;
        const double phi = data.theta[static_cast<size_t>(j)];
        const int jm = N - 1 - j; // grid index of the mirrored angle
        A(rrow, nm + j) += std::exp(cplx(0.0, 2.0 * (k + 1) * phi));
        A(rrow, nm + jm) += 0.5 * data.r[static_cast<size_t>(jm)];
        for (int l = 0; l < nm; ++l) {
            const double zl = data.bound_z[static_cast<size_t>(l)];
            const cplx xiinv = std::exp(cplx(0.0, -phi));
            A(rrow, l) -= data.norming[static_cast<size_t>(l)] / (xiinv - zl);
        }
        for (int l = 0; l < N; ++l) {
            const double psi = phi + data.theta[static_cast<size_t>(l)];
            const cplx Sjl = cplx(1.0, -2.0 * dirichlet_sin_sum(psi, M));
            A(rrow, nm + l) -= (0.5 / N) * data.r[static_cast<size_t>(l)] * Sjl;
        }
    }

    Eigen::MatrixXcd Aeq = A;
    Eigen::VectorXcd beq = rhs;
    for (int r0 = 0; r0 < n; ++r0) {
        const double m = Aeq.row(r0).cwiseAbs().maxCoeff();
        if (m > 0) {
            Aeq.row(r0) /= m;
            beq(r0) /= m;
        }
    }
    const Eigen::VectorXcd u = Aeq.partialPivLu().solve(beq);
    const double scale = A.cwiseAbs().rowwise().sum().maxCoeff() *
                             std::max(u.cwiseAbs().maxCoeff(), 1.0) +
                         1.0;
    MarchenkoRow out;
    out.residual = (A * u - rhs).cwiseAbs().maxCoeff() / scale;
    if (out.residual > tol)
        throw numeric_error("scattering solve residual above tolerance at k " +
                            std::to_string(k));

    cplx g0 = 1.0, s = 0.0;
    for (int m = 0; m < nm; ++m) {
        const double zm = data.bound_z[static_cast<size_t>(m)];
        g0 -= u(m) * data.norming[static_cast<size_t>(m)] / zm;
        s += u(m) * data.norming[static_cast<size_t>(m)];
    }
    for (int j = 0; j < N; ++j) {
        const cplx f = data.r[static_cast<size_t>(j)] * u(nm + j);
        g0 += (1.0 / N) * f;
        s -= (1.0 / N) * f * std::exp(cplx(0.0, data.theta[static_cast<size_t>(j)]));
    }
    if (std::abs(g0.imag()) > 1e-8 * std::max(1.0, std::abs(g0.real())))
        log::warn("scattering comparison function at zero has imaginary part ", g0.imag());
    out.g0 = g0.real();
    out.s = s.real();
    return out;
}

} // namespace

ScatteringResult scattering_reconstruct(const ScatteringData& data, int k_lo, int k_hi,
                                        double tol) {
    if (k_hi < k_lo) throw invalid_input("empty reconstruction window");
    ScatteringResult res;
    res.k_lo = k_lo;
    res.k_hi = k_hi;
    std::vector<MarchenkoRow> rows;
    for (int k = k_lo; k <= k_hi + 1; ++k) rows.push_back(marchenko_solve(data, k, tol));
    for (const auto& r : rows) res.max_residual = std::max(res.max_residual, r.residual);
    for (int k = k_lo; k <= k_hi; ++k) {
        const size_t i = static_cast<size_t>(k - k_lo);
        if (!(rows[i].g0 > 0.0) || !(rows[i + 1].g0 > 0.0))
            throw numeric_error("comparison function nonpositive at zero");
        res.b.push_back(std::sqrt(rows[i + 1].g0 / rows[i].g0));
        res.a.push_back(rows[i].s - rows[i + 1].s);
    }
    return res;
}

} // namespace wl
