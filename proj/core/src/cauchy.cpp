#include "wl/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wl {

GaussLegendre::GaussLegendre(int n) {
    x.resize(static_cast<size_t>(n));
    w.resize(static_cast<size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-based initial guess
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[static_cast<size_t>(i)] = -t;
        x[static_cast<size_t>(n - 1 - i)] = t;
        const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[static_cast<size_t>(i)] = wi;
        w[static_cast<size_t>(n - 1 - i)] = wi;
    }
}

namespace {

// antiderivative ln(t - z) - (1/2) ln(1 + t^2) combined so the bounded-step
// evaluation uses only principal logs of Moebius ratios (branch-safe off the
// support)
cplx bounded_step_exponent(double c, double d, double h, cplx z) {
    // (h/pi) * [ ln((d-z)/(c-z)) + (1/2) ln((1+c^2)/(1+d^2)) ]
    const cplx ratio = (cplx(d) - z) / (cplx(c) - z);
    return h / pi * (std::log(ratio) + 0.5 * std::log((1.0 + c * c) / (1.0 + d * d)));
}

cplx right_step_exponent(double d, double h, cplx z) {
    // gamma = h on (d, inf): exponent = -(h/pi) ln((d-z)/sqrt(1+d^2))
    return -h / pi * std::log((cplx(d) - z) / std::sqrt(1.0 + d * d));
}

cplx left_step_exponent(double c, double h, cplx z) {
    // gamma = h on (-inf, c): exponent = (h/pi) ln((c-z)/sqrt(1+c^2)) + i h sgn(Im z)
    const double sg = z.imag() >= 0.0 ? 1.0 : -1.0;
    return h / pi * std::log((cplx(c) - z) / std::sqrt(1.0 + c * c)) + cplx(0.0, h * sg);
}

} // namespace

void LineMult::add_step(double c, double d, double height) {
    if (height == 0.0) return;
    steps_.push_back({c, d, height});
}

void LineMult::add_segment(double lo, double hi, std::function<double(double)> gamma, int nodes) {
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.gamma = std::move(gamma);
    const GaussLegendre gl(nodes);
    s.nodes.resize(static_cast<size_t>(nodes));
    s.weights.resize(static_cast<size_t>(nodes));
    s.values.resize(static_cast<size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
        const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.x[static_cast<size_t>(i)];
        s.nodes[static_cast<size_t>(i)] = t;
        s.weights[static_cast<size_t>(i)] = 0.5 * (hi - lo) * gl.w[static_cast<size_t>(i)];
        s.values[static_cast<size_t>(i)] = s.gamma(t);
    }
    segments_.push_back(std::move(s));
}

double LineMult::gamma_at(double t) const {
    double g = 0.0;
    for (const auto& s : steps_) {
        const double c = std::isinf(s.c) ? -std::numeric_limits<double>::infinity() : s.c;
        if (t > c && t < s.d) g += s.h;
    }
    for (const auto& s : segments_)
        if (t > s.lo && t < s.hi) g += s.gamma(t);
    return g;
}

bool LineMult::covers(double t, double tol) const {
    for (const auto& s : steps_) {
        const double c = std::isinf(s.c) ? -std::numeric_limits<double>::infinity() : s.c;
        const double d = std::isinf(s.d) ? std::numeric_limits<double>::infinity() : s.d;
        if (t > c - tol && t < d + tol) return true;
    }
    for (const auto& s : segments_)
        if (t > s.lo - tol && t < s.hi + tol) return true;
    return false;
}

cplx LineMult::limit_infinity() const {
    double re = 0.0;
    for (const auto& s : steps_) {
        if (std::isinf(s.c) || std::isinf(s.d))
            throw numeric_error("limit at infinity needs a bounded phase support");
        re += s.h / pi * 0.5 * std::log((1.0 + s.c * s.c) / (1.0 + s.d * s.d));
    }
    for (const auto& s : segments_) {
        double acc = 0.0;
        for (size_t i = 0; i < s.nodes.size(); ++i)
            acc -= s.weights[i] * s.values[i] * s.nodes[i] / (1.0 + s.nodes[i] * s.nodes[i]);
        re += acc / pi;
    }
    return std::exp(cplx(re, 0.0));
}

cplx LineMult::eval(cplx z) const {
    cplx ex = 0.0;
    for (const auto& s : steps_) {
        if (std::isinf(s.c) && std::isinf(s.d))
            ex += cplx(0.0, s.h * (z.imag() >= 0.0 ? 1.0 : -1.0));
        else if (std::isinf(s.c))
            ex += left_step_exponent(s.d, s.h, z);
        else if (std::isinf(s.d))
            ex += right_step_exponent(s.c, s.h, z);
        else
            ex += bounded_step_exponent(s.c, s.d, s.h, z);
    }
    for (const auto& s : segments_) {
        cplx acc = 0.0;
        for (size_t i = 0; i < s.nodes.size(); ++i) {
            const double t = s.nodes[i];
            acc += s.weights[i] * s.values[i] * (1.0 / (cplx(t) - z) - t / (1.0 + t * t));
        }
        ex += acc / pi;
    }
    return std::exp(ex);
}

cplx LineMult::boundary_upper(double t0) const {
    // real part of the exponent via subtracted principal values; imaginary
    // part is gamma(t0) by the boundary relation
    double re = 0.0;
    for (const auto& s : steps_) {
        if (std::isinf(s.c) && std::isinf(s.d)) continue;
        if (std::isinf(s.c)) {
            // |(c - t0)| normalized
            re += s.h / pi * std::log(std::abs((s.d - t0)) / std::sqrt(1.0 + s.d * s.d));
        } else if (std::isinf(s.d)) {
            re += -s.h / pi * std::log(std::abs((s.c - t0)) / std::sqrt(1.0 + s.c * s.c));
        } else {
            re += s.h / pi *
                  (std::log(std::abs(s.d - t0) / std::abs(s.c - t0)) +
                   0.5 * std::log((1.0 + s.c * s.c) / (1.0 + s.d * s.d)));
        }
    }
    for (const auto& s : segments_) {
        if (t0 <= s.lo - 1e-13 || t0 >= s.hi + 1e-13) {
            // regular segment
            double acc = 0.0;
            for (size_t i = 0; i < s.nodes.size(); ++i) {
                const double t = s.nodes[i];
                acc += s.weights[i] * s.values[i] * (1.0 / (t - t0) - t / (1.0 + t * t));
            }
            re += acc / pi;
        } else {
            // subtracted PV on the owning segment
            const double g0 = s.gamma(t0);
            double acc = 0.0;
            for (size_t i = 0; i < s.nodes.size(); ++i) {
                const double t = s.nodes[i];
                const double dg = s.values[i] - g0;
                const double quot = std::abs(t - t0) < 1e-14 ? 0.0 : dg / (t - t0);
                acc += s.weights[i] * (quot - s.values[i] * t / (1.0 + t * t));
            }
            acc += g0 * std::log(std::abs((s.hi - t0) / (s.lo - t0)));
            re += acc / pi;
        }
    }
    return std::exp(cplx(re, gamma_at(t0)));
}

double CirclePhase::eval(double theta) const {
    // reduce to (-pi, pi]
    double th = std::remainder(theta, 2.0 * pi);
    double v = 0.0;
    if (jump0 != 0.0) {
        const double saw0 = th > 0.0 ? 0.5 * (pi - th) : (th < 0.0 ? 0.5 * (-pi - th) : 0.0);
        v += jump0 / pi * saw0;
    }
    if (jumppi != 0.0) v += jumppi / pi * (-0.5 * th);
    for (size_t n = 0; n < sine.size(); ++n) v += sine[n] * std::sin(static_cast<double>(n + 1) * th);
    return v;
}

CirclePhase CirclePhase::scaled(double s) const {
    CirclePhase out;
    out.jump0 = s * jump0;
    out.jumppi = s * jumppi;
    out.sine.resize(sine.size());
    for (size_t i = 0; i < sine.size(); ++i) out.sine[i] = s * sine[i];
    return out;
}

CirclePhase fit_odd_circle_phase(const std::function<double(double)>& gamma, double jump0,
                                 double jumppi, int M) {
    CirclePhase out;
    out.jump0 = jump0;
    out.jumppi = jumppi;
    std::vector<double> rem(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double th = 2.0 * pi * (j + 0.5) / M - pi; // (-pi, pi)
        double v = gamma(th);
        if (jump0 != 0.0) {
            const double saw0 = th > 0.0 ? 0.5 * (pi - th) : 0.5 * (-pi - th);
            v -= jump0 / pi * saw0;
        }
        if (jumppi != 0.0) v -= jumppi / pi * (-0.5 * th);
        rem[static_cast<size_t>(j)] = v;
    }
    const int nh = M / 2 - 1;
    out.sine.assign(static_cast<size_t>(nh), 0.0);
    for (int n = 1; n <= nh; ++n) {
        double acc = 0.0;
        for (int j = 0; j < M; ++j) {
            const double th = 2.0 * pi * (j + 0.5) / M - pi;
            acc += rem[static_cast<size_t>(j)] * std::sin(n * th);
        }
        out.sine[static_cast<size_t>(n - 1)] = 2.0 * acc / M;
    }
    return out;
}

cplx hat_mult(const CirclePhase& g, cplx z) {
    const bool inner = std::abs(z) < 1.0;
    const cplx zz = inner ? z : 1.0 / z;
    // Phat(z, a*saw0) = (1-z)^{-a/pi} etc.; the series parts:
    // inner exp(sum s_n z^n), outer exp(sum s_n z^{-n}) - both are exp(sum s_n zz^n)
    cplx ex = 0.0;
    cplx p = 1.0;
    for (size_t n = 0; n < g.sine.size(); ++n) {
        p *= zz;
        ex += g.sine[n] * p;
    }
    cplx v = std::exp(ex);
    if (g.jump0 != 0.0) v *= std::pow(1.0 - zz, -g.jump0 / pi);
    if (g.jumppi != 0.0) v *= std::pow(1.0 + zz, -g.jumppi / pi);
    return v;
}

cplx hat_mult_boundary_inner(const CirclePhase& g, double theta) {
    // real part of the exponent: conjugate series sum s_n cos(n theta) plus
    // the jump factors' moduli; imaginary part: gamma(theta)
    double re = 0.0;
    for (size_t n = 0; n < g.sine.size(); ++n)
        re += g.sine[n] * std::cos(static_cast<double>(n + 1) * theta);
    if (g.jump0 != 0.0) re += -g.jump0 / pi * std::log(std::abs(2.0 * std::sin(0.5 * theta)));
    if (g.jumppi != 0.0) re += -g.jumppi / pi * std::log(std::abs(2.0 * std::cos(0.5 * theta)));
    return std::exp(cplx(re, g.eval(theta)));
}

double CosSeries::eval(double theta) const {
    double v = coef.empty() ? 0.0 : coef[0];
    for (size_t m = 1; m < coef.size(); ++m) v += 2.0 * coef[m] * std::cos(static_cast<double>(m) * theta);
    return v;
}

CosSeries fit_even_series(const std::function<double(double)>& f, int M) {
    CosSeries out;
    std::vector<double> smp(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) smp[static_cast<size_t>(j)] = f(2.0 * pi * (j + 0.5) / M - pi);
    const int nh = M / 2 - 1;
    out.coef.assign(static_cast<size_t>(nh + 1), 0.0);
    for (int m = 0; m <= nh; ++m) {
        double acc = 0.0;
        for (int j = 0; j < M; ++j)
            acc += smp[static_cast<size_t>(j)] * std::cos(m * (2.0 * pi * (j + 0.5) / M - pi));
        out.coef[static_cast<size_t>(m)] = acc / M;
    }
    return out;
}

cplx szego_mult(const CosSeries& c, cplx z) {
    const bool inner = std::abs(z) < 1.0;
    cplx ex = 0.0;
    if (inner) {
        ex = -cplx(c.coef.empty() ? 0.0 : c.coef[0]);
        cplx p = 1.0;
        for (size_t m = 1; m < c.coef.size(); ++m) {
            p *= z;
            ex -= c.coef[m] * p;
        }
    } else {
        cplx p = 1.0;
        const cplx zi = 1.0 / z;
        for (size_t m = 1; m < c.coef.size(); ++m) {
            p *= zi;
            ex += c.coef[m] * p;
        }
    }
    return std::exp(ex);
}

cplx szego_mult_boundary_inner(const CosSeries& c, double theta) {
    cplx ex = -cplx(c.coef.empty() ? 0.0 : c.coef[0]);
    for (size_t m = 1; m < c.coef.size(); ++m)
        ex -= c.coef[m] * std::exp(cplx(0.0, static_cast<double>(m) * theta));
    return std::exp(ex);
}

cplx szego_mult_boundary_outer(const CosSeries& c, double theta) {
    cplx ex = 0.0;
    for (size_t m = 1; m < c.coef.size(); ++m)
        ex += c.coef[m] * std::exp(cplx(0.0, -static_cast<double>(m) * theta));
    return std::exp(ex);
}

} // namespace wl
