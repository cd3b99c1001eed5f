#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wl/lattice.hpp"
#include "wl/types.hpp"

#include <cmath>
#include <complex>

using namespace wl;
using wt::window_lattice;

namespace {

// Closed-form recurrence solutions of the constant-coefficient lattice on
// the z cover (lambda = z + 1/z):
//   P_k = (z^{k+1} - z^{-(k+1)})/(z - 1/z),  Q_k = (z^{-k} - z^k)/(z - 1/z).
cplx free_P(long k, cplx z) {
    return (std::pow(z, static_cast<double>(k + 1)) - std::pow(z, -static_cast<double>(k + 1))) /
           (z - 1.0 / z);
}
cplx free_Q(long k, cplx z) {
    return (std::pow(z, -static_cast<double>(k)) - std::pow(z, static_cast<double>(k))) /
           (z - 1.0 / z);
}

} // namespace

TEST_CASE("free lattice entries and cumulative bond weights") {
    const LatticeSpec J = LatticeSpec::free_lattice();
    for (long k = -12; k <= 12; ++k) {
        CHECK(J.a(k) == 0.0);
        CHECK(J.b(k) == 1.0);
        CHECK(J.h(k) == 1.0);
    }
}

TEST_CASE("cumulative bond weight follows h(k+1) = h(k) b(k) with h(-1) = 1") {
    const LatticeSpec J = window_lattice({}, {{-1, 1.3}, {0, 1.5}, {1, 0.8}});
    CHECK(J.h(-1) == 1.0);
    for (long k = -6; k <= 6; ++k)
        CHECK(std::abs(J.h(k + 1) - J.h(k) * J.b(k)) < 1e-14 * std::abs(J.h(k + 1)));
    CHECK(J.h(0) == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(J.h(2) == doctest::Approx(1.3 * 1.5 * 0.8).epsilon(1e-14));
    CHECK(J.h(-2) == doctest::Approx(1.0 / J.b(-2)).epsilon(1e-14));
}

TEST_CASE("window validation rejects malformed descriptions") {
    LatticeSpec J = LatticeSpec::free_lattice();
    SUBCASE("window must cover the reference sites") {
        J.window_hi = 0;
        J.a_window.assign(3, 0.0);
        J.b_window.assign(3, 1.0);
        CHECK_THROWS_AS(J.validate(), invalid_input);
    }
    SUBCASE("array sizes must match the window") {
        J.a_window.push_back(0.0);
        CHECK_THROWS_AS(J.validate(), invalid_input);
    }
    SUBCASE("off-diagonal entries must be positive") {
        J.b_window[1] = -1.0;
        CHECK_THROWS_AS(J.validate(), invalid_input);
    }
    SUBCASE("tail bands must contain the reference band") {
        J.right_tail.a = 5.0;
        CHECK_THROWS_AS(J.validate(), invalid_input);
    }
}

TEST_CASE("recurrence solutions match the constant-coefficient closed form") {
    const LatticeSpec J = LatticeSpec::free_lattice();
    const cplx z(0.4, 0.3);
    const cplx lam = z + 1.0 / z;
    const PolyPair pq = eval_pq(J, lam, -6, 6);
    for (long k = -6; k <= 6; ++k) {
        CHECK(std::abs(pq.P(k) - free_P(k, z)) < 1e-11 * std::max(1.0, std::abs(free_P(k, z))));
        CHECK(std::abs(pq.Q(k) - free_Q(k, z)) < 1e-11 * std::max(1.0, std::abs(free_Q(k, z))));
    }
}

TEST_CASE("recurrence solutions satisfy the three-term relation and seeds") {
    const LatticeSpec J = window_lattice({{0, 0.3}, {-1, -0.2}}, {{0, 1.5}, {1, 0.7}});
    const cplx lam(0.37, 0.84);
    const PolyPair pq = eval_pq(J, lam, -7, 7);
    CHECK(pq.P(0) == cplx(1.0, 0.0));
    CHECK(pq.P(-1) == cplx(0.0, 0.0));
    CHECK(pq.Q(0) == cplx(0.0, 0.0));
    CHECK(pq.Q(-1) == cplx(1.0, 0.0));
    for (long k = -6; k <= 5; ++k) {
        const cplx rp =
            J.b(k - 1) * pq.P(k - 1) + (J.a(k) - lam) * pq.P(k) + J.b(k) * pq.P(k + 1);
        const cplx rq =
            J.b(k - 1) * pq.Q(k - 1) + (J.a(k) - lam) * pq.Q(k) + J.b(k) * pq.Q(k + 1);
        const double scale = std::max({1.0, std::abs(pq.P(k)), std::abs(pq.Q(k))});
        CHECK(std::abs(rp) < 1e-12 * scale);
        CHECK(std::abs(rq) < 1e-12 * scale);
    }
}

TEST_CASE("discrete Wronskian of the two seeded solutions is conserved") {
    const LatticeSpec J = window_lattice({{1, 0.4}}, {{-1, 1.3}, {0, 1.5}});
    const cplx lam(1.21, 0.55);
    const PolyPair pq = eval_pq(J, lam, -7, 7);
    // b_k (P_k Q_{k+1} - P_{k+1} Q_k) is independent of k and pinned by the
    // seeds at k = -1 to the value -b_{-1}.
    for (long k = -7; k <= 6; ++k) {
        const cplx w = J.b(k) * (pq.P(k) * pq.Q(k + 1) - pq.P(k + 1) * pq.Q(k));
        CHECK(std::abs(w + J.b(-1)) < 1e-11 * std::max(1.0, std::abs(w)));
    }
}

TEST_CASE("finite sections have the expected spectra") {
    SUBCASE("three free sites") {
        const Truncation T = truncate(LatticeSpec::free_lattice(), -1, 1);
        const auto ev = eigenvalues(T);
        REQUIRE(ev.size() == 3);
        CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
        CHECK(ev[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(ev[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("large section of the strengthened-bond lattice brackets the pair") {
        const Truncation T = truncate(wt::lat_b0_2(), -40, 40);
        const auto ev = eigenvalues(T);
        REQUIRE(ev.size() == 81);
        // isolated pair at +-(b + 1/b) for a single strengthened bond
        CHECK(ev.back() == doctest::Approx(2.5).epsilon(1e-10));
        CHECK(ev.front() == doctest::Approx(-2.5).epsilon(1e-10));
        // next values stay inside the essential band
        CHECK(ev[static_cast<size_t>(ev.size()) - 2] < 2.0);
        CHECK(ev[1] > -2.0);
    }
}

TEST_CASE("resolvent columns solve the shifted system") {
    const Truncation T = truncate(wt::lat_b0_2(), -10, 10);
    const cplx lam(0.3, 0.4);
    const int j = 13; // section-internal index
    const auto col = resolvent_column(T, lam, j);
    REQUIRE(static_cast<int>(col.size()) == T.size());
    for (int i = 0; i < T.size(); ++i) {
        cplx acc = (T.diag[static_cast<size_t>(i)] - lam) * col[static_cast<size_t>(i)];
        if (i > 0) acc += T.off[static_cast<size_t>(i - 1)] * col[static_cast<size_t>(i - 1)];
        if (i + 1 < T.size()) acc += T.off[static_cast<size_t>(i)] * col[static_cast<size_t>(i + 1)];
        const cplx want = i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        CHECK(std::abs(acc - want) < 1e-11);
    }
    // symmetry of the resolvent of a symmetric section
    CHECK(std::abs(resolvent_entry(T, lam, 3, 9) - resolvent_entry(T, lam, 9, 3)) < 1e-12);
    CHECK(std::abs(resolvent_entry(T, lam, j, 5) - col[5]) < 1e-13);
}

TEST_CASE("eigenvector amplitude at an isolated eigenvalue") {
    // two sites coupled by b = 2: eigenvectors (1, +-1)/sqrt(2)
    Truncation T;
    T.lo = 0;
    T.diag = {0.0, 0.0};
    T.off = {2.0};
    CHECK(eigenvector_weight(T, 2.0, 0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(eigenvector_weight(T, -2.0, 1) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("stable isolated eigenvalues of the half-lattices") {
    SUBCASE("free half-lattices carry none") {
        CHECK(half_lattice_atoms_right(LatticeSpec::free_lattice(), 0).empty());
        CHECK(half_lattice_atoms_left(LatticeSpec::free_lattice(), -1).empty());
    }
    SUBCASE("strengthened first bond gives the closed-form pair") {
        // decaying solution with one modified bond b: z^{-2} = b^2 - 1,
        // lambda = z + 1/z = +-(b^2)/sqrt(b^2-1) ... for b = 2: +-4/sqrt(3)
        const auto atoms = half_lattice_atoms_right(wt::lat_b0_2(), 0);
        REQUIRE(atoms.size() == 2);
        const double want = 4.0 / std::sqrt(3.0);
        CHECK(atoms.front() == doctest::Approx(-want).epsilon(1e-8));
        CHECK(atoms.back() == doctest::Approx(want).epsilon(1e-8));
        // the left half-lattice of the same operator is free
        CHECK(half_lattice_atoms_left(wt::lat_b0_2(), -1).empty());
    }
    SUBCASE("strong diagonal site pins one eigenvalue at v + 1/v") {
        const auto atoms = half_lattice_atoms_right(window_lattice({{0, 5.0}}, {}), 0);
        REQUIRE(atoms.size() == 1);
        CHECK(atoms[0] == doctest::Approx(5.2).epsilon(1e-8));
    }
}

TEST_CASE("stable point spectrum of the doubly-infinite operator") {
    const auto eigs = full_lattice_point_spectrum(wt::lat_b0_2());
    REQUIRE(eigs.size() == 2);
    CHECK(eigs.front() == doctest::Approx(-2.5).epsilon(1e-9));
    CHECK(eigs.back() == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(full_lattice_point_spectrum(LatticeSpec::free_lattice()).empty());
}
