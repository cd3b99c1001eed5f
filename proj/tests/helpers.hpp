#pragma once

// Shared builders for the test suite: the small coefficient windows every
// suite exercises, the synthetic measure-backed fields, and the direct
// pipeline (field -> partition -> splitting -> reduced data) bundled so a
// test can grab exactly the stage it needs.  Expensive chains are cached
// behind function-local statics; tests must treat them as read-only.

#include "wl/factorization.hpp"
#include "wl/herglotz.hpp"
#include "wl/inverse.hpp"
#include "wl/lattice.hpp"
#include "wl/partition.hpp"
#include "wl/spectral_data.hpp"
#include "wl/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace wt {

using namespace wl;

// Lattice that is free except for the listed entries.
inline LatticeSpec window_lattice(const std::map<long, double>& a_entries,
                                  const std::map<long, double>& b_entries) {
    long lo = -2, hi = 1;
    for (const auto& [k, v] : a_entries) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    for (const auto& [k, v] : b_entries) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    LatticeSpec J;
    J.window_lo = static_cast<int>(lo);
    J.window_hi = static_cast<int>(hi);
    J.a_window.assign(static_cast<size_t>(hi - lo + 1), 0.0);
    J.b_window.assign(static_cast<size_t>(hi - lo + 1), 1.0);
    for (const auto& [k, v] : a_entries) J.a_window[static_cast<size_t>(k - lo)] = v;
    for (const auto& [k, v] : b_entries) J.b_window[static_cast<size_t>(k - lo)] = v;
    J.validate();
    return J;
}

inline LatticeSpec lat_free() { return LatticeSpec::free_lattice(); }
inline LatticeSpec lat_a0() { return window_lattice({{0, 0.3}}, {}); }
inline LatticeSpec lat_am1() { return window_lattice({{-1, 0.4}}, {}); }
inline LatticeSpec lat_b0_15() { return window_lattice({}, {{0, 1.5}}); }
inline LatticeSpec lat_b0_2() { return window_lattice({}, {{0, 2.0}}); }

// Synthetic field with multiplicity-two continuous spectrum beyond the band.
inline SyntheticWeylField synth_two_sided() {
    StieltjesMeasure rR, rL;
    rR.bumps.push_back({-2.0, 2.0, 0.7});
    rR.bumps.push_back({2.5, 3.5, 0.3});
    rL.bumps.push_back({-2.0, 2.0, 0.8});
    rL.bumps.push_back({2.5, 3.5, 0.4});
    return SyntheticWeylField(rR, rL, 0.0, 1.0);
}

// Synthetic field with a pole shared by both boundary measures.
inline SyntheticWeylField synth_common_atom() {
    StieltjesMeasure rR, rL;
    rR.bumps.push_back({-2.0, 2.0, 0.9});
    rR.atoms.push_back({3.0, 0.1});
    rL.bumps.push_back({-2.0, 2.0, 1.0});
    rL.atoms.push_back({3.0, 0.2});
    return SyntheticWeylField(rR, rL, 0.0, 1.0);
}

// Full direct pipeline for a lattice instance.
struct Chain {
    LatticeSpec J;
    std::unique_ptr<LatticeWeylField> W;
    Partition P;
    std::unique_ptr<Factorization> F;
    SpectralData D;

    explicit Chain(const LatticeSpec& spec, int grid_circle = 512, int circle_modes = 1024)
        : J(spec) {
        W = std::make_unique<LatticeWeylField>(J);
        P = detect_partition(*W);
        F = std::make_unique<Factorization>(*W, P, circle_modes, 96);
        DataOptions opts;
        opts.grid_circle = grid_circle;
        opts.lattice = &J;
        D = build_spectral_data(*W, P, *F, opts);
    }
};

// Full direct pipeline for a synthetic field.
struct SynthChain {
    SyntheticWeylField W;
    Partition P;
    std::unique_ptr<Factorization> F;
    SpectralData D;

    explicit SynthChain(SyntheticWeylField field, int grid_circle = 256) : W(std::move(field)) {
        P = declared_partition(W);
        F = std::make_unique<Factorization>(W, P, 1024, 96);
        DataOptions opts;
        opts.grid_circle = grid_circle;
        D = build_spectral_data(W, P, *F, opts);
    }
};

inline const Chain& chain_free() {
    static const Chain c(lat_free());
    return c;
}
inline const Chain& chain_a0() {
    static const Chain c(lat_a0());
    return c;
}
inline const Chain& chain_am1() {
    static const Chain c(lat_am1());
    return c;
}
inline const Chain& chain_b0_15() {
    static const Chain c(lat_b0_15());
    return c;
}
inline const Chain& chain_b0_2() {
    static const Chain c(lat_b0_2());
    return c;
}
inline const SynthChain& chain_two_sided() {
    static const SynthChain c(synth_two_sided());
    return c;
}
inline const SynthChain& chain_common_atom() {
    static const SynthChain c(synth_common_atom());
    return c;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace wt
