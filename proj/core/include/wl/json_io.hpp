#pragma once

#include "wl/lattice.hpp"
#include "wl/spectral_data.hpp"

#include <string>

namespace wl {

// JSON shape for a lattice:
//   {"window_lo": -2, "window_hi": 1, "a": [...], "b": [...],
//    "left_tail": {"a": 0, "b": 1}, "right_tail": {"a": 0, "b": 1}}
// Tails are optional and default to the free ones. Parse or validation
// problems throw invalid_input.
LatticeSpec lattice_from_json_text(const std::string& text);
LatticeSpec lattice_from_json_file(const std::string& path);
std::string lattice_to_json_text(const LatticeSpec& J);
void save_lattice_json(const LatticeSpec& J, const std::string& path);

// Reduced spectral data artifact ("schema": 1). Stores everything the
// reconstruction solver needs, so a saved artifact can be inverted without
// recomputing the boundary analysis.
std::string spectral_data_to_json_text(const SpectralData& D);
void save_spectral_data_json(const SpectralData& D, const std::string& path);
SpectralData spectral_data_from_json_text(const std::string& text);
SpectralData spectral_data_from_json_file(const std::string& path);

} // namespace wl
