#pragma once

#include <string>

#include "kpuf/stats/screen.hpp"

namespace kpuf {

/// Error-bar plot of the first `n_cells` cell effects: fixed 1000x600
/// viewBox, one marker and interval segment per cell, zero line. Output is
/// deterministic (no timestamps or external references).
void write_screen_svg(const stats::CellEffectScreen& screen, const std::string& path,
                      int n_cells = 50);

} // namespace kpuf
