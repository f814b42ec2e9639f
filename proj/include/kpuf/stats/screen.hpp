#pragma once

#include <string>
#include <vector>

#include "kpuf/stats/glmm.hpp"

namespace kpuf::stats {

struct CellEffect {
    int cell = 0;
    double median = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool overlaps_zero = true;
};

/// Central posterior intervals of every cell effect at the given level
/// (0.80 or 0.95); cells whose interval excludes zero are flagged.
struct CellEffectScreen {
    double level = 0.95;
    std::vector<CellEffect> cells; // ascending cell index

    int flagged_count() const;
};

CellEffectScreen screen_cell_effects(const PosteriorFit& fit, double level);

/// CSV: cell,median,lo,hi,overlaps_zero
void export_screen(const CellEffectScreen& screen, const std::string& path);

} // namespace kpuf::stats
