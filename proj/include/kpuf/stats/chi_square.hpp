#pragma once

#include "kpuf/experiment.hpp"

namespace kpuf::stats {

/// Pearson goodness-of-fit of pooled per-cell counts against the uniform
/// expectation (total visits / 1024 per cell), dof = 1023.
struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    bool low_expected_warning = false; // expected count per cell < 5
};

ChiSquareResult chi_square_uniformity(const VisitTable& table);

} // namespace kpuf::stats
