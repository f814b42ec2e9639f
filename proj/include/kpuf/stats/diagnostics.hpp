#pragma once

#include <vector>

namespace kpuf::stats {

/// Split-chain potential scale reduction factor (shrink factor). Each chain
/// is halved; R-hat = sqrt(var_plus / W) over the resulting sequences.
/// Returns 1 for constant draws.
double split_rhat(const std::vector<std::vector<double>>& chains);

/// Effective sample size of the pooled draws via split chains and Geyer's
/// initial monotone positive sequence of autocorrelations.
double effective_sample_size(const std::vector<std::vector<double>>& chains);

} // namespace kpuf::stats
