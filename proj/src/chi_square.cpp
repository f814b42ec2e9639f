#include "kpuf/stats/chi_square.hpp"

#include "kpuf/errors.hpp"
#include "kpuf/stats/special.hpp"

namespace kpuf::stats {

ChiSquareResult chi_square_uniformity(const VisitTable& table) {
    if (table.records.empty())
        throw DomainError("empty visit table");

    std::array<std::int64_t, puf_cells> pooled{};
    std::int64_t total = 0;
    for (const auto& rec : table.records) {
        pooled[static_cast<std::size_t>(rec.cell)] += rec.visits;
        total += rec.visits;
    }
    if (total == 0)
        throw DomainError("visit table holds no visits; uniformity test undefined");

    const double expected = static_cast<double>(total) / puf_cells;
    double stat = 0.0;
    for (std::int64_t c : pooled) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }

    ChiSquareResult res;
    res.statistic = stat;
    res.dof = puf_cells - 1;
    res.p_value = chi_square_sf(stat, static_cast<double>(res.dof));
    res.low_expected_warning = expected < 5.0;
    return res;
}

} // namespace kpuf::stats
