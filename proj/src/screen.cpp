#include "kpuf/stats/screen.hpp"

#include <cmath>
#include <fstream>

#include "kpuf/errors.hpp"

namespace kpuf::stats {

int CellEffectScreen::flagged_count() const {
    int n = 0;
    for (const auto& c : cells)
        if (!c.overlaps_zero)
            ++n;
    return n;
}

CellEffectScreen screen_cell_effects(const PosteriorFit& fit, double level) {
    if (!fit.has_cell_effect())
        throw DomainError("fit has no cell random effects to screen");
    if (std::fabs(level - 0.95) > 1e-9 && std::fabs(level - 0.80) > 1e-9)
        throw DomainError("screening level must be 0.80 or 0.95");

    const double tail = (1.0 - level) / 2.0;
    CellEffectScreen screen;
    screen.level = level;
    screen.cells.resize(static_cast<std::size_t>(fit.n_cells));

    std::vector<double> draws(static_cast<std::size_t>(fit.n_draws));
    for (int c = 0; c < fit.n_cells; ++c) {
        for (int d = 0; d < fit.n_draws; ++d)
            draws[static_cast<std::size_t>(d)] =
                fit.eta_cell[static_cast<std::size_t>(d) * fit.n_cells + static_cast<std::size_t>(c)];
        CellEffect& e = screen.cells[static_cast<std::size_t>(c)];
        e.cell = c;
        e.median = quantile(draws, 0.5);
        e.lo = quantile(draws, tail);
        e.hi = quantile(draws, 1.0 - tail);
        e.overlaps_zero = e.lo <= 0.0 && 0.0 <= e.hi;
    }
    return screen;
}

void export_screen(const CellEffectScreen& screen, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "cell,median,lo,hi,overlaps_zero\n";
    char buf[160];
    for (const auto& c : screen.cells) {
        std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g,%.9g,%d\n", c.cell, c.median, c.lo,
                      c.hi, c.overlaps_zero ? 1 : 0);
        out << buf;
    }
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace kpuf::stats
