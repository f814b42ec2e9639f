#include "kpuf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "kpuf/errors.hpp"

namespace kpuf {

void write_screen_svg(const stats::CellEffectScreen& screen, const std::string& path,
                      int n_cells) {
    if (screen.cells.empty())
        throw DomainError("screen holds no cells");
    n_cells = std::clamp<int>(n_cells, 1, static_cast<int>(screen.cells.size()));

    const double width = 1000.0, height = 600.0;
    const double ml = 70.0, mr = 20.0, mt = 30.0, mb = 50.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < n_cells; ++i) {
        lo = std::min(lo, screen.cells[static_cast<std::size_t>(i)].lo);
        hi = std::max(hi, screen.cells[static_cast<std::size_t>(i)].hi);
    }
    const double pad = 0.1 * (hi - lo + 1e-12);
    lo -= pad;
    hi += pad;

    const auto x_of = [&](int i) {
        return ml + plot_w * (static_cast<double>(i) + 0.5) / static_cast<double>(n_cells);
    };
    const auto y_of = [&](double v) { return mt + plot_h * (hi - v) / (hi - lo); };

    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 600\">\n";
    out << "<rect width=\"1000\" height=\"600\" fill=\"white\"/>\n";
    char buf[256];
    const int pct = static_cast<int>(std::lround(screen.level * 100));
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.0f\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
                  "cell effects, %d%% central intervals</text>\n",
                  ml, pct);
    out << buf;

    // zero line
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.2f\" x2=\"%.1f\" y2=\"%.2f\" "
                  "stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n",
                  ml, y_of(0.0), width - mr, y_of(0.0));
    out << buf;

    for (int i = 0; i < n_cells; ++i) {
        const auto& c = screen.cells[static_cast<std::size_t>(i)];
        const double x = x_of(i);
        const char* color = c.overlaps_zero ? "#3366aa" : "#cc3333";
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\"/>\n",
                      x, y_of(c.lo), x, y_of(c.hi), color);
        out << buf;
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n", x,
                      y_of(c.median), color);
        out << buf;
    }

    // y-axis ticks at lo, 0, hi
    for (double v : {lo + pad, 0.0, hi - pad}) {
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"5\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\">"
                      "%.4g</text>\n",
                      y_of(v) + 4.0, v);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.0f\" y=\"%.0f\" font-family=\"sans-serif\" font-size=\"12\">"
                  "cell index (first %d cells)</text>\n",
                  ml, height - 15.0, n_cells);
    out << buf;
    out << "</svg>\n";
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace kpuf
