#include "kpuf/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kpuf/errors.hpp"
#include "kpuf/rng.hpp"

namespace kpuf {

VisitTable run_visit_experiment(std::span<const std::uint8_t> plaintext, int n_runs,
                                std::span<const std::uint8_t> password,
                                const PufImage& puf, std::uint64_t master_seed,
                                ExecPolicy policy, bool os_entropy_trns) {
    if (n_runs < 1)
        throw DomainError("n_runs must be positive, got " + std::to_string(n_runs));
    const unsigned rotations = auto_rotations(plaintext.size());

    VisitTable table;
    table.n_runs = n_runs;
    table.n_trials_per_run = static_cast<int>(2 * plaintext.size());
    table.records.resize(static_cast<std::size_t>(n_runs) * puf_cells);

    // TRNs are drawn up front so the table is independent of scheduling.
    std::vector<Octets64> trns(static_cast<std::size_t>(n_runs));
    for (int r = 0; r < n_runs; ++r) {
        if (os_entropy_trns)
            trns[static_cast<std::size_t>(r)] = fresh_trn();
        else
            trns[static_cast<std::size_t>(r)] =
                derive_block(master_seed, "kpuf.experiment.trn", static_cast<std::uint64_t>(r));
    }

    parallel::parallel_for(static_cast<std::size_t>(n_runs), policy, [&](std::size_t r) {
        std::vector<CellVisit> visits;
        visits.reserve(2 * plaintext.size());
        encrypt(plaintext, password, trns[r], puf, rotations, &visits);

        std::array<int, puf_cells> counts{};
        for (const CellVisit& v : visits)
            ++counts[static_cast<std::size_t>(v.flat_index())];

        const std::size_t base = r * puf_cells;
        for (int cell = 0; cell < puf_cells; ++cell)
            table.records[base + static_cast<std::size_t>(cell)] = VisitRecord{
                static_cast<int>(r) + 1, cell, counts[static_cast<std::size_t>(cell)]};
    });
    return table;
}

VisitHistogram histogram(const VisitTable& table) {
    int max_count = 0;
    for (const auto& rec : table.records)
        max_count = std::max(max_count, rec.visits);

    VisitHistogram hist;
    hist.counts.assign(static_cast<std::size_t>(max_count) + 1, 0);
    for (const auto& rec : table.records)
        ++hist.counts[static_cast<std::size_t>(rec.visits)];
    return hist;
}

void export_visits(const VisitTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "# cell_index = 8*row + current; trials per run = "
        << table.n_trials_per_run << "\n";
    out << "run,cell,visits\n";
    for (const auto& rec : table.records)
        out << rec.run << ',' << rec.cell << ',' << rec.visits << '\n';
    if (!out)
        throw IoError("write failed for " + path);
}

namespace {

int parse_int_field(const std::string& field, const std::string& path, int lineno) {
    int v = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad integer '" + field + "'");
    return v;
}

} // namespace

VisitTable import_visits(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);

    VisitTable table;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            if (line != "run,cell,visits")
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": expected header 'run,cell,visits', got '" + line + "'");
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string f1, f2, f3;
        if (!std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') || !std::getline(ss, f3))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
        VisitRecord rec;
        rec.run = parse_int_field(f1, path, lineno);
        rec.cell = parse_int_field(f2, path, lineno);
        rec.visits = parse_int_field(f3, path, lineno);
        if (rec.run < 1)
            throw ParseError(path + ":" + std::to_string(lineno) + ": run index must be >= 1");
        if (rec.cell < 0 || rec.cell >= puf_cells)
            throw ParseError(path + ":" + std::to_string(lineno) + ": cell index " +
                             std::to_string(rec.cell) + " outside 0..1023");
        if (rec.visits < 0)
            throw ParseError(path + ":" + std::to_string(lineno) + ": negative visit count");
        table.records.push_back(rec);
    }
    if (!header_seen)
        throw ParseError(path + ": missing 'run,cell,visits' header");

    // Canonicalize to run-major, cell-ascending grid order and validate shape.
    std::sort(table.records.begin(), table.records.end(),
              [](const VisitRecord& a, const VisitRecord& b) {
                  return a.run != b.run ? a.run < b.run : a.cell < b.cell;
              });
    if (table.records.empty())
        throw ParseError(path + ": no records");
    table.n_runs = table.records.back().run;
    if (table.records.size() !=
        static_cast<std::size_t>(table.n_runs) * static_cast<std::size_t>(puf_cells))
        throw ParseError(path + ": expected " + std::to_string(table.n_runs) +
                         "*1024 records, got " + std::to_string(table.records.size()));
    std::int64_t first_total = -1;
    for (int r = 0; r < table.n_runs; ++r) {
        std::int64_t total = 0;
        for (int cell = 0; cell < puf_cells; ++cell) {
            const auto& rec =
                table.records[static_cast<std::size_t>(r) * puf_cells + static_cast<std::size_t>(cell)];
            if (rec.run != r + 1 || rec.cell != cell)
                throw ParseError(path + ": records do not form a complete run x cell grid");
            total += rec.visits;
        }
        if (first_total < 0)
            first_total = total;
        else if (total != first_total)
            throw ParseError(path + ": run " + std::to_string(r + 1) + " totals " +
                             std::to_string(total) + " visits but run 1 totals " +
                             std::to_string(first_total));
    }
    table.n_trials_per_run = static_cast<int>(first_total);
    return table;
}

void export_histogram(const VisitHistogram& hist, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "visits,frequency\n";
    for (std::size_t k = 0; k < hist.counts.size(); ++k)
        out << k << ',' << hist.counts[k] << '\n';
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace kpuf
