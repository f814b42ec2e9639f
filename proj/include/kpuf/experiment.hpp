#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpuf/cipher.hpp"
#include "kpuf/parallel.hpp"
#include "kpuf/puf.hpp"

namespace kpuf {

/// Long-format visit counts: one record per (run, cell), zero counts
/// materialized. cell_index = 8*row + current.
struct VisitRecord {
    int run = 1;     // 1-based
    int cell = 0;    // 0..1023
    int visits = 0;

    bool operator==(const VisitRecord&) const = default;
};

struct VisitTable {
    std::vector<VisitRecord> records; // run-major, cell-ascending
    int n_runs = 0;
    int n_trials_per_run = 0; // the binomial n: 2 * plaintext length

    bool operator==(const VisitTable&) const = default;
};

/// counts[k] = number of (run, cell) records with exactly k visits.
struct VisitHistogram {
    std::vector<std::int64_t> counts;
};

/// Encrypt the same plaintext n_runs times with per-run TRNs derived from
/// master_seed (counter construction), counting every cell visit. Runs are
/// independent and may execute in parallel; the merge is ordered by run.
VisitTable run_visit_experiment(std::span<const std::uint8_t> plaintext, int n_runs,
                                std::span<const std::uint8_t> password,
                                const PufImage& puf, std::uint64_t master_seed,
                                ExecPolicy policy = ExecPolicy::OpenMP,
                                bool os_entropy_trns = false);

VisitHistogram histogram(const VisitTable& table);

/// CSV round-trip: `#` comment lines, byte-exact header `run,cell,visits`,
/// then one record per line.
void export_visits(const VisitTable& table, const std::string& path);
VisitTable import_visits(const std::string& path);

void export_histogram(const VisitHistogram& hist, const std::string& path);

} // namespace kpuf
