#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "kpuf/errors.hpp"
#include "kpuf/experiment.hpp"
#include "kpuf/rng.hpp"
#include "kpuf/stats/special.hpp"

using namespace kpuf;

namespace {

std::vector<std::uint8_t> fixed_plaintext(std::size_t len) {
    std::vector<std::uint8_t> pt(len);
    for (std::size_t i = 0; i < len; ++i)
        pt[i] = static_cast<std::uint8_t>(33 + (i % 94));
    return pt;
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("per-run totals equal twice the message length") {
    const PufImage puf = generate_puf(50);
    const auto password = derive_block(1, "pw", 0);
    for (std::size_t len : {10u, 240u}) {
        const auto table = run_visit_experiment(fixed_plaintext(len), 10, password, puf, 99);
        CHECK(table.n_trials_per_run == static_cast<int>(2 * len));
        CHECK(table.records.size() == 10u * 1024u);
        for (int r = 1; r <= 10; ++r) {
            std::int64_t total = 0;
            for (int c = 0; c < puf_cells; ++c)
                total += table.records[static_cast<std::size_t>((r - 1) * 1024 + c)].visits;
            CHECK(total == static_cast<std::int64_t>(2 * len));
        }
    }
}

TEST_CASE("run counts of 10, 100 and 1000 are supported") {
    const PufImage puf = generate_puf(51);
    const auto password = derive_block(2, "pw", 0);
    const auto pt = fixed_plaintext(240);
    for (int runs : {10, 100, 1000}) {
        const auto table = run_visit_experiment(pt, runs, password, puf, 7);
        CHECK(table.n_runs == runs);
        CHECK(table.records.size() == static_cast<std::size_t>(runs) * 1024u);
    }
}

TEST_CASE("zero-count fraction matches the binomial oracle") {
    const PufImage puf = generate_puf(52);
    const auto table =
        run_visit_experiment(fixed_plaintext(240), 100, derive_block(3, "pw", 0), puf, 12345);
    REQUIRE(table.records.size() == 102400);
    std::int64_t zeros = 0;
    for (const auto& rec : table.records)
        if (rec.visits == 0)
            ++zeros;
    const double frac = static_cast<double>(zeros) / 102400.0;
    // oracle: Binomial(480, 1/1024) pmf at zero, frozen from exact evaluation
    const double p0 = stats::binomial_pmf(480, 1.0 / 1024.0, 0);
    CHECK(p0 == doctest::Approx(0.62564070210569065).epsilon(1e-12));
    CHECK(std::fabs(frac - p0) < 0.01);
}

TEST_CASE("histogram tallies every record and respects the binomial tail") {
    const PufImage puf = generate_puf(53);
    const auto table =
        run_visit_experiment(fixed_plaintext(240), 100, derive_block(4, "pw", 0), puf, 777);
    const auto hist = histogram(table);
    std::int64_t total = 0;
    for (std::int64_t c : hist.counts)
        total += c;
    CHECK(total == static_cast<std::int64_t>(table.records.size()));
    // max observed count <= 9 holds with probability > 0.99 under the oracle
    CHECK(hist.counts.size() <= 10);
}

TEST_CASE("histogram of an all-zero table") {
    VisitTable table;
    table.n_runs = 2;
    table.n_trials_per_run = 0;
    for (int r = 1; r <= 2; ++r)
        for (int c = 0; c < puf_cells; ++c)
            table.records.push_back({r, c, 0});
    const auto hist = histogram(table);
    REQUIRE(hist.counts.size() == 1);
    CHECK(hist.counts[0] == 2 * 1024);
}

TEST_CASE("same master seed reproduces the table; different seeds do not") {
    const PufImage puf = generate_puf(54);
    const auto password = derive_block(5, "pw", 0);
    const auto pt = fixed_plaintext(100);
    const auto a = run_visit_experiment(pt, 20, password, puf, 1);
    const auto b = run_visit_experiment(pt, 20, password, puf, 1);
    const auto c = run_visit_experiment(pt, 20, password, puf, 2);
    CHECK(a == b);
    CHECK(a.records != c.records);
}

TEST_CASE("serial and OpenMP execution produce identical tables") {
    const PufImage puf = generate_puf(55);
    const auto pt = fixed_plaintext(60);
    const auto password = derive_block(6, "pw", 0);
    const auto serial =
        run_visit_experiment(pt, 50, password, puf, 4, ExecPolicy::Serial);
    const auto parallel =
        run_visit_experiment(pt, 50, password, puf, 4, ExecPolicy::OpenMP);
    CHECK(serial == parallel);
}

TEST_CASE("CSV export uses the exact header and round-trips") {
    const PufImage puf = generate_puf(56);
    const auto table =
        run_visit_experiment(fixed_plaintext(30), 5, derive_block(7, "pw", 0), puf, 3);
    const std::string path = "/tmp/kpuf_test_visits.csv";
    export_visits(table, path);

    std::ifstream in(path);
    std::string line1, line2;
    std::getline(in, line1);
    std::getline(in, line2);
    CHECK(line1.starts_with("#"));
    CHECK(line2 == "run,cell,visits");
    in.close();

    CHECK(import_visits(path) == table);
    std::remove(path.c_str());
}

TEST_CASE("visit CSV parse errors carry line numbers") {
    const std::string path = "/tmp/kpuf_test_badvisits.csv";
    auto write = [&](const char* body) {
        std::ofstream out(path);
        out << body;
    };

    write("run,cell,visits\n1,1024,0\n");
    CHECK_THROWS_WITH_AS(import_visits(path), doctest::Contains(":2:"), ParseError);

    write("run,cell,visits\n1,abc,0\n");
    CHECK_THROWS_AS(import_visits(path), ParseError);

    write("1,0,0\n");
    CHECK_THROWS_AS(import_visits(path), ParseError); // header missing

    write("run,cell,visits\n1,0,1\n"); // incomplete grid
    CHECK_THROWS_AS(import_visits(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("entropy-driven runs differ between invocations") {
    const PufImage puf = generate_puf(57);
    const auto password = derive_block(8, "pw", 0);
    const auto pt = fixed_plaintext(40);
    const auto a = run_visit_experiment(pt, 3, password, puf, 0, ExecPolicy::Serial, true);
    const auto b = run_visit_experiment(pt, 3, password, puf, 0, ExecPolicy::Serial, true);
    CHECK(a.records != b.records);
}

} // TEST_SUITE
