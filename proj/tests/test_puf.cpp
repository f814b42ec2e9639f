#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "kpuf/errors.hpp"
#include "kpuf/puf.hpp"

using namespace kpuf;

namespace {

std::string temp_path(const char* name) {
    return std::string("/tmp/kpuf_test_") + name;
}

// Quantizer applied by hand, kept independent of the production code path.
std::uint16_t hand_quantize(double ohms) {
    const double u = (std::log(ohms) - std::log(1e3)) / (std::log(1e6) - std::log(1e3));
    double s = std::floor(65536.0 * u);
    if (s < 0)
        s = 0;
    if (s > 65535)
        s = 65535;
    return static_cast<std::uint16_t>(s);
}

std::vector<double> distinct_grid() {
    std::vector<double> r(puf_cells);
    for (int row = 0; row < puf_rows; ++row)
        for (int col = 0; col < puf_currents; ++col)
            r[static_cast<std::size_t>(row * 8 + col)] = 1000.0 + 13.0 * (8.0 * row + col);
    return r;
}

} // namespace

TEST_SUITE("puf") {

TEST_CASE("same seed yields bitwise-identical images") {
    const PufImage a = generate_puf(42);
    const PufImage b = generate_puf(42);
    CHECK(a == b);
    CHECK(generate_puf(43).resistances() != a.resistances());
}

TEST_CASE("generated resistances stay inside [1 kOhm, 1 MOhm]") {
    const PufImage img = generate_puf(42);
    for (double r : img.resistances()) {
        CHECK(r >= 1e3);
        CHECK(r <= 1e6);
    }
}

TEST_CASE("generation satisfies decodability across 1000 seeds") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        CHECK(validate_decodability(generate_puf(seed)).empty());
}

TEST_CASE("reads are deterministic and range-checked") {
    const PufImage img = generate_puf(7);
    CHECK(read_cell(img, 5, 3) == read_cell(img, 5, 3));
    CHECK_THROWS_AS(read_cell(img, 128, 0), DomainError);
    CHECK_THROWS_AS(read_cell(img, -1, 0), DomainError);
    CHECK_THROWS_AS(read_cell(img, 0, 8), DomainError);
    CHECK_THROWS_AS(read_cell(img, 0, -1), DomainError);
}

TEST_CASE("symbols equal the quantization formula applied by hand") {
    auto r = distinct_grid();
    r[0] = 1e3;        // lower edge -> 0
    r[1] = 1e6;        // upper edge -> clamped to 65535
    r[2] = 31622.7766; // ~10^4.5, the log midpoint
    const PufImage img = PufImage::from_resistances(r, 1, "fixture");
    for (int row = 0; row < puf_rows; ++row)
        for (int col = 0; col < puf_currents; ++col)
            CHECK(read_cell(img, row, col).value ==
                  hand_quantize(r[static_cast<std::size_t>(row * 8 + col)]));
    CHECK(read_cell(img, 0, 0).value == 0);
    CHECK(read_cell(img, 0, 1).value == 65535);
}

TEST_CASE("a forced duplicate is reported as exactly one violation") {
    auto r = distinct_grid();
    // rows 16 and 17 share decode group 1; give them equal resistance at
    // current 4
    r[16 * 8 + 4] = 5e4;
    r[17 * 8 + 4] = 5e4;
    const PufImage img = PufImage::from_resistances(r, 2, "forced");
    const auto violations = validate_decodability(img);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0] == DecodeGroupViolation{1, 4});
}

TEST_CASE("the distinct synthetic grid is decodable (verified by enumeration)") {
    const PufImage img = PufImage::from_resistances(distinct_grid(), 3, "grid");
    CHECK(validate_decodability(img).empty());
    // independent enumeration over every group x current
    for (int group = 0; group < 8; ++group)
        for (int col = 0; col < 8; ++col) {
            std::set<std::uint16_t> symbols;
            for (int low = 0; low < 16; ++low)
                symbols.insert(read_cell(img, group * 16 + low, col).value);
            CHECK(symbols.size() == 16);
        }
}

TEST_CASE("image construction validates shape and values") {
    CHECK_THROWS_AS(PufImage::from_resistances(std::vector<double>(1000, 1e4), 0, "x"),
                    DomainError);
    auto r = distinct_grid();
    r[100] = -5.0;
    CHECK_THROWS_AS(PufImage::from_resistances(r, 0, "x"), DomainError);
    r[100] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PufImage::from_resistances(r, 0, "x"), DomainError);
}

TEST_CASE("CSV round-trip preserves all 1024 values exactly") {
    const PufImage img = generate_puf(2024);
    const std::string path = temp_path("image.csv");
    save_puf(img, path);
    const PufImage back = load_puf(path);
    CHECK(back.resistances() == img.resistances());
    CHECK(back.seed() == img.seed());
    CHECK(back.id() == img.id());
    std::remove(path.c_str());
    std::remove((path + ".meta").c_str());
}

TEST_CASE("malformed image files raise parse errors") {
    const std::string path = temp_path("bad.csv");
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("1,2,3\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_puf(path), ParseError);
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        for (int i = 0; i < 128; ++i)
            std::fputs("1000,1001,1002,oops,1004,1005,1006,1007\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_puf(path), ParseError);
    CHECK_THROWS_AS(load_puf("/nonexistent/nope.csv"), IoError);
    std::remove(path.c_str());
}

} // TEST_SUITE
