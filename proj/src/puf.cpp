#include "kpuf/puf.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "kpuf/errors.hpp"
#include "kpuf/rng.hpp"

namespace kpuf {

std::uint16_t quantize_resistance(double ohms) {
    const double span = std::log(puf_r_max) - std::log(puf_r_min);
    const double u = (std::log(ohms) - std::log(puf_r_min)) / span;
    const double scaled = std::floor(65536.0 * u);
    if (scaled <= 0.0)
        return 0;
    if (scaled >= 65535.0)
        return 65535;
    return static_cast<std::uint16_t>(scaled);
}

namespace {

void validate_grid(const std::vector<double>& r) {
    if (r.size() != static_cast<std::size_t>(puf_cells))
        throw DomainError("PUF image must hold exactly 128x8 resistances, got " +
                          std::to_string(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!std::isfinite(r[i]) || r[i] <= 0.0)
            throw DomainError("resistance at flat index " + std::to_string(i) +
                              " must be positive and finite");
}

std::array<std::uint16_t, puf_cells> quantize_grid(const std::vector<double>& r) {
    std::array<std::uint16_t, puf_cells> symbols{};
    for (int i = 0; i < puf_cells; ++i)
        symbols[static_cast<std::size_t>(i)] = quantize_resistance(r[static_cast<std::size_t>(i)]);
    return symbols;
}

} // namespace

PufImage PufImage::from_resistances(std::vector<double> resistances, std::uint64_t seed,
                                    std::string id) {
    validate_grid(resistances);
    PufImage img;
    img.resistances_ = std::move(resistances);
    img.symbols_ = quantize_grid(img.resistances_);
    img.seed_ = seed;
    img.id_ = std::move(id);
    return img;
}

double PufImage::resistance(int row, int current) const {
    if (row < 0 || row >= puf_rows || current < 0 || current >= puf_currents)
        throw DomainError("cell (" + std::to_string(row) + "," + std::to_string(current) +
                          ") outside the 128x8 grid");
    return resistances_[static_cast<std::size_t>(row * puf_currents + current)];
}

ResponseSymbol read_cell(const PufImage& image, int row, int current) {
    if (row < 0 || row >= puf_rows)
        throw DomainError("row must be in [0,127], got " + std::to_string(row));
    if (current < 0 || current >= puf_currents)
        throw DomainError("current must be in [0,7], got " + std::to_string(current));
    return ResponseSymbol{image.symbols_[static_cast<std::size_t>(row * puf_currents + current)]};
}

std::vector<DecodeGroupViolation> validate_decodability(const PufImage& image) {
    std::vector<DecodeGroupViolation> violations;
    for (int group = 0; group < 8; ++group) {
        for (int current = 0; current < puf_currents; ++current) {
            std::set<std::uint16_t> seen;
            bool duplicated = false;
            for (int low = 0; low < 16; ++low) {
                const int row = group * 16 + low;
                if (!seen.insert(read_cell(image, row, current).value).second)
                    duplicated = true;
            }
            if (duplicated)
                violations.push_back({group, current});
        }
    }
    return violations;
}

PufImage generate_puf(std::uint64_t seed) {
    auto engine = seeded_engine(seed, "kpuf.puf.enroll");
    std::uniform_real_distribution<double> log_r(std::log(puf_r_min), std::log(puf_r_max));

    std::vector<double> r(puf_cells);
    for (auto& v : r)
        v = std::exp(log_r(engine));

    PufImage img;
    img.resistances_ = std::move(r);
    img.symbols_ = quantize_grid(img.resistances_);
    img.seed_ = seed;
    char label[32];
    std::snprintf(label, sizeof(label), "puf-%016llx",
                  static_cast<unsigned long long>(seed));
    img.id_ = label;

    // Resample only the cells of colliding decode groups until clean.
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const auto violations = validate_decodability(img);
        if (violations.empty())
            return img;
        for (const auto& v : violations) {
            for (int low = 0; low < 16; ++low) {
                const std::size_t idx =
                    static_cast<std::size_t>((v.group * 16 + low) * puf_currents + v.current);
                img.resistances_[idx] = std::exp(log_r(engine));
                img.symbols_[idx] = quantize_resistance(img.resistances_[idx]);
            }
        }
    }
    throw DecodabilityError("decode groups still collide after 1000 resampling attempts");
}

void save_puf(const PufImage& image, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    char buf[32];
    for (int row = 0; row < puf_rows; ++row) {
        for (int current = 0; current < puf_currents; ++current) {
            std::snprintf(buf, sizeof(buf), "%.17g", image.resistance(row, current));
            out << buf << (current + 1 < puf_currents ? "," : "\n");
        }
    }
    if (!out)
        throw IoError("write failed for " + path);
    out.close();

    std::ofstream meta(path + ".meta");
    if (!meta)
        throw IoError("cannot open " + path + ".meta for writing");
    meta << "seed=" << image.seed() << "\n";
    meta << "id=" << image.id() << "\n";
}

PufImage load_puf(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);

    std::vector<double> r;
    r.reserve(puf_cells);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() && r.size() == static_cast<std::size_t>(puf_cells))
            break; // tolerate one trailing blank line
        std::stringstream ss(line);
        std::string field;
        int fields = 0;
        while (std::getline(ss, field, ',')) {
            double v = 0.0;
            const char* begin = field.data();
            const char* end = begin + field.size();
            const auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc() || ptr != end)
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": bad resistance value '" + field + "'");
            r.push_back(v);
            ++fields;
        }
        if (fields != puf_currents)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 8 fields, got " +
                             std::to_string(fields));
    }
    if (r.size() != static_cast<std::size_t>(puf_cells))
        throw ParseError(path + ": expected 128 rows, got " +
                         std::to_string(r.size() / puf_currents));

    std::uint64_t seed = 0;
    std::string id;
    std::ifstream meta(path + ".meta");
    if (meta) {
        while (std::getline(meta, line)) {
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                continue;
            const std::string key = line.substr(0, eq);
            const std::string value = line.substr(eq + 1);
            if (key == "seed")
                seed = std::stoull(value);
            else if (key == "id")
                id = value;
        }
    }
    return PufImage::from_resistances(std::move(r), seed, std::move(id));
}

} // namespace kpuf
