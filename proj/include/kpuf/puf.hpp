#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kpuf {

inline constexpr int puf_rows = 128;
inline constexpr int puf_currents = 8;
inline constexpr int puf_cells = puf_rows * puf_currents; // 1024

// Resistance bounds of the synthetic cell population (ohms) and the
// quantizer derived from them.
inline constexpr double puf_r_min = 1.0e3;
inline constexpr double puf_r_max = 1.0e6;

/// Quantized 16-bit PUF reading.
struct ResponseSymbol {
    std::uint16_t value = 0;

    bool operator==(const ResponseSymbol&) const = default;
};

/// symbol = floor(65536 * (log R - log Rmin) / (log Rmax - log Rmin)),
/// clamped to [0, 65535].
std::uint16_t quantize_resistance(double ohms);

/// The enrolled 128x8 resistance image; the shared secret standing in for
/// the physical array. Immutable after construction, safe for concurrent
/// reads.
class PufImage {
public:
    /// Build from an explicit resistance grid (row-major 128x8). Validates
    /// shape, positivity and finiteness; decodability is checked separately.
    static PufImage from_resistances(std::vector<double> resistances,
                                     std::uint64_t seed, std::string id);

    double resistance(int row, int current) const;
    std::uint64_t seed() const noexcept { return seed_; }
    const std::string& id() const noexcept { return id_; }
    const std::vector<double>& resistances() const noexcept { return resistances_; }

    bool operator==(const PufImage& other) const {
        return resistances_ == other.resistances_ && seed_ == other.seed_ &&
               id_ == other.id_;
    }

private:
    PufImage() = default;

    std::vector<double> resistances_; // row-major, 1024 values
    std::array<std::uint16_t, puf_cells> symbols_{};
    std::uint64_t seed_ = 0;
    std::string id_;

    friend ResponseSymbol read_cell(const PufImage&, int, int);
    friend PufImage generate_puf(std::uint64_t);
};

/// Log-uniform enrollment on [1 kOhm, 1 MOhm], resampling colliding cells
/// until every decode group is collision-free. Same seed, same image.
PufImage generate_puf(std::uint64_t seed);

/// Deterministic quantized read. Throws DomainError outside row 0..127 /
/// current 0..7.
ResponseSymbol read_cell(const PufImage& image, int row, int current);

/// A decode group is the 16 rows sharing the upper 3 row-address bits at a
/// fixed current column; inversion needs its 16 symbols pairwise distinct.
struct DecodeGroupViolation {
    int group = 0;   // 0..7, upper 3 bits of the row address
    int current = 0; // 0..7

    bool operator==(const DecodeGroupViolation&) const = default;
};

/// Every decode group containing a duplicated symbol; empty means decodable.
std::vector<DecodeGroupViolation> validate_decodability(const PufImage& image);

/// CSV image file: 128 lines x 8 comma-separated ohm values, plus a
/// `<path>.meta` sidecar carrying seed and id as key=value lines.
/// Round-trips are value-exact.
void save_puf(const PufImage& image, const std::string& path);
PufImage load_puf(const std::string& path);

} // namespace kpuf
