#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace kpuf {

using Octets64 = std::array<std::uint8_t, 64>;

/// 512-bit short message digest (SMD). Bits are numbered MSB-first within
/// octets everywhere in this library.
struct Digest512 {
    Octets64 bytes{};
};

/// Long message digest: `rotations` (R) concatenated 512-bit segments,
/// segment 1 the original SMD and segment i+1 = SHA3-512 of segment i with
/// its first 16-bit word rotated left by one.
struct LongDigest {
    std::vector<std::uint8_t> bytes; // 64 * rotations octets
    unsigned rotations = 0;

    std::size_t bit_length() const { return bytes.size() * 8; }
};

/// One 17-bit LMD slice: 7-bit row address, 3-bit current index, 7-bit
/// whitening mask.
struct Block {
    std::uint8_t row_base = 0;    // 0..127
    std::uint8_t current_idx = 0; // 0..7
    std::uint8_t mask = 0;        // 0..127

    bool operator==(const Block&) const = default;
};

inline constexpr unsigned block_bits = 17;
inline constexpr unsigned max_rotations = 64;

/// SHA3-512(trn XOR password). Both inputs must be exactly 64 octets.
Digest512 derive_smd(std::span<const std::uint8_t> trn,
                     std::span<const std::uint8_t> password);

/// Rotate-and-rehash extension of the SMD to 512*R bits. R in [1, 64].
LongDigest extend_lmd(const Digest512& smd, unsigned rotations);

/// Slice the first n_blocks*17 bits of the LMD into blocks, MSB-first:
/// bits 0-6 row_base, 7-9 current_idx, 10-16 mask. Trailing bits discarded.
std::vector<Block> parse_blocks(const LongDigest& lmd, std::size_t n_blocks);

/// Largest number of 17-bit blocks an R-rotation LMD can supply.
constexpr std::size_t block_capacity(unsigned rotations) {
    return (512u * rotations) / block_bits;
}

/// 64 octets from the OS cryptographic entropy source.
Octets64 fresh_trn();

/// Read `nbits` (<=32) bits starting at `bit_offset`, MSB-first.
std::uint32_t get_bits(std::span<const std::uint8_t> bytes, std::size_t bit_offset,
                       unsigned nbits);

} // namespace kpuf
