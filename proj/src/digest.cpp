#include "kpuf/digest.hpp"
#include <algorithm>

#include <string>

#include "kpuf/errors.hpp"
#include "kpuf/rng.hpp"
#include "kpuf/sha3.hpp"

namespace kpuf {

Digest512 derive_smd(std::span<const std::uint8_t> trn,
                     std::span<const std::uint8_t> password) {
    if (trn.size() != 64)
        throw DomainError("trn must be exactly 64 octets, got " + std::to_string(trn.size()));
    if (password.size() != 64)
        throw DomainError("password must be exactly 64 octets, got " +
                          std::to_string(password.size()));

    Octets64 mixed;
    for (std::size_t i = 0; i < 64; ++i)
        mixed[i] = trn[i] ^ password[i];

    Digest512 smd;
    smd.bytes = Sha3_512::hash(mixed);
    return smd;
}

namespace {

// Rotate the first 16-bit word (MSB-first) left by one; the remaining 496
// bits are untouched.
Octets64 rotate_first_word(const Octets64& in) {
    Octets64 out = in;
    const std::uint16_t word =
        static_cast<std::uint16_t>((static_cast<std::uint16_t>(in[0]) << 8) | in[1]);
    const std::uint16_t rotated =
        static_cast<std::uint16_t>((word << 1) | (word >> 15));
    out[0] = static_cast<std::uint8_t>(rotated >> 8);
    out[1] = static_cast<std::uint8_t>(rotated & 0xff);
    return out;
}

} // namespace

LongDigest extend_lmd(const Digest512& smd, unsigned rotations) {
    if (rotations < 1 || rotations > max_rotations)
        throw DomainError("rotations must be in [1, 64], got " + std::to_string(rotations));

    LongDigest lmd;
    lmd.rotations = rotations;
    lmd.bytes.resize(static_cast<std::size_t>(64) * rotations);

    Octets64 segment = smd.bytes;
    std::copy(segment.begin(), segment.end(), lmd.bytes.begin());
    for (unsigned i = 1; i < rotations; ++i) {
        segment = Sha3_512::hash(rotate_first_word(segment));
        std::copy(segment.begin(), segment.end(),
                  lmd.bytes.begin() + static_cast<std::ptrdiff_t>(64) * i);
    }
    return lmd;
}

std::uint32_t get_bits(std::span<const std::uint8_t> bytes, std::size_t bit_offset,
                       unsigned nbits) {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < nbits; ++i) {
        const std::size_t bit = bit_offset + i;
        const std::uint8_t b = (bytes[bit / 8] >> (7 - bit % 8)) & 1u;
        v = (v << 1) | b;
    }
    return v;
}

std::vector<Block> parse_blocks(const LongDigest& lmd, std::size_t n_blocks) {
    if (n_blocks * block_bits > lmd.bit_length())
        throw CapacityError("LMD of " + std::to_string(lmd.bit_length()) +
                            " bits cannot supply " + std::to_string(n_blocks) + " blocks");

    std::vector<Block> blocks;
    blocks.reserve(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i) {
        const std::uint32_t raw = get_bits(lmd.bytes, i * block_bits, block_bits);
        Block b;
        b.row_base = static_cast<std::uint8_t>(raw >> 10);          // bits 0-6
        b.current_idx = static_cast<std::uint8_t>((raw >> 7) & 7u); // bits 7-9
        b.mask = static_cast<std::uint8_t>(raw & 0x7fu);            // bits 10-16
        blocks.push_back(b);
    }
    return blocks;
}

Octets64 fresh_trn() {
    Octets64 trn;
    os_entropy(trn);
    return trn;
}

} // namespace kpuf
