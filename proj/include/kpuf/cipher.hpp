#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpuf/digest.hpp"
#include "kpuf/puf.hpp"

namespace kpuf {

/// The ciphertext is the handshake TRN plus the ordered whitened PUF
/// readings; no key material appears anywhere.
struct Ciphertext {
    Octets64 trn{};
    unsigned rotations = 0;
    std::vector<std::uint16_t> symbols; // two per plaintext octet

    bool operator==(const Ciphertext&) const = default;
};

/// One recorded cell visit (used by the experiment module).
struct CellVisit {
    std::uint8_t row = 0;
    std::uint8_t current = 0;

    int flat_index() const { return row * puf_currents + current; }
};

/// Maximum plaintext characters an R-rotation digest can carry:
/// floor(floor(512R/17)/2). R=16 -> 240, R=32 -> 481, R=64 -> 963.
constexpr std::size_t capacity(unsigned rotations) {
    return block_capacity(rotations) / 2;
}

/// Smallest of {16, 32, 64} whose capacity fits `length`; CapacityError if
/// even 64 rotations cannot.
unsigned auto_rotations(std::size_t length);

/// Encrypt: each plaintext nibble (high first) XORs into the low 4 bits of
/// its block's row address; the read symbol is whitened with the block's
/// mask. If `visits` is non-null every cell read is appended to it in order.
Ciphertext encrypt(std::span<const std::uint8_t> plaintext,
                   std::span<const std::uint8_t> password, const Octets64& trn,
                   const PufImage& puf, unsigned rotations,
                   std::vector<CellVisit>* visits = nullptr);

/// Convenience overload with automatic rotation selection.
Ciphertext encrypt(std::span<const std::uint8_t> plaintext,
                   std::span<const std::uint8_t> password, const Octets64& trn,
                   const PufImage& puf);

/// Invert readings against the matched enrollment image. Throws TamperError
/// when a symbol matches no nibble candidate and DecodabilityError when it
/// matches several (impossible on a validated image).
std::vector<std::uint8_t> decrypt(const Ciphertext& ciphertext,
                                  std::span<const std::uint8_t> password,
                                  const PufImage& puf);

/// Binary ciphertext file: "KPUF" magic, version 0x01, R as u16 LE, symbol
/// count as u32 LE, 64 raw TRN octets, then u16 LE symbols.
std::vector<std::uint8_t> serialize_ciphertext(const Ciphertext& ct);
Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes);

void save_ciphertext(const Ciphertext& ct, const std::string& path, bool hex = false);
/// Accepts both the binary form and its hex dump.
Ciphertext load_ciphertext(const std::string& path);

} // namespace kpuf
