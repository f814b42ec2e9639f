#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace kpuf {

/// Fill a buffer from the OS cryptographic entropy source (getrandom(2),
/// falling back to /dev/urandom). Throws EnvironmentError if unavailable.
void os_entropy(std::span<std::uint8_t> out);

/// Deterministic sub-stream derivation: every seeded component draws its
/// randomness from SHA3-512(domain || LE64(seed) || LE64(counter)) so that
/// one --seed reproduces the whole pipeline and streams never collide across
/// domains. derive_block returns the full 64-octet digest (used directly as
/// a deterministic TRN); derive_u64 returns its first 8 octets.
std::array<std::uint8_t, 64> derive_block(std::uint64_t seed,
                                          std::string_view domain,
                                          std::uint64_t counter);
std::uint64_t derive_u64(std::uint64_t seed, std::string_view domain,
                         std::uint64_t counter);

/// Seeded engine for simulation randomness (not key material).
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::string_view domain,
                                     std::uint64_t counter = 0) {
    return std::mt19937_64(derive_u64(seed, domain, counter));
}

} // namespace kpuf
