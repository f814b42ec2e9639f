#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace kpuf {

/// SHA-3-512 per FIPS 202 (Keccak-f[1600], rate 576, domain suffix 0x06).
/// Known-answer vectors live in the test suite and the `selftest` subcommand.
class Sha3_512 {
public:
    static constexpr std::size_t digest_bytes = 64;
    static constexpr std::size_t rate_bytes = 72; // 200 - 2*64

    Sha3_512() { reset(); }

    void reset();
    void update(std::span<const std::uint8_t> data);
    std::array<std::uint8_t, digest_bytes> finish();

    static std::array<std::uint8_t, digest_bytes>
    hash(std::span<const std::uint8_t> data) {
        Sha3_512 h;
        h.update(data);
        return h.finish();
    }

private:
    std::array<std::uint64_t, 25> state_{};
    std::size_t offset_ = 0; // bytes absorbed into the current block
};

// Keccak-f[1600] permutation on the 5x5 lane state, lanes little-endian.
void keccakf1600(std::array<std::uint64_t, 25>& state);

std::string hex_encode(std::span<const std::uint8_t> data);

} // namespace kpuf
