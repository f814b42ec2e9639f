#include "kpuf/sha3.hpp"

#include <bit>

namespace kpuf {

namespace {

constexpr std::array<std::uint64_t, 24> round_constants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr std::array<int, 24> rho_offsets = {
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14,
    27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44,
};

constexpr std::array<int, 24> pi_lanes = {
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4,
    15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1,
};

inline void xor_byte(std::array<std::uint64_t, 25>& st, std::size_t i, std::uint8_t b) {
    st[i / 8] ^= static_cast<std::uint64_t>(b) << (8 * (i % 8));
}

inline std::uint8_t get_byte(const std::array<std::uint64_t, 25>& st, std::size_t i) {
    return static_cast<std::uint8_t>(st[i / 8] >> (8 * (i % 8)));
}

} // namespace

void keccakf1600(std::array<std::uint64_t, 25>& st) {
    for (int round = 0; round < 24; ++round) {
        // theta
        std::uint64_t c[5];
        for (int x = 0; x < 5; ++x)
            c[x] = st[x] ^ st[x + 5] ^ st[x + 10] ^ st[x + 15] ^ st[x + 20];
        for (int x = 0; x < 5; ++x) {
            const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                st[y + x] ^= d;
        }
        // rho + pi
        std::uint64_t t = st[1];
        for (int i = 0; i < 24; ++i) {
            const int j = pi_lanes[i];
            const std::uint64_t saved = st[j];
            st[j] = std::rotl(t, rho_offsets[i]);
            t = saved;
        }
        // chi
        for (int y = 0; y < 25; y += 5) {
            std::uint64_t row[5];
            for (int x = 0; x < 5; ++x)
                row[x] = st[y + x];
            for (int x = 0; x < 5; ++x)
                st[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
        // iota
        st[0] ^= round_constants[round];
    }
}

void Sha3_512::reset() {
    state_.fill(0);
    offset_ = 0;
}

void Sha3_512::update(std::span<const std::uint8_t> data) {
    for (std::uint8_t b : data) {
        xor_byte(state_, offset_++, b);
        if (offset_ == rate_bytes) {
            keccakf1600(state_);
            offset_ = 0;
        }
    }
}

std::array<std::uint8_t, Sha3_512::digest_bytes> Sha3_512::finish() {
    xor_byte(state_, offset_, 0x06);
    xor_byte(state_, rate_bytes - 1, 0x80);
    keccakf1600(state_);

    std::array<std::uint8_t, digest_bytes> out;
    for (std::size_t i = 0; i < digest_bytes; ++i)
        out[i] = get_byte(state_, i);
    reset();
    return out;
}

std::string hex_encode(std::span<const std::uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

} // namespace kpuf
