#include "kpuf/rng.hpp"

#include <cerrno>
#include <cstdio>
#include <vector>

#include <sys/random.h>

#include "kpuf/errors.hpp"
#include "kpuf/sha3.hpp"

namespace kpuf {

void os_entropy(std::span<std::uint8_t> out) {
    std::size_t filled = 0;
    while (filled < out.size()) {
        const ssize_t got = ::getrandom(out.data() + filled, out.size() - filled, 0);
        if (got > 0) {
            filled += static_cast<std::size_t>(got);
            continue;
        }
        if (got < 0 && errno == EINTR)
            continue;
        break; // fall back to /dev/urandom
    }
    if (filled == out.size())
        return;

    std::FILE* f = std::fopen("/dev/urandom", "rb");
    if (!f)
        throw EnvironmentError("no entropy source available (getrandom and /dev/urandom failed)");
    const std::size_t got = std::fread(out.data() + filled, 1, out.size() - filled, f);
    std::fclose(f);
    if (filled + got != out.size())
        throw EnvironmentError("short read from /dev/urandom");
}

namespace {

void append_le64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

} // namespace

std::array<std::uint8_t, 64> derive_block(std::uint64_t seed, std::string_view domain,
                                          std::uint64_t counter) {
    std::vector<std::uint8_t> msg(domain.begin(), domain.end());
    append_le64(msg, seed);
    append_le64(msg, counter);
    return Sha3_512::hash(msg);
}

std::uint64_t derive_u64(std::uint64_t seed, std::string_view domain,
                         std::uint64_t counter) {
    const auto block = derive_block(seed, domain, counter);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | block[static_cast<std::size_t>(i)];
    return v;
}

} // namespace kpuf
