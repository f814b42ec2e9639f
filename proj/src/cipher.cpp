#include "kpuf/cipher.hpp"

#include <cctype>
#include <fstream>

#include "kpuf/errors.hpp"
#include "kpuf/sha3.hpp"

namespace kpuf {

unsigned auto_rotations(std::size_t length) {
    for (unsigned r : {16u, 32u, 64u})
        if (length <= capacity(r))
            return r;
    throw CapacityError("plaintext of " + std::to_string(length) +
                        " characters exceeds the 963-character limit at 64 rotations");
}

namespace {

std::vector<Block> blocks_for(std::span<const std::uint8_t> password, const Octets64& trn,
                              unsigned rotations, std::size_t n_blocks) {
    const Digest512 smd = derive_smd(trn, password);
    const LongDigest lmd = extend_lmd(smd, rotations);
    return parse_blocks(lmd, n_blocks);
}

// Row actually visited for nibble d: d enters the low 4 bits of the block's
// row address, keeping rows marginally uniform.
inline int steer_row(const Block& b, std::uint8_t nibble) {
    return b.row_base ^ nibble;
}

} // namespace

Ciphertext encrypt(std::span<const std::uint8_t> plaintext,
                   std::span<const std::uint8_t> password, const Octets64& trn,
                   const PufImage& puf, unsigned rotations,
                   std::vector<CellVisit>* visits) {
    const std::size_t n_blocks = 2 * plaintext.size();
    if (plaintext.size() > capacity(rotations))
        throw CapacityError("plaintext of " + std::to_string(plaintext.size()) +
                            " characters exceeds capacity " +
                            std::to_string(capacity(rotations)) + " at " +
                            std::to_string(rotations) + " rotations");

    const auto blocks = blocks_for(password, trn, rotations, n_blocks);

    Ciphertext ct;
    ct.trn = trn;
    ct.rotations = rotations;
    ct.symbols.reserve(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i) {
        const std::uint8_t octet = plaintext[i / 2];
        const std::uint8_t nibble = (i % 2 == 0) ? (octet >> 4) : (octet & 0x0f);
        const Block& b = blocks[i];
        const int row = steer_row(b, nibble);
        const ResponseSymbol sym = read_cell(puf, row, b.current_idx);
        if (visits)
            visits->push_back({static_cast<std::uint8_t>(row), b.current_idx});
        ct.symbols.push_back(static_cast<std::uint16_t>(sym.value ^ b.mask));
    }
    return ct;
}

Ciphertext encrypt(std::span<const std::uint8_t> plaintext,
                   std::span<const std::uint8_t> password, const Octets64& trn,
                   const PufImage& puf) {
    return encrypt(plaintext, password, trn, puf, auto_rotations(plaintext.size()));
}

std::vector<std::uint8_t> decrypt(const Ciphertext& ciphertext,
                                  std::span<const std::uint8_t> password,
                                  const PufImage& puf) {
    if (ciphertext.symbols.size() % 2 != 0)
        throw DomainError("ciphertext must hold an even number of symbols");
    const std::size_t n_blocks = ciphertext.symbols.size();
    const std::size_t n_chars = n_blocks / 2;
    if (n_chars > capacity(ciphertext.rotations))
        throw CapacityError("symbol count inconsistent with " +
                            std::to_string(ciphertext.rotations) + " rotations");

    const auto blocks = blocks_for(password, ciphertext.trn, ciphertext.rotations, n_blocks);

    std::vector<std::uint8_t> plaintext(n_chars, 0);
    for (std::size_t i = 0; i < n_blocks; ++i) {
        const Block& b = blocks[i];
        const std::uint16_t reading =
            static_cast<std::uint16_t>(ciphertext.symbols[i] ^ b.mask);
        int match = -1;
        for (std::uint8_t d = 0; d < 16; ++d) {
            if (read_cell(puf, steer_row(b, d), b.current_idx).value == reading) {
                if (match >= 0)
                    throw DecodabilityError("symbol " + std::to_string(i) +
                                            " matches several nibbles; decode group " +
                                            std::to_string(b.row_base >> 4) + " at current " +
                                            std::to_string(b.current_idx) + " is degenerate");
                match = d;
            }
        }
        if (match < 0)
            throw TamperError("symbol " + std::to_string(i) +
                              " matches no cell; wrong image or corrupted ciphertext");
        const auto nibble = static_cast<std::uint8_t>(match);
        plaintext[i / 2] |= (i % 2 == 0) ? static_cast<std::uint8_t>(nibble << 4) : nibble;
    }
    return plaintext;
}

namespace {

void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

} // namespace

std::vector<std::uint8_t> serialize_ciphertext(const Ciphertext& ct) {
    std::vector<std::uint8_t> out;
    out.reserve(11 + 64 + 2 * ct.symbols.size());
    out.insert(out.end(), {'K', 'P', 'U', 'F'});
    out.push_back(0x01);
    put_u16le(out, static_cast<std::uint16_t>(ct.rotations));
    put_u32le(out, static_cast<std::uint32_t>(ct.symbols.size()));
    out.insert(out.end(), ct.trn.begin(), ct.trn.end());
    for (std::uint16_t s : ct.symbols)
        put_u16le(out, s);
    return out;
}

Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 75)
        throw ParseError("ciphertext truncated: " + std::to_string(bytes.size()) + " bytes");
    if (bytes[0] != 'K' || bytes[1] != 'P' || bytes[2] != 'U' || bytes[3] != 'F')
        throw ParseError("bad magic; not a KPUF ciphertext");
    if (bytes[4] != 0x01)
        throw ParseError("unsupported ciphertext version " + std::to_string(bytes[4]));

    Ciphertext ct;
    ct.rotations = static_cast<unsigned>(bytes[5]) | (static_cast<unsigned>(bytes[6]) << 8);
    std::uint32_t count = 0;
    for (int i = 3; i >= 0; --i)
        count = (count << 8) | bytes[7 + static_cast<std::size_t>(i)];
    if (bytes.size() != 75 + 2 * static_cast<std::size_t>(count))
        throw ParseError("ciphertext length " + std::to_string(bytes.size()) +
                         " does not match symbol count " + std::to_string(count));
    std::copy(bytes.begin() + 11, bytes.begin() + 75, ct.trn.begin());
    ct.symbols.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::size_t at = 75 + 2 * static_cast<std::size_t>(i);
        ct.symbols[i] = static_cast<std::uint16_t>(bytes[at] |
                                                   (static_cast<std::uint16_t>(bytes[at + 1]) << 8));
    }
    return ct;
}

void save_ciphertext(const Ciphertext& ct, const std::string& path, bool hex) {
    const auto bytes = serialize_ciphertext(ct);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    if (hex) {
        const std::string text = hex_encode(bytes);
        // 64 hex digits per line for readability
        for (std::size_t i = 0; i < text.size(); i += 64)
            out << text.substr(i, 64) << "\n";
    } else {
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
    if (!out)
        throw IoError("write failed for " + path);
}

Ciphertext load_ciphertext(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());

    if (bytes.size() >= 4 && bytes[0] == 'K' && bytes[1] == 'P' && bytes[2] == 'U' &&
        bytes[3] == 'F')
        return deserialize_ciphertext(bytes);

    // Hex-dump form: whitespace-tolerant pairs of hex digits.
    std::vector<std::uint8_t> decoded;
    decoded.reserve(bytes.size() / 2);
    int hi = -1;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const char c = static_cast<char>(bytes[i]);
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw ParseError(path + ": byte " + std::to_string(i) +
                             " is neither KPUF binary nor hex");
        if (hi < 0) {
            hi = v;
        } else {
            decoded.push_back(static_cast<std::uint8_t>((hi << 4) | v));
            hi = -1;
        }
    }
    if (hi >= 0)
        throw ParseError(path + ": odd number of hex digits");
    return deserialize_ciphertext(decoded);
}

} // namespace kpuf
