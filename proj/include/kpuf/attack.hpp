#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kpuf {

/// Ranked letter proportions of a language; must sum to 1 within 1e-9.
class LanguageProfile {
public:
    static LanguageProfile english(); // embedded Lewand frequency table
    static LanguageProfile from_csv(const std::string& path); // letter,frequency

    explicit LanguageProfile(std::array<double, 26> freqs);

    double frequency(char letter) const; // 'a'..'z'
    /// Letters ordered most frequent first.
    const std::array<char, 26>& by_rank() const noexcept { return rank_; }

private:
    std::array<double, 26> freqs_{};
    std::array<char, 26> rank_{};
};

/// Lowercase a..z mapped to 0..25; everything else dropped.
std::vector<std::uint32_t> letters_only(const std::string& text);

/// Fixed random letter permutation applied symbol-wise (the classical
/// monoalphabetic baseline the protocol is compared against).
std::vector<std::uint32_t> mono_substitution_encrypt(const std::vector<std::uint32_t>& letters,
                                                     const std::array<std::uint8_t, 26>& permutation);
std::array<std::uint8_t, 26> random_permutation(std::uint64_t seed);

struct AttackReport {
    std::map<std::uint32_t, std::int64_t> symbol_histogram;
    std::map<std::uint32_t, char> inferred_mapping; // symbol -> letter
    double recovery_rate = 0.0;                     // vs ground truth
    double index_of_coincidence = 0.0;
    std::size_t stream_length = 0;
};

/// Rank-matching frequency attack: the i-th most frequent stream symbol is
/// read as the i-th most frequent profile letter (symbols past rank 26 as
/// the rarest letter); scores the decode against the true letter stream.
AttackReport frequency_attack(const std::vector<std::uint32_t>& symbols,
                              const LanguageProfile& profile,
                              const std::vector<std::uint32_t>& truth_letters);

/// Probability two random positions share a symbol: sum f(f-1) / (N(N-1)).
double index_of_coincidence(const std::vector<std::uint32_t>& symbols);

void export_attack_report(const AttackReport& report, const std::string& path);

} // namespace kpuf
