#include "kpuf/attack.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "kpuf/errors.hpp"

namespace kpuf {

namespace {

// Relative letter frequencies of English text (percent), after Lewand's
// classical table; normalized to sum exactly 1 at construction.
constexpr std::array<double, 26> english_percent = {
    8.167, 1.492, 2.782, 4.253, 12.702, 2.228, 2.015, 6.094, 6.966,
    0.153, 0.772, 4.025, 2.406,  6.749,  7.507, 1.929, 0.095, 5.987,
    6.327, 9.056, 2.758, 0.978,  2.360,  0.150, 1.974, 0.074,
};

} // namespace

LanguageProfile::LanguageProfile(std::array<double, 26> freqs) : freqs_(freqs) {
    double sum = 0.0;
    for (double f : freqs_) {
        if (f < 0.0)
            throw DomainError("letter frequency must be non-negative");
        sum += f;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw DomainError("letter frequencies must sum to 1, got " + std::to_string(sum));

    std::array<int, 26> idx;
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return freqs_[static_cast<std::size_t>(a)] >
                                                freqs_[static_cast<std::size_t>(b)]; });
    for (std::size_t i = 0; i < 26; ++i)
        rank_[i] = static_cast<char>('a' + idx[i]);
}

LanguageProfile LanguageProfile::english() {
    std::array<double, 26> f{};
    double sum = 0.0;
    for (double p : english_percent)
        sum += p;
    for (std::size_t i = 0; i < 26; ++i)
        f[i] = english_percent[i] / sum;
    return LanguageProfile(f);
}

LanguageProfile LanguageProfile::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::array<double, 26> f{};
    std::array<bool, 26> seen{};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#' || line == "letter,frequency")
            continue;
        std::stringstream ss(line);
        std::string letter, freq;
        if (!std::getline(ss, letter, ',') || !std::getline(ss, freq))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected letter,frequency");
        if (letter.size() != 1 || !std::isalpha(static_cast<unsigned char>(letter[0])))
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad letter '" + letter + "'");
        const auto i = static_cast<std::size_t>(
            std::tolower(static_cast<unsigned char>(letter[0])) - 'a');
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(freq.data(), freq.data() + freq.size(), v);
        if (ec != std::errc() || ptr != freq.data() + freq.size())
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad frequency '" + freq + "'");
        f[i] = v;
        seen[i] = true;
    }
    for (std::size_t i = 0; i < 26; ++i)
        if (!seen[i])
            throw ParseError(path + ": missing letter '" + std::string(1, static_cast<char>('a' + i)) + "'");
    // tolerate unnormalized tables from external sources
    double sum = 0.0;
    for (double v : f)
        sum += v;
    if (sum <= 0.0)
        throw ParseError(path + ": frequencies sum to zero");
    for (double& v : f)
        v /= sum;
    return LanguageProfile(f);
}

double LanguageProfile::frequency(char letter) const {
    const unsigned char lc = static_cast<unsigned char>(std::tolower(static_cast<unsigned char>(letter)));
    if (lc < 'a' || lc > 'z')
        throw DomainError("not a letter");
    return freqs_[static_cast<std::size_t>(lc - 'a')];
}

std::vector<std::uint32_t> letters_only(const std::string& text) {
    std::vector<std::uint32_t> out;
    out.reserve(text.size());
    for (unsigned char c : text)
        if (std::isalpha(c))
            out.push_back(static_cast<std::uint32_t>(std::tolower(c) - 'a'));
    return out;
}

std::array<std::uint8_t, 26> random_permutation(std::uint64_t seed) {
    std::array<std::uint8_t, 26> perm;
    std::iota(perm.begin(), perm.end(), static_cast<std::uint8_t>(0));
    std::mt19937_64 engine(seed);
    std::shuffle(perm.begin(), perm.end(), engine);
    return perm;
}

std::vector<std::uint32_t> mono_substitution_encrypt(const std::vector<std::uint32_t>& letters,
                                                     const std::array<std::uint8_t, 26>& permutation) {
    std::vector<std::uint32_t> out;
    out.reserve(letters.size());
    for (std::uint32_t l : letters) {
        if (l >= 26)
            throw DomainError("baseline plaintext symbol outside a..z");
        out.push_back(permutation[l]);
    }
    return out;
}

double index_of_coincidence(const std::vector<std::uint32_t>& symbols) {
    if (symbols.size() < 2)
        throw DomainError("index of coincidence needs at least 2 symbols");
    std::map<std::uint32_t, std::int64_t> freq;
    for (std::uint32_t s : symbols)
        ++freq[s];
    const double n = static_cast<double>(symbols.size());
    double acc = 0.0;
    for (const auto& [sym, f] : freq)
        acc += static_cast<double>(f) * (static_cast<double>(f) - 1.0);
    return acc / (n * (n - 1.0));
}

AttackReport frequency_attack(const std::vector<std::uint32_t>& symbols,
                              const LanguageProfile& profile,
                              const std::vector<std::uint32_t>& truth_letters) {
    if (symbols.empty())
        throw DomainError("cannot attack an empty symbol stream");
    if (truth_letters.size() != symbols.size())
        throw DomainError("truth stream must align with the symbol stream");

    AttackReport report;
    report.stream_length = symbols.size();
    for (std::uint32_t s : symbols)
        ++report.symbol_histogram[s];

    // rank symbols by frequency, ties broken by symbol value
    std::vector<std::pair<std::uint32_t, std::int64_t>> ranked(report.symbol_histogram.begin(),
                                                               report.symbol_histogram.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });

    const auto& prof_rank = profile.by_rank();
    for (std::size_t i = 0; i < ranked.size(); ++i)
        report.inferred_mapping[ranked[i].first] = i < 26 ? prof_rank[i] : prof_rank[25];

    std::size_t correct = 0;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const char decoded = report.inferred_mapping.at(symbols[i]);
        if (static_cast<std::uint32_t>(decoded - 'a') == truth_letters[i])
            ++correct;
    }
    report.recovery_rate = static_cast<double>(correct) / static_cast<double>(symbols.size());
    report.index_of_coincidence = index_of_coincidence(symbols);
    return report;
}

void export_attack_report(const AttackReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "metric,value\n";
    char buf[96];
    std::snprintf(buf, sizeof(buf), "recovery_rate,%.6f\n", report.recovery_rate);
    out << buf;
    std::snprintf(buf, sizeof(buf), "index_of_coincidence,%.9g\n", report.index_of_coincidence);
    out << buf;
    out << "stream_length," << report.stream_length << "\n";
    out << "distinct_symbols," << report.symbol_histogram.size() << "\n";
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace kpuf
