#pragma once

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace riscleanse {

/// Levenshtein edit distance (insert/delete/substitute, unit costs), two-row
/// dynamic programming.
inline size_t levenshtein(std::string_view a, std::string_view b) {
    if (a == b) return 0;
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();

    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 0; i < a.size(); ++i) {
        cur[0] = i + 1;
        for (size_t j = 0; j < b.size(); ++j) {
            size_t cost = a[i] == b[j] ? 0 : 1;
            cur[j + 1] = std::min({cur[j] + 1, prev[j + 1] + 1, prev[j] + cost});
        }
        prev.swap(cur);
    }
    return prev[b.size()];
}

/// Jaro similarity: match window floor(max/2)-1, transpositions counted over
/// the matched subsequences.
inline double jaro(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    if (a == b) return 1.0;

    const size_t window =
        std::max(a.size(), b.size()) / 2 - (std::max(a.size(), b.size()) >= 2 ? 1 : 0);
    std::vector<bool> a_matched(a.size(), false), b_matched(b.size(), false);

    size_t matches = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        const size_t lo = i > window ? i - window : 0;
        const size_t hi = std::min(b.size(), i + window + 1);
        for (size_t j = lo; j < hi; ++j) {
            if (b_matched[j] || a[i] != b[j]) continue;
            a_matched[i] = b_matched[j] = true;
            ++matches;
            break;
        }
    }
    if (matches == 0) return 0.0;

    size_t half_transpositions = 0, k = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a_matched[i]) continue;
        while (!b_matched[k]) ++k;
        if (a[i] != b[k]) ++half_transpositions;
        ++k;
    }
    const double m = static_cast<double>(matches);
    const double t = static_cast<double>(half_transpositions / 2);
    return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) +
            (m - t) / m) /
           3.0;
}

/// Jaro with the Winkler prefix boost: common prefix capped at 4, scaling 0.1.
inline double jaro_winkler(std::string_view a, std::string_view b) {
    const double j = jaro(a, b);
    size_t prefix = 0;
    while (prefix < 4 && prefix < a.size() && prefix < b.size() &&
           a[prefix] == b[prefix])
        ++prefix;
    return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

/// Classic American Soundex: first letter plus three digits; letters coding
/// alike are collapsed when adjacent or separated only by H/W, zero-padded.
/// Non-letter-leading input is an error.
inline std::string soundex(std::string_view name) {
    auto code_of = [](char c) -> char {
        switch (std::tolower(static_cast<unsigned char>(c))) {
            case 'b': case 'f': case 'p': case 'v': return '1';
            case 'c': case 'g': case 'j': case 'k':
            case 'q': case 's': case 'x': case 'z': return '2';
            case 'd': case 't': return '3';
            case 'l': return '4';
            case 'm': case 'n': return '5';
            case 'r': return '6';
            case 'h': case 'w': return '-';  // transparent separators
            default: return '0';             // vowels and non-letters
        }
    };
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        throw std::invalid_argument("soundex: input must begin with a letter");

    std::string out(1, static_cast<char>(std::toupper(static_cast<unsigned char>(name[0]))));
    // The first letter is kept verbatim and does not collapse against the
    // letter after it ("Scott" -> S230, not S300).
    char prev = '0';
    for (size_t i = 1; i < name.size() && out.size() < 4; ++i) {
        if (!std::isalpha(static_cast<unsigned char>(name[i]))) continue;
        const char code = code_of(name[i]);
        if (code == '-') continue;  // h/w do not reset the previous code
        if (code != '0' && code != prev) out += code;
        prev = code;
    }
    out.append(4 - out.size(), '0');
    return out;
}

}  // namespace riscleanse
