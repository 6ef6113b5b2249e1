#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riscleanse/errors.hpp"
#include "riscleanse/text.hpp"

namespace riscleanse {

/// One-entry-per-line word list; blank lines and lines starting with '#' are
/// ignored.
inline std::vector<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("lexicon: cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(t);
    }
    return out;
}

/// Token lexicons used by the parsers. Lookups are case-insensitive and
/// tolerate trailing periods ("Dr" matches "Dr.").
struct Lexicons {
    std::vector<std::string> titles = {"Dr.", "Prof.", "Mr.", "Ms.", "Mrs.", "PhD"};
    std::vector<std::string> street_suffixes = {"Street", "St",   "Ave", "Avenue",
                                                "Blvd",   "Road", "Rd"};
    // token -> expansion, applied to street text during standardization
    std::vector<std::pair<std::string, std::string>> abbreviations = {
        {"P.B.", "PO Box"}, {"Ave", "Ave"}, {"St", "Street"}};

    static const Lexicons& defaults() {
        static const Lexicons lex;
        return lex;
    }

    static std::string key(std::string_view token) {
        return text::lower(text::strip_trailing_periods(token));
    }

    bool is_title(std::string_view token) const {
        const std::string k = key(token);
        for (const auto& t : titles)
            if (key(t) == k) return true;
        return false;
    }

    bool is_street_suffix(std::string_view token) const {
        const std::string k = key(token);
        for (const auto& s : street_suffixes)
            if (key(s) == k) return true;
        return false;
    }

    std::optional<std::string> expand(std::string_view token) const {
        for (const auto& [abbrev, full] : abbreviations)
            if (abbrev == token) return full;
        return std::nullopt;
    }
};

}  // namespace riscleanse
