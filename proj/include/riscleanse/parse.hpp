#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riscleanse/lexicon.hpp"
#include "riscleanse/record.hpp"
#include "riscleanse/text.hpp"

namespace riscleanse {

/// Splits on whitespace, commas, and semicolons. Punctuation-only tokens are
/// dropped; everything else is kept verbatim, original order preserved.
inline std::vector<std::string> tokenize(std::string_view field_text) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (std::any_of(cur.begin(), cur.end(),
                        [](unsigned char c) { return std::isalnum(c); }))
            tokens.push_back(cur);
        cur.clear();
    };
    for (char c : field_text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';')
            flush();
        else
            cur += c;
    }
    flush();
    return tokens;
}

// ---------------------------------------------------------------------------
// Names

struct NameParse {
    std::vector<std::string> titles;
    std::optional<std::string> given;
    std::optional<std::string> middle;
    std::optional<std::string> family;
    NameOrder order_confidence = NameOrder::GivenFirst;
    bool failed = false;  // no name tokens left after title stripping
};

/// Honorific titles are moved to the title list; the remaining tokens are
/// assigned positionally (first -> given, last -> family, interior -> middle).
/// With exactly two non-title tokens the order cannot be determined locally,
/// so the parse is flagged Ambiguous.
inline NameParse parse_name(const std::string& name_text, const Lexicons& lex) {
    NameParse p;
    std::vector<std::string> rest;
    for (auto& tok : tokenize(name_text)) {
        if (lex.is_title(tok))
            p.titles.push_back(tok);
        else
            rest.push_back(tok);
    }
    switch (rest.size()) {
        case 0:
            p.failed = true;
            p.order_confidence = NameOrder::Ambiguous;
            break;
        case 1:
            p.family = rest[0];
            break;
        case 2:
            p.given = rest[0];
            p.family = rest[1];
            p.order_confidence = NameOrder::Ambiguous;
            break;
        default:
            p.given = rest.front();
            p.family = rest.back();
            p.middle = text::join({rest.begin() + 1, rest.end() - 1});
    }
    return p;
}

// ---------------------------------------------------------------------------
// Dates

enum class DatePrecision { Full, YearOnly, Unparseable };

struct DateParse {
    std::optional<int> year;
    std::optional<int> month;
    std::optional<int> day;
    DatePrecision precision = DatePrecision::Unparseable;
    std::string source_format;  // e.g. "MM/DD/YYYY", "DD.MM.YYYY", "YYYY"
    std::string note;
};

namespace detail {

inline bool valid_calendar_date(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static constexpr int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int max_d = len[m - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) max_d = 29;
    return d <= max_d;
}

// Two-digit years pivot at 30: 00-29 -> 2000s, 30-99 -> 1900s.
inline int expand_two_digit_year(int yy) { return yy < 30 ? 2000 + yy : 1900 + yy; }

inline std::vector<std::string> split_on(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace detail

/// Separator-keyed disambiguation: slash implies month-first (US), dot and
/// dash imply day-first (European), a leading 4-digit part with dashes is
/// ISO. Two-digit years pivot at 30. Bare digit runs other than a lone YYYY
/// are rejected rather than guessed.
inline DateParse parse_date(const std::string& date_text) {
    DateParse p;
    const std::string s = text::trim(date_text);

    char sep = 0;
    for (char c : s)
        if (c == '/' || c == '.' || c == '-') {
            sep = c;
            break;
        }

    if (sep == 0) {
        if (text::all_digits(s) && s.size() == 4) {
            p.year = std::stoi(s);
            p.precision = DatePrecision::YearOnly;
            p.source_format = "YYYY";
        } else {
            p.note = "undelimited digit run";
        }
        return p;
    }

    auto parts = detail::split_on(s, sep);
    if (parts.size() != 3 ||
        !std::all_of(parts.begin(), parts.end(),
                     [](const std::string& x) { return text::all_digits(x); })) {
        p.note = "unrecognized date shape";
        return p;
    }

    int a = std::stoi(parts[0]), b = std::stoi(parts[1]), c = std::stoi(parts[2]);
    int year, month, day;
    std::string tag;
    if (sep == '-' && parts[0].size() == 4) {  // ISO
        year = a, month = b, day = c;
        tag = "YYYY-MM-DD";
    } else {
        bool two_digit_year = parts[2].size() == 2;
        if (parts[2].size() != 4 && !two_digit_year) {
            p.note = "unrecognized year width";
            return p;
        }
        year = two_digit_year ? detail::expand_two_digit_year(c) : c;
        if (sep == '/') {
            month = a, day = b;
            tag = two_digit_year ? "MM/DD/YY" : "MM/DD/YYYY";
        } else if (sep == '.') {
            day = a, month = b;
            tag = two_digit_year ? "DD.MM.YY" : "DD.MM.YYYY";
        } else {
            day = a, month = b;
            tag = two_digit_year ? "D-M-YY" : "D-M-YYYY";
        }
    }

    if (!detail::valid_calendar_date(year, month, day)) {
        p.note = "month or day out of range";
        return p;
    }
    p.year = year;
    p.month = month;
    p.day = day;
    p.precision = DatePrecision::Full;
    p.source_format = tag;
    return p;
}

// ---------------------------------------------------------------------------
// ORCID identifiers

enum class OrcidValidity { CanonicalHyphenated, Reformatted, StructurallyInvalid, AllZero };

inline const char* to_string(OrcidValidity v) {
    switch (v) {
        case OrcidValidity::CanonicalHyphenated: return "canonical_hyphenated";
        case OrcidValidity::Reformatted: return "reformatted";
        case OrcidValidity::StructurallyInvalid: return "structurally_invalid";
        case OrcidValidity::AllZero: return "all_zero";
    }
    return "?";
}

struct OrcidParse {
    std::array<std::string, 4> groups;  // populated for the two valid states
    OrcidValidity validity = OrcidValidity::StructurallyInvalid;

    std::string canonical() const {
        return groups[0] + "-" + groups[1] + "-" + groups[2] + "-" + groups[3];
    }
};

/// ISO 7064 MOD 11-2 over the 16 identifier characters (15 base digits plus
/// a digit-or-X check character).
inline bool orcid_checksum_ok(std::string_view digits16) {
    if (digits16.size() != 16) return false;
    int total = 0;
    for (size_t i = 0; i < 15; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(digits16[i]))) return false;
        total = (total + (digits16[i] - '0')) * 2;
    }
    int expected = (12 - total % 11) % 11;
    char check = digits16[15];
    if (expected == 10) return check == 'X' || check == 'x';
    return check == '0' + expected;
}

/// Classifies into exactly one validity state: 19-character hyphenated shape,
/// 16 bare alphanumerics (re-hyphenated every 4), all zeros, or structurally
/// invalid. The real checksum only applies in strict mode because dirty but
/// recognizable identifiers are worth keeping.
inline OrcidParse parse_orcid(const std::string& id_text, bool strict_checksum = false) {
    OrcidParse p;
    const std::string s = text::trim(id_text);

    std::string compact;
    bool hyphenated = false;
    if (s.size() == 19 && s[4] == '-' && s[9] == '-' && s[14] == '-') {
        compact = s.substr(0, 4) + s.substr(5, 4) + s.substr(10, 4) + s.substr(15, 4);
        hyphenated = true;
    } else if (s.size() == 16) {
        compact = s;
    } else {
        return p;  // StructurallyInvalid
    }
    if (!text::all_alnum(compact)) return p;

    if (compact.find_first_not_of('0') == std::string::npos) {
        p.validity = OrcidValidity::AllZero;
        return p;
    }
    if (strict_checksum && !orcid_checksum_ok(compact)) return p;

    for (int i = 0; i < 4; ++i) p.groups[static_cast<size_t>(i)] = compact.substr(static_cast<size_t>(i) * 4, 4);
    p.validity = hyphenated ? OrcidValidity::CanonicalHyphenated : OrcidValidity::Reformatted;
    return p;
}

// ---------------------------------------------------------------------------
// Addresses

struct AddressParse {
    std::vector<std::string> house_tokens;
    std::optional<std::string> street_name;
    std::optional<std::string> city;
    std::optional<std::string> state;  // only from canonical-form input
    std::optional<std::string> zip_candidate;
    std::vector<std::string> leftover;
    std::string source_format;  // "canonical", "freeform-comma", "freeform"
};

namespace detail {

inline bool initial_like(std::string_view t) {
    return (t.size() == 1 && std::isalpha(static_cast<unsigned char>(t[0]))) ||
           (t.size() == 2 && std::isalpha(static_cast<unsigned char>(t[0])) && t[1] == '.');
}

inline bool looks_like_street(std::string_view seg, const Lexicons& lex) {
    if (text::has_digit(seg)) return true;
    for (const auto& tok : text::split_ws(seg))
        if (lex.is_street_suffix(tok)) return true;
    return false;
}

// Re-parses the canonical rendering `zip; state; city; street` (any leading
// components may be absent). Keeps street text verbatim so canonical records
// are a parse fixed point.
inline std::optional<AddressParse> parse_canonical_address(const std::string& s,
                                                           const Lexicons& lex) {
    if (s.find(';') == std::string::npos) return std::nullopt;
    std::vector<std::string> segs;
    for (auto& raw : split_on(s, ';')) {
        std::string t = text::trim(raw);
        if (!t.empty()) segs.push_back(t);
    }
    if (segs.size() < 2) return std::nullopt;

    AddressParse p;
    p.source_format = "canonical";
    size_t i = 0;
    if (i < segs.size() && text::all_digits(segs[i]) && segs[i].size() == 5)
        p.zip_candidate = segs[i++];
    if (i < segs.size() && segs[i].size() == 2 && text::all_alpha(segs[i]) &&
        segs[i] == text::upper(segs[i]))
        p.state = segs[i++];
    std::vector<std::string> rest(segs.begin() + static_cast<long>(i), segs.end());
    if (rest.empty()) return p;
    if (rest.size() == 1) {
        if (looks_like_street(rest[0], lex))
            p.street_name = rest[0];
        else
            p.city = rest[0];
        return p;
    }
    p.city = rest[0];
    p.street_name = text::join({rest.begin() + 1, rest.end()}, "; ");
    return p;
}

}  // namespace detail

/// Heuristic single-line address decomposition:
///   - the last standalone 5-digit token becomes the zip candidate;
///   - the first street-suffix token anchors the street name together with
///     the run of purely alphabetic tokens right before it (the zip token is
///     skipped when it interrupts that run);
///   - the run of alphabetic tokens immediately before the zip becomes the
///     city candidate;
///   - leading numeric/initial tokens plus any stray digit-bearing tokens are
///     house tokens; everything unassigned lands in leftover.
/// Canonical `zip; state; city; street` renderings short-circuit into a
/// structured split instead.
inline AddressParse parse_address(const std::string& address_text, const Lexicons& lex) {
    if (auto canon = detail::parse_canonical_address(address_text, lex)) return *canon;

    AddressParse p;
    p.source_format =
        address_text.find(',') != std::string::npos ? "freeform-comma" : "freeform";

    const std::vector<std::string> tokens = tokenize(address_text);
    const size_t n = tokens.size();
    std::vector<bool> consumed(n, false);

    // zip: last standalone 5-digit token
    size_t zip_pos = n;
    for (size_t i = n; i-- > 0;) {
        if (text::all_digits(tokens[i]) && tokens[i].size() == 5) {
            zip_pos = i;
            p.zip_candidate = tokens[i];
            consumed[i] = true;
            break;
        }
    }

    // street: first suffix token + preceding pure-alpha run
    size_t street_start = n;
    for (size_t i = 0; i < n; ++i) {
        if (consumed[i] || !lex.is_street_suffix(tokens[i])) continue;
        size_t lo = i;
        for (size_t j = i; j-- > 0;) {
            if (consumed[j]) continue;  // skip over the extracted zip
            if (!text::all_alpha(tokens[j]) || lex.is_street_suffix(tokens[j])) break;
            lo = j;
        }
        std::vector<std::string> parts;
        for (size_t j = lo; j <= i; ++j) {
            if (consumed[j]) continue;
            parts.push_back(tokens[j]);
            consumed[j] = true;
        }
        p.street_name = text::join(parts);
        street_start = lo;
        break;
    }

    // city: alphabetic run immediately before the zip
    if (zip_pos != n && zip_pos > 0) {
        size_t lo = zip_pos;
        while (lo > 0 && !consumed[lo - 1] && text::all_alpha(tokens[lo - 1])) --lo;
        if (lo < zip_pos) {
            std::vector<std::string> parts;
            for (size_t j = lo; j < zip_pos; ++j) {
                parts.push_back(tokens[j]);
                consumed[j] = true;
            }
            p.city = text::join(parts);
        }
    }

    // house: leading numeric/initial tokens, then stray digit-bearing tokens
    for (size_t i = 0; i < n && i < street_start; ++i) {
        if (consumed[i]) break;
        if (text::has_digit(tokens[i]) || detail::initial_like(tokens[i])) {
            p.house_tokens.push_back(tokens[i]);
            consumed[i] = true;
        } else {
            break;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (!consumed[i] && text::has_digit(tokens[i])) {
            p.house_tokens.push_back(tokens[i]);
            consumed[i] = true;
        }
    }

    for (size_t i = 0; i < n; ++i)
        if (!consumed[i]) p.leftover.push_back(tokens[i]);
    return p;
}

// ---------------------------------------------------------------------------
// Whole-record parse

struct ParsedRecord {
    RawRecord raw;
    std::optional<NameParse> name;
    std::optional<DateParse> date;
    std::optional<OrcidParse> orcid;
    std::optional<AddressParse> address;
};

inline ParsedRecord parse_record(const RawRecord& raw, const Lexicons& lex,
                                 bool strict_orcid = false) {
    ParsedRecord p;
    p.raw = raw;
    if (raw.name) p.name = parse_name(*raw.name, lex);
    if (raw.birth_date_raw) p.date = parse_date(*raw.birth_date_raw);
    if (raw.orcid_raw) p.orcid = parse_orcid(*raw.orcid_raw, strict_orcid);
    if (raw.address_raw) p.address = parse_address(*raw.address_raw, lex);
    return p;
}

// Source-format tags used by the uniformity metric.

inline std::string name_format_tag(const NameParse& p) {
    size_t tokens = (p.given ? 1 : 0) + (p.family ? 1 : 0);
    if (p.middle) tokens += text::split_ws(*p.middle).size();
    std::string tag = p.titles.empty() ? "plain-" : "titled-";
    return tag + std::to_string(tokens);
}

inline std::string orcid_format_tag(const std::string& raw) {
    const std::string s = text::trim(raw);
    if (s.size() == 19 && s[4] == '-' && s[9] == '-' && s[14] == '-') return "hyphenated";
    if (s.size() == 16 && text::all_alnum(s)) return "bare";
    return "other";
}

inline std::string author_id_format_tag(const std::string& raw) {
    return text::all_digits(text::trim(raw)) ? "numeric" : "text";
}

}  // namespace riscleanse
