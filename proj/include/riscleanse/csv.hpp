#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace riscleanse::csv {

/// RFC 4180 row reader: comma-separated, double-quote quoting, `""` escapes,
/// quoted fields may contain commas and newlines. CR immediately before LF is
/// stripped. Returns false when the stream is exhausted before any character
/// of a new row.
inline bool read_row(std::istream& in, std::vector<std::string>& out) {
    out.clear();
    int c = in.get();
    if (c == std::istream::traits_type::eof()) return false;

    std::string field;
    bool quoted = false;
    for (;; c = in.get()) {
        if (c == std::istream::traits_type::eof()) {
            out.push_back(field);
            return true;
        }
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field += static_cast<char>(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty()) quoted = true;
                else field += '"';  // stray quote inside unquoted field
                break;
            case ',':
                out.push_back(field);
                field.clear();
                break;
            case '\r':
                if (in.peek() == '\n') break;  // swallowed with the LF
                field += '\r';
                break;
            case '\n':
                out.push_back(field);
                return true;
            default:
                field += static_cast<char>(c);
        }
    }
}

inline std::string quote(std::string_view field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << quote(fields[i]);
    }
    os << '\n';
}

}  // namespace riscleanse::csv
