#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace riscleanse {

/// Logical fields of a researcher record. `Record` is the pseudo-field used
/// for issues that concern the row as a whole (duplicates).
enum class Field { AuthorId, Name, Orcid, BirthDate, Address, Record };

inline const char* to_string(Field f) {
    switch (f) {
        case Field::AuthorId: return "author_id";
        case Field::Name: return "name";
        case Field::Orcid: return "orcid";
        case Field::BirthDate: return "birth_date";
        case Field::Address: return "address";
        case Field::Record: return "record";
    }
    return "?";
}

constexpr Field kValueFields[] = {Field::AuthorId, Field::Name, Field::Orcid,
                                  Field::BirthDate, Field::Address};

enum class FieldState { Present, Missing, Invalid, Corrected, Enriched };

inline const char* to_string(FieldState s) {
    switch (s) {
        case FieldState::Present: return "present";
        case FieldState::Missing: return "missing";
        case FieldState::Invalid: return "invalid";
        case FieldState::Corrected: return "corrected";
        case FieldState::Enriched: return "enriched";
    }
    return "?";
}

struct FieldStatus {
    FieldState state = FieldState::Missing;
    std::string note;
};

/// One ingested row, fields as raw text. Empty/whitespace-only cells are
/// normalized to absent at ingestion; a present field is non-empty trimmed
/// text. row_index is the 1-based data-row ordinal, stable across the
/// pipeline.
struct RawRecord {
    int row_index = 0;
    std::optional<std::string> author_id;
    std::optional<std::string> name;
    std::optional<std::string> orcid_raw;
    std::optional<std::string> birth_date_raw;
    std::optional<std::string> address_raw;

    const std::optional<std::string>& field_text(Field f) const {
        switch (f) {
            case Field::AuthorId: return author_id;
            case Field::Name: return name;
            case Field::Orcid: return orcid_raw;
            case Field::BirthDate: return birth_date_raw;
            case Field::Address: return address_raw;
            default: throw std::logic_error("RawRecord::field_text: not a value field");
        }
    }
};

/// The five quality-problem classes measured by profiling.
enum class IssueKind {
    MissingValue,      // feature completeness
    IncorrectValue,    // correctness
    Duplicate,         // redundancy-freedom
    NonUniformFormat,  // uniformity
    Inconsistency      // consistency
};

inline const char* to_string(IssueKind k) {
    switch (k) {
        case IssueKind::MissingValue: return "missing_value";
        case IssueKind::IncorrectValue: return "incorrect_value";
        case IssueKind::Duplicate: return "duplicate";
        case IssueKind::NonUniformFormat: return "non_uniform_format";
        case IssueKind::Inconsistency: return "inconsistency";
    }
    return "?";
}

struct QualityIssue {
    int row_index = 0;
    Field field = Field::Record;
    IssueKind kind = IssueKind::MissingValue;
    std::string detail;
};

struct StructuredAddress {
    std::optional<std::string> street;
    std::optional<std::string> city;
    std::optional<std::string> state;  // 2-letter code
    std::optional<std::string> zip;    // exactly five decimal digits

    bool empty() const { return !street && !city && !state && !zip; }

    /// Canonical rendering `zip; state; city; street`, absent components
    /// omitted.
    std::string canonical() const {
        std::string out;
        for (const auto* part : {&zip, &state, &city, &street}) {
            if (!part->has_value()) continue;
            if (!out.empty()) out += "; ";
            out += **part;
        }
        return out;
    }

    bool operator==(const StructuredAddress&) const = default;
};

/// A birth date that may be a full calendar date or a year-only partial.
struct BirthDate {
    int year = 0;
    std::optional<int> month;
    std::optional<int> day;

    bool full() const { return month.has_value() && day.has_value(); }

    /// ISO-8601 `YYYY-MM-DD`; only meaningful for full dates.
    std::string iso() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month.value_or(0),
                      day.value_or(0));
        return buf;
    }

    bool operator==(const BirthDate&) const = default;
};

/// How the name tokens were ordered in the source text. Ambiguous = exactly
/// two non-title tokens, order undecidable locally; FamilyFirst is assigned
/// when cluster reconciliation flips a member.
enum class NameOrder { GivenFirst, FamilyFirst, Ambiguous };

inline const char* to_string(NameOrder o) {
    switch (o) {
        case NameOrder::GivenFirst: return "given_first";
        case NameOrder::FamilyFirst: return "family_first";
        case NameOrder::Ambiguous: return "ambiguous";
    }
    return "?";
}

/// Standardized record. orcid, when present, is the hyphenated 4x4 canonical
/// form; a full birth_date is a valid calendar date.
struct CleanRecord {
    int row_index = 0;
    std::optional<std::string> author_id;
    std::optional<std::string> given;
    std::optional<std::string> middle;
    std::optional<std::string> family;
    std::vector<std::string> titles;
    std::optional<std::string> orcid;
    std::optional<BirthDate> birth_date;
    std::optional<StructuredAddress> address;
    NameOrder name_order = NameOrder::GivenFirst;
    std::map<Field, FieldStatus> statuses;

    /// Year-only partials are kept for matching but emitted blank.
    std::optional<std::string> emitted_birth_date() const {
        if (birth_date && birth_date->full()) return birth_date->iso();
        return std::nullopt;
    }

    bool field_present(Field f) const {
        switch (f) {
            case Field::AuthorId: return author_id.has_value();
            case Field::Name: return given.has_value() || family.has_value();
            case Field::Orcid: return orcid.has_value();
            case Field::BirthDate: return birth_date.has_value();
            case Field::Address: return address.has_value() && !address->empty();
            default: return false;
        }
    }

    void set_status(Field f, FieldState s, std::string note = {}) {
        statuses[f] = FieldStatus{s, std::move(note)};
    }

    void append_status_note(Field f, const std::string& note) {
        auto& st = statuses[f];
        if (!st.note.empty()) st.note += "; ";
        st.note += note;
    }
};

}  // namespace riscleanse
