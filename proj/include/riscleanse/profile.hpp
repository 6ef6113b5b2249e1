#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "riscleanse/errors.hpp"
#include "riscleanse/gazetteer.hpp"
#include "riscleanse/lexicon.hpp"
#include "riscleanse/match.hpp"
#include "riscleanse/parse.hpp"
#include "riscleanse/record.hpp"

namespace riscleanse {

/// Per-column counters. Ratios are exact fractions of the stored integers;
/// an empty denominator is vacuously perfect (completeness of an all-absent
/// column is 0, its validity/uniformity are 1).
struct ColumnStats {
    int present = 0;
    int total = 0;
    int valid = 0;        // present fields passing the format rules
    int modal_count = 0;  // present fields in the modal source format
    std::string modal_format;

    double completeness() const { return total == 0 ? 1.0 : double(present) / total; }
    double validity() const { return present == 0 ? 1.0 : double(valid) / present; }
    double uniformity() const { return present == 0 ? 1.0 : double(modal_count) / present; }
};

struct QualityProfile {
    int record_count = 0;
    std::map<Field, ColumnStats> fields;
    int duplicated_records = 0;  // records sitting in multi-member clusters
    int consistency_violations = 0;
    std::vector<QualityIssue> issues;

    double duplicate_ratio() const {
        return record_count == 0 ? 0.0 : double(duplicated_records) / record_count;
    }
};

namespace detail {

struct CellView {
    bool present = false;
    bool valid = false;
    std::string format;
};

inline CellView inspect_raw(const RawRecord& r, Field f, const Lexicons& lex,
                            bool strict_orcid) {
    CellView v;
    const auto& cell = r.field_text(f);
    if (!cell) return v;
    v.present = true;
    switch (f) {
        case Field::AuthorId:
            v.valid = true;
            v.format = author_id_format_tag(*cell);
            break;
        case Field::Name: {
            NameParse np = parse_name(*cell, lex);
            v.valid = !np.failed;
            v.format = name_format_tag(np);
            break;
        }
        case Field::Orcid: {
            OrcidParse op = parse_orcid(*cell, strict_orcid);
            v.valid = op.validity == OrcidValidity::CanonicalHyphenated ||
                      op.validity == OrcidValidity::Reformatted;
            v.format = orcid_format_tag(*cell);
            break;
        }
        case Field::BirthDate: {
            DateParse dp = parse_date(*cell);
            v.valid = dp.precision != DatePrecision::Unparseable;
            v.format = v.valid ? dp.source_format : "unknown";
            break;
        }
        case Field::Address: {
            AddressParse ap = parse_address(*cell, lex);
            v.valid = ap.zip_candidate || ap.street_name || ap.city ||
                      !ap.house_tokens.empty();
            v.format = ap.source_format;
            break;
        }
        default: break;
    }
    return v;
}

// Cleansed records are judged on their emitted representation: a year-only
// birth date is emitted blank, so it does not count as present here.
inline CellView inspect_clean(const CleanRecord& r, Field f) {
    CellView v;
    switch (f) {
        case Field::AuthorId:
            if (!r.author_id) return v;
            v = {true, true, author_id_format_tag(*r.author_id)};
            break;
        case Field::Name:
            if (!r.given && !r.family) return v;
            v = {true, true, "canonical"};
            break;
        case Field::Orcid: {
            if (!r.orcid) return v;
            const std::string& s = *r.orcid;
            bool ok = s.size() == 19 && s[4] == '-' && s[9] == '-' && s[14] == '-';
            v = {true, ok, ok ? "canonical" : "other"};
            break;
        }
        case Field::BirthDate: {
            auto iso = r.emitted_birth_date();
            if (!iso) return v;
            v = {true, true, "canonical"};
            break;
        }
        case Field::Address: {
            if (!r.field_present(Field::Address)) return v;
            const auto& a = *r.address;
            bool ok = (!a.zip || (text::all_digits(*a.zip) && a.zip->size() == 5)) &&
                      (!a.state || (a.state->size() == 2 && text::all_alpha(*a.state)));
            v = {true, ok, ok ? "canonical" : "other"};
            break;
        }
        default: break;
    }
    return v;
}

template <typename Record, typename Inspect>
inline QualityProfile profile_impl(const std::vector<Record>& records, Inspect inspect,
                                   const std::vector<DuplicateCluster>* clusters,
                                   const std::map<int, const CleanRecord*>* clean_by_row) {
    QualityProfile p;
    p.record_count = static_cast<int>(records.size());

    std::map<Field, std::vector<std::pair<int, CellView>>> cells;  // field -> (row, view)
    for (Field f : kValueFields) {
        auto& column = cells[f];
        for (const auto& r : records) column.push_back({r.row_index, inspect(r, f)});
    }

    for (Field f : kValueFields) {
        ColumnStats st;
        st.total = p.record_count;
        std::map<std::string, int> format_votes;
        for (const auto& [row, v] : cells[f]) {
            if (!v.present) continue;
            ++st.present;
            if (v.valid) ++st.valid;
            ++format_votes[v.format];
        }
        for (const auto& [fmt, count] : format_votes) {
            if (count > st.modal_count) {  // ties resolve to the smallest tag
                st.modal_count = count;
                st.modal_format = fmt;
            }
        }
        p.fields[f] = st;
    }

    // Issues in deterministic order: per-cell problems by row then field,
    // then duplicates, then inconsistencies.
    for (size_t i = 0; i < records.size(); ++i) {
        for (Field f : kValueFields) {
            const auto& [row, v] = cells[f][i];
            if (!v.present) {
                p.issues.push_back({row, f, IssueKind::MissingValue, "value absent"});
                continue;
            }
            if (!v.valid)
                p.issues.push_back({row, f, IssueKind::IncorrectValue, "fails format rules"});
            if (v.format != p.fields[f].modal_format)
                p.issues.push_back({row, f, IssueKind::NonUniformFormat,
                                    "format '" + v.format + "' differs from modal '" +
                                        p.fields[f].modal_format + "'"});
        }
    }

    if (clusters) {
        for (const auto& c : *clusters) {
            if (c.member_rows.size() < 2) continue;
            p.duplicated_records += static_cast<int>(c.member_rows.size());
            std::string rows;
            for (int row : c.member_rows) rows += (rows.empty() ? "" : ",") + std::to_string(row);
            for (int row : c.member_rows)
                p.issues.push_back({row, Field::Record, IssueKind::Duplicate,
                                    "duplicate cluster rows " + rows});
        }
        // Contradictory full birth dates inside one cluster.
        for (const auto& c : *clusters) {
            if (c.member_rows.size() < 2 || !clean_by_row) continue;
            std::map<int, std::string> full_dates;
            std::map<std::string, int> distinct;
            for (int row : c.member_rows) {
                auto it = clean_by_row->find(row);
                if (it == clean_by_row->end() || !it->second->birth_date ||
                    !it->second->birth_date->full())
                    continue;
                full_dates[row] = it->second->birth_date->iso();
                ++distinct[full_dates[row]];
            }
            if (distinct.size() > 1) {
                std::string values;
                for (const auto& [iso, count] : distinct)
                    values += (values.empty() ? "" : " vs ") + iso;
                for (const auto& [row, iso] : full_dates) {
                    p.issues.push_back({row, Field::BirthDate, IssueKind::Inconsistency,
                                        "cluster birth dates disagree: " + values});
                    ++p.consistency_violations;
                }
            }
        }
    }
    return p;
}

}  // namespace detail

/// Profiles raw records: completeness = present/total, validity =
/// parse-success/present, uniformity = modal-format share per field. When a
/// cluster partition is supplied, duplicate and consistency metrics are
/// filled in (consistency needs the standardized records for comparable
/// dates).
inline QualityProfile profile(const std::vector<RawRecord>& records,
                              const Lexicons& lex = Lexicons::defaults(),
                              bool strict_orcid = false,
                              const std::vector<DuplicateCluster>* clusters = nullptr,
                              const std::map<int, const CleanRecord*>* clean_by_row = nullptr) {
    return detail::profile_impl(
        records,
        [&](const RawRecord& r, Field f) { return detail::inspect_raw(r, f, lex, strict_orcid); },
        clusters, clean_by_row);
}

/// Profiles standardized records on their emitted representation.
inline QualityProfile profile(const std::vector<CleanRecord>& records,
                              const std::vector<DuplicateCluster>* clusters = nullptr) {
    std::map<int, const CleanRecord*> by_row;
    for (const auto& r : records) by_row[r.row_index] = &r;
    return detail::profile_impl(
        records, [](const CleanRecord& r, Field f) { return detail::inspect_clean(r, f); },
        clusters, &by_row);
}

inline std::vector<QualityIssue> detect_violations(
    const std::vector<RawRecord>& records, const Lexicons& lex = Lexicons::defaults(),
    bool strict_orcid = false, const std::vector<DuplicateCluster>* clusters = nullptr,
    const std::map<int, const CleanRecord*>* clean_by_row = nullptr) {
    return profile(records, lex, strict_orcid, clusters, clean_by_row).issues;
}

// ---------------------------------------------------------------------------
// Profile comparison

struct MetricDelta {
    double completeness = 0;
    double validity = 0;
    double uniformity = 0;
};

struct ProfileDelta {
    std::map<Field, MetricDelta> fields;
    double duplicate_ratio = 0;
    int consistency_violations = 0;
    bool regression = false;
};

/// Signed per-metric deltas (after minus before). The regression flag is set
/// when any quality metric worsens: completeness/validity/uniformity falling
/// or duplicates/contradictions rising.
inline ProfileDelta compare_profiles(const QualityProfile& before,
                                     const QualityProfile& after) {
    auto keys = [](const QualityProfile& p) {
        std::vector<Field> out;
        for (const auto& [f, st] : p.fields) out.push_back(f);
        return out;
    };
    if (keys(before) != keys(after))
        throw ConfigError("compare_profiles: field schemas differ");

    constexpr double eps = 1e-12;
    ProfileDelta d;
    for (const auto& [f, b] : before.fields) {
        const ColumnStats& a = after.fields.at(f);
        MetricDelta m{a.completeness() - b.completeness(), a.validity() - b.validity(),
                      a.uniformity() - b.uniformity()};
        if (m.completeness < -eps || m.validity < -eps || m.uniformity < -eps)
            d.regression = true;
        d.fields[f] = m;
    }
    d.duplicate_ratio = after.duplicate_ratio() - before.duplicate_ratio();
    d.consistency_violations = after.consistency_violations - before.consistency_violations;
    if (d.duplicate_ratio > eps || d.consistency_violations > 0) d.regression = true;
    return d;
}

/// Aligned-column text rendering of a profile.
inline std::string render_profile_text(const QualityProfile& p) {
    std::ostringstream os;
    os << "records: " << p.record_count << "\n";
    os << std::left << std::setw(12) << "field" << std::right << std::setw(14)
       << "completeness" << std::setw(10) << "validity" << std::setw(12)
       << "uniformity" << "  modal format\n";
    os << std::string(60, '-') << "\n";
    os << std::fixed << std::setprecision(4);
    for (const auto& [f, st] : p.fields) {
        os << std::left << std::setw(12) << to_string(f) << std::right << std::setw(14)
           << st.completeness() << std::setw(10) << st.validity() << std::setw(12)
           << st.uniformity() << "  " << (st.modal_format.empty() ? "-" : st.modal_format)
           << "\n";
    }
    os << std::string(60, '-') << "\n";
    os << "duplicate_ratio: " << p.duplicate_ratio() << "  (" << p.duplicated_records
       << "/" << p.record_count << ")\n";
    os << "consistency_violations: " << p.consistency_violations << "\n";
    os << "issues: " << p.issues.size() << "\n";
    return os.str();
}

}  // namespace riscleanse
