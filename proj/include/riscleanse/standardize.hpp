#pragma once

#include <string>
#include <vector>

#include "riscleanse/errors.hpp"
#include "riscleanse/lexicon.hpp"
#include "riscleanse/parse.hpp"
#include "riscleanse/record.hpp"

namespace riscleanse {

/// A named, configurable correction applied after the core canonical mapping.
/// Rules are applied in list order and every applied correction cites its
/// rule_id in the field's status note.
struct StandardizationRule {
    Field field;
    std::string rule_id;
    std::string description;
    bool (*apply)(CleanRecord&, const Lexicons&);  // returns true when it changed something
};

namespace detail {

inline bool rewrite_street(CleanRecord& r, const std::string& next) {
    if (!r.address || !r.address->street || *r.address->street == next) return false;
    r.address->street = next;
    return true;
}

// "145F" / "145F." -> "145" + "F." (digits followed by a single letter unit).
inline bool rule_split_house_unit(CleanRecord& r, const Lexicons&) {
    if (!r.address || !r.address->street) return false;
    std::vector<std::string> out;
    for (const auto& tok : text::split_ws(*r.address->street)) {
        size_t d = 0;
        while (d < tok.size() && std::isdigit(static_cast<unsigned char>(tok[d]))) ++d;
        std::string_view tail = std::string_view(tok).substr(d);
        if (d > 0 && detail::initial_like(tail)) {
            out.push_back(tok.substr(0, d));
            std::string unit(tail);
            if (unit.size() == 1) unit += '.';
            out.push_back(unit);
        } else {
            out.push_back(tok);
        }
    }
    return rewrite_street(r, text::join(out));
}

// Expands abbreviations from the configured table (P.B. -> PO Box).
inline bool rule_expand_pb(CleanRecord& r, const Lexicons& lex) {
    if (!r.address || !r.address->street) return false;
    std::vector<std::string> out;
    for (const auto& tok : text::split_ws(*r.address->street)) {
        if (auto full = lex.expand(tok))
            for (auto& part : text::split_ws(*full)) out.push_back(part);
        else
            out.push_back(tok);
    }
    return rewrite_street(r, text::join(out));
}

}  // namespace detail

inline const std::vector<StandardizationRule>& rule_registry() {
    static const std::vector<StandardizationRule> rules = {
        {Field::Address, "split_house_unit",
         "split trailing unit letters off house numbers (145F -> 145 F.)",
         &detail::rule_split_house_unit},
        {Field::Address, "expand_pb",
         "expand street abbreviations from the configured table (P.B. -> PO Box)",
         &detail::rule_expand_pb},
    };
    return rules;
}

/// Resolves configured rule ids against the registry, preserving list order.
/// Unknown ids are a startup error that names the valid ids.
inline std::vector<const StandardizationRule*> resolve_rules(
    const std::vector<std::string>& ids) {
    std::vector<const StandardizationRule*> out;
    for (const auto& id : ids) {
        const StandardizationRule* found = nullptr;
        for (const auto& rule : rule_registry())
            if (rule.rule_id == id) found = &rule;
        if (!found) {
            std::string valid;
            for (const auto& rule : rule_registry()) {
                if (!valid.empty()) valid += ", ";
                valid += rule.rule_id;
            }
            throw ConfigError("unknown standardization rule '" + id +
                              "' (valid ids: " + valid + ")");
        }
        out.push_back(found);
    }
    return out;
}

inline std::vector<const StandardizationRule*> default_rules() {
    return resolve_rules({"split_house_unit", "expand_pb"});
}

/// Applies rules in list order; stable under re-application.
inline CleanRecord apply_rules(CleanRecord record,
                               const std::vector<const StandardizationRule*>& rules,
                               const Lexicons& lex = Lexicons::defaults()) {
    for (const auto* rule : rules) {
        if (rule->apply(record, lex)) {
            record.statuses[rule->field].state = FieldState::Corrected;
            record.append_status_note(rule->field, rule->rule_id);
        }
    }
    return record;
}

/// Maps parse results onto the canonical CleanRecord form: titles stripped,
/// full dates as ISO, identifiers re-hyphenated, addresses assembled as
/// house + street + leftover with the configured rules applied. Fields that
/// cannot be repaired become absent with an Invalid status, never a failure.
inline CleanRecord standardize(const ParsedRecord& parsed,
                               const Lexicons& lex = Lexicons::defaults(),
                               const std::vector<const StandardizationRule*>& rules =
                                   default_rules()) {
    CleanRecord r;
    r.row_index = parsed.raw.row_index;

    r.author_id = parsed.raw.author_id;
    r.set_status(Field::AuthorId,
                 r.author_id ? FieldState::Present : FieldState::Missing);

    if (parsed.name) {
        const NameParse& np = *parsed.name;
        r.titles = np.titles;
        r.given = np.given;
        r.middle = np.middle;
        r.family = np.family;
        r.name_order = np.order_confidence;
        if (np.failed) {
            r.set_status(Field::Name, FieldState::Invalid, "no name tokens");
        } else {
            std::vector<std::string> parts;
            for (const auto* part : {&np.given, &np.middle, &np.family})
                if (*part) parts.push_back(**part);
            bool changed = text::join(parts) != *parsed.raw.name;
            r.set_status(Field::Name,
                         changed ? FieldState::Corrected : FieldState::Present,
                         changed ? "strip_titles" : "");
        }
    } else {
        r.set_status(Field::Name, FieldState::Missing);
    }

    if (parsed.date) {
        const DateParse& dp = *parsed.date;
        switch (dp.precision) {
            case DatePrecision::Full:
                r.birth_date = BirthDate{*dp.year, dp.month, dp.day};
                if (r.birth_date->iso() != *parsed.raw.birth_date_raw)
                    r.set_status(Field::BirthDate, FieldState::Corrected, "iso_date");
                else
                    r.set_status(Field::BirthDate, FieldState::Present);
                break;
            case DatePrecision::YearOnly:
                r.birth_date = BirthDate{*dp.year, std::nullopt, std::nullopt};
                r.set_status(Field::BirthDate, FieldState::Corrected,
                             "year_only_retained");
                break;
            case DatePrecision::Unparseable:
                r.set_status(Field::BirthDate, FieldState::Invalid,
                             "invalid_date: " + dp.note);
                break;
        }
    } else {
        r.set_status(Field::BirthDate, FieldState::Missing);
    }

    if (parsed.orcid) {
        const OrcidParse& op = *parsed.orcid;
        switch (op.validity) {
            case OrcidValidity::CanonicalHyphenated:
                r.orcid = op.canonical();
                r.set_status(Field::Orcid, FieldState::Present);
                break;
            case OrcidValidity::Reformatted:
                r.orcid = op.canonical();
                r.set_status(Field::Orcid, FieldState::Corrected, "hyphenate_orcid");
                break;
            case OrcidValidity::AllZero:
                r.set_status(Field::Orcid, FieldState::Invalid, "all_zero_orcid");
                break;
            case OrcidValidity::StructurallyInvalid:
                r.set_status(Field::Orcid, FieldState::Invalid, "malformed_orcid");
                break;
        }
    } else {
        r.set_status(Field::Orcid, FieldState::Missing);
    }

    if (parsed.address) {
        const AddressParse& ap = *parsed.address;
        StructuredAddress a;
        a.zip = ap.zip_candidate;
        a.state = ap.state;
        a.city = ap.city;
        std::vector<std::string> street_parts = ap.house_tokens;
        if (ap.street_name) street_parts.push_back(*ap.street_name);
        for (const auto& tok : ap.leftover) street_parts.push_back(tok);
        if (!street_parts.empty()) a.street = text::join(street_parts);
        if (!a.empty()) {
            r.address = a;
            bool changed = a.canonical() != *parsed.raw.address_raw;
            r.set_status(Field::Address,
                         changed ? FieldState::Corrected : FieldState::Present,
                         changed ? "canonical_address" : "");
        } else {
            r.set_status(Field::Address, FieldState::Invalid, "unparseable_address");
        }
    } else {
        r.set_status(Field::Address, FieldState::Missing);
    }

    return apply_rules(std::move(r), rules, lex);
}

}  // namespace riscleanse
