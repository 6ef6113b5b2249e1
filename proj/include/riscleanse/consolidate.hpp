#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "riscleanse/errors.hpp"
#include "riscleanse/match.hpp"
#include "riscleanse/record.hpp"
#include "riscleanse/similarity.hpp"

namespace riscleanse {

enum class SurvivorRule { MajorityNonNull, MostCompleteRecord, LongestValue };

inline const char* to_string(SurvivorRule r) {
    switch (r) {
        case SurvivorRule::MajorityNonNull: return "majority_non_null";
        case SurvivorRule::MostCompleteRecord: return "most_complete_record";
        case SurvivorRule::LongestValue: return "longest_value";
    }
    return "?";
}

/// Per-field survivorship rules; the global tie-break is always the lowest
/// row_index, which keeps merges independent of member order.
struct SurvivorshipPolicy {
    SurvivorRule default_rule = SurvivorRule::MajorityNonNull;
    std::map<Field, SurvivorRule> per_field;

    SurvivorRule rule_for(Field f) const {
        auto it = per_field.find(f);
        return it == per_field.end() ? default_rule : it->second;
    }
};

/// A consolidated record plus, per field, the member rows that carried the
/// surviving value.
struct GoldenRecord {
    CleanRecord record;
    std::vector<int> cluster_rows;
    std::map<std::string, std::vector<int>> provenance;
};

namespace detail {

inline bool agrees(const std::string& value, const std::string& anchor) {
    return value == anchor;
}

inline bool nearly_agrees(const std::string& value, const std::string& anchor) {
    return levenshtein(value, anchor) <= 1;
}

inline void flip_name(CleanRecord& r) {
    std::swap(r.given, r.family);
    r.name_order = NameOrder::FamilyFirst;
    r.statuses[Field::Name].state = FieldState::Corrected;
    r.append_status_note(Field::Name, "name_order_flip");
}

}  // namespace detail

/// Establishes a family-name anchor for a cluster and orients all Ambiguous
/// members to it. The anchor is the majority family of the unambiguous
/// members; when every member is ambiguous it is the most frequent name
/// token across the cluster, and on a frequency tie the orientation of the
/// lowest-row member stands. Family-name typos within edit distance 1 of the
/// post-orientation majority vote with the majority (Scoth -> Scott happens
/// here). Wholly unresolvable clusters are left as parsed.
inline void reconcile_names(std::vector<CleanRecord*>& members) {
    std::vector<CleanRecord*> named;
    for (auto* m : members)
        if (m->family || m->given) named.push_back(m);
    if (named.size() < 1) return;
    std::sort(named.begin(), named.end(),
              [](const CleanRecord* a, const CleanRecord* b) { return a->row_index < b->row_index; });

    std::optional<std::string> anchor;
    std::map<std::string, int> family_votes;
    for (const auto* m : named)
        if (m->name_order != NameOrder::Ambiguous && m->family) ++family_votes[*m->family];
    if (!family_votes.empty()) {
        int best = 0;
        for (const auto& [value, count] : family_votes) best = std::max(best, count);
        for (const auto* m : named)  // lowest row among the tied majority values
            if (m->name_order != NameOrder::Ambiguous && m->family &&
                family_votes[*m->family] == best) {
                anchor = *m->family;
                break;
            }
    } else {
        std::map<std::string, int> token_votes;
        for (const auto* m : named) {
            if (m->given) ++token_votes[*m->given];
            if (m->family) ++token_votes[*m->family];
        }
        int best = 0;
        std::string best_token;
        bool tied = false;
        for (const auto& [token, count] : token_votes) {
            if (count > best) {
                best = count;
                best_token = token;
                tied = false;
            } else if (count == best) {
                tied = true;
            }
        }
        if (best > 1 && !tied)
            anchor = best_token;
        else if (named.front()->family)
            anchor = *named.front()->family;  // tie: lowest row's orientation stands
    }
    if (!anchor) return;

    for (auto* m : named) {
        if (m->name_order != NameOrder::Ambiguous || !m->given || !m->family) continue;
        if (detail::agrees(*m->family, *anchor)) continue;
        if (detail::agrees(*m->given, *anchor)) {
            detail::flip_name(*m);
            continue;
        }
        if (detail::nearly_agrees(*m->family, *anchor)) continue;
        if (detail::nearly_agrees(*m->given, *anchor)) detail::flip_name(*m);
    }

    // Post-orientation majority family; near misses vote with the majority.
    family_votes.clear();
    for (const auto* m : named)
        if (m->family) ++family_votes[*m->family];
    int best = 0;
    for (const auto& [value, count] : family_votes) best = std::max(best, count);
    std::string majority;
    for (const auto* m : named)
        if (m->family && family_votes[*m->family] == best) {
            majority = *m->family;
            break;
        }
    if (majority.empty()) return;
    for (auto* m : named) {
        if (!m->family || *m->family == majority) continue;
        if (levenshtein(*m->family, majority) == 1) {
            m->family = majority;
            m->statuses[Field::Name].state = FieldState::Corrected;
            m->append_status_note(Field::Name, "family_typo_vote");
        }
    }
}

/// Majority vote over the canonical renderings of the present addresses
/// (tie: lowest row). Members whose present address differs are rewritten to
/// the winning member's structured address; absent addresses stay absent.
inline void reconcile_addresses(std::vector<CleanRecord*>& members) {
    std::vector<CleanRecord*> with_address;
    for (auto* m : members)
        if (m->field_present(Field::Address)) with_address.push_back(m);
    if (with_address.size() < 2) return;
    std::sort(with_address.begin(), with_address.end(),
              [](const CleanRecord* a, const CleanRecord* b) { return a->row_index < b->row_index; });

    std::map<std::string, int> votes;
    for (const auto* m : with_address) ++votes[m->address->canonical()];
    int best = 0;
    for (const auto& [value, count] : votes) best = std::max(best, count);
    const CleanRecord* winner = nullptr;
    for (const auto* m : with_address)
        if (votes[m->address->canonical()] == best) {
            winner = m;
            break;
        }

    for (auto* m : with_address) {
        if (m->address->canonical() == winner->address->canonical()) continue;
        m->address = winner->address;
        m->statuses[Field::Address].state = FieldState::Corrected;
        m->append_status_note(Field::Address, "address_majority");
    }
}

inline void reconcile_cluster(std::vector<CleanRecord*>& members) {
    reconcile_names(members);
    reconcile_addresses(members);
}

namespace detail {

struct FieldValue {
    const CleanRecord* holder = nullptr;
    std::string repr;  // string form used for voting and provenance
};

inline std::optional<std::string> field_repr(const CleanRecord& r, const std::string& key) {
    if (key == "author_id") return r.author_id;
    if (key == "given") return r.given;
    if (key == "middle") return r.middle;
    if (key == "family") return r.family;
    if (key == "orcid") return r.orcid;
    if (key == "birth_date") {
        if (!r.birth_date) return std::nullopt;
        return r.birth_date->full() ? r.birth_date->iso()
                                    : "year:" + std::to_string(r.birth_date->year);
    }
    if (key == "address")
        return r.field_present(Field::Address)
                   ? std::optional<std::string>(r.address->canonical())
                   : std::nullopt;
    return std::nullopt;
}

inline int completeness_count(const CleanRecord& r) {
    int n = 0;
    for (const char* key : {"author_id", "given", "middle", "family", "orcid",
                            "birth_date", "address"})
        if (field_repr(r, key)) ++n;
    return n;
}

// Picks the surviving holder for one field; members must be sorted by row.
inline const CleanRecord* survivor(const std::vector<const CleanRecord*>& members,
                                   const std::string& key, SurvivorRule rule) {
    std::vector<const CleanRecord*> holders;
    for (const auto* m : members)
        if (field_repr(*m, key)) holders.push_back(m);
    if (holders.empty()) return nullptr;

    switch (rule) {
        case SurvivorRule::MajorityNonNull: {
            std::map<std::string, int> votes;
            for (const auto* m : holders) ++votes[*field_repr(*m, key)];
            int best = 0;
            for (const auto& [value, count] : votes) best = std::max(best, count);
            for (const auto* m : holders)
                if (votes[*field_repr(*m, key)] == best) return m;
            return nullptr;
        }
        case SurvivorRule::MostCompleteRecord: {
            const CleanRecord* best = holders.front();
            for (const auto* m : holders)
                if (completeness_count(*m) > completeness_count(*best)) best = m;
            return best;
        }
        case SurvivorRule::LongestValue: {
            const CleanRecord* best = holders.front();
            for (const auto* m : holders)
                if (field_repr(*m, key)->size() > field_repr(*best, key)->size()) best = m;
            return best;
        }
    }
    return nullptr;
}

inline Field field_of_key(const std::string& key) {
    if (key == "author_id") return Field::AuthorId;
    if (key == "orcid") return Field::Orcid;
    if (key == "birth_date") return Field::BirthDate;
    if (key == "address") return Field::Address;
    return Field::Name;  // given/middle/family
}

}  // namespace detail

/// Reduces one cluster to a golden record. Member names and addresses are
/// reconciled first, then every field is decided by the survivorship policy
/// (ties always to the lowest row). Every surviving value occurs verbatim in
/// at least one reconciled member, and provenance records which ones.
inline GoldenRecord merge(const DuplicateCluster& cluster,
                          const std::vector<CleanRecord>& records,
                          const SurvivorshipPolicy& policy = {}) {
    if (cluster.member_rows.empty())
        throw std::invalid_argument("merge: empty cluster");

    std::map<int, const CleanRecord*> by_row;
    for (const auto& r : records) by_row[r.row_index] = &r;

    std::vector<CleanRecord> member_copies;
    for (int row : cluster.member_rows) {
        auto it = by_row.find(row);
        if (it == by_row.end())
            throw std::invalid_argument("merge: cluster references unknown row " +
                                        std::to_string(row));
        member_copies.push_back(*it->second);
    }
    std::sort(member_copies.begin(), member_copies.end(),
              [](const CleanRecord& a, const CleanRecord& b) { return a.row_index < b.row_index; });

    std::vector<CleanRecord*> member_ptrs;
    for (auto& m : member_copies) member_ptrs.push_back(&m);
    reconcile_cluster(member_ptrs);

    std::vector<const CleanRecord*> sorted;
    for (const auto& m : member_copies) sorted.push_back(&m);

    GoldenRecord g;
    g.cluster_rows = cluster.member_rows;
    g.record.row_index = cluster.member_rows.front();
    g.record.name_order = NameOrder::GivenFirst;

    for (const char* key : {"author_id", "given", "middle", "family", "orcid",
                            "birth_date", "address"}) {
        const CleanRecord* winner =
            detail::survivor(sorted, key, policy.rule_for(detail::field_of_key(key)));
        Field f = detail::field_of_key(key);
        if (!winner) {
            g.record.statuses.try_emplace(f, FieldStatus{FieldState::Missing, ""});
            continue;
        }
        const std::string repr = *detail::field_repr(*winner, key);
        if (key == std::string("author_id")) g.record.author_id = winner->author_id;
        else if (key == std::string("given")) g.record.given = winner->given;
        else if (key == std::string("middle")) g.record.middle = winner->middle;
        else if (key == std::string("family")) g.record.family = winner->family;
        else if (key == std::string("orcid")) g.record.orcid = winner->orcid;
        else if (key == std::string("birth_date")) g.record.birth_date = winner->birth_date;
        else g.record.address = winner->address;

        std::vector<int> rows;
        for (const auto* m : sorted)
            if (auto v = detail::field_repr(*m, key); v && *v == repr)
                rows.push_back(m->row_index);
        g.provenance[key] = rows;
        g.record.statuses[f] = FieldStatus{FieldState::Present, ""};
    }

    std::set<std::string> seen;
    for (const auto* m : sorted)
        for (const auto& t : m->titles)
            if (seen.insert(t).second) g.record.titles.push_back(t);

    return g;
}

}  // namespace riscleanse
