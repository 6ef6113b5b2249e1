#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "riscleanse/errors.hpp"
#include "riscleanse/record.hpp"
#include "riscleanse/similarity.hpp"
#include "riscleanse/text.hpp"
#include "riscleanse/union_find.hpp"

namespace riscleanse {

/// Identifier-dominant default weighting; renormalized over the fields
/// present in both records of a pair.
struct MatchWeights {
    double orcid = 0.35;
    double family = 0.20;
    double given = 0.15;
    double birth_date = 0.15;
    double address = 0.10;
    double author_id = 0.05;

    void validate() const {
        double sum = 0;
        for (double w : {orcid, family, given, birth_date, address, author_id}) {
            if (w < 0) throw ConfigError("matching: weights must be non-negative");
            sum += w;
        }
        if (sum <= 0) throw ConfigError("matching: weights must not all be zero");
    }
};

enum class Verdict { Match, NonMatch, Barred };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Match: return "match";
        case Verdict::NonMatch: return "non_match";
        case Verdict::Barred: return "barred";
    }
    return "?";
}

struct MatchScore {
    int a = 0, b = 0;  // row indexes, a < b
    std::map<std::string, double> field_scores;  // absent fields contribute nothing
    double total = 0.0;
    Verdict verdict = Verdict::NonMatch;
    std::string rule;  // hard rule that decided the verdict, if any
};

/// A connected component under Match edges; singletons are clusters too.
struct DuplicateCluster {
    std::vector<int> member_rows;
    std::vector<MatchScore> evidence;
};

namespace detail {

inline bool soundexable(const std::optional<std::string>& s) {
    return s && !s->empty() && std::isalpha(static_cast<unsigned char>((*s)[0]));
}

}  // namespace detail

/// Blocking keys: soundex of the family name, soundex of the given name (so
/// records whose two-token order was swapped still meet), and a shared
/// author-id key. Records with no usable key land in the residual block.
inline std::map<std::string, std::vector<int>> block(const std::vector<CleanRecord>& records) {
    std::map<std::string, std::vector<int>> blocks;
    for (const auto& r : records) {
        std::set<std::string> keys;
        if (detail::soundexable(r.family)) keys.insert(soundex(*r.family));
        if (detail::soundexable(r.given)) keys.insert(soundex(*r.given));
        if (r.author_id) keys.insert("id:" + *r.author_id);
        if (keys.empty()) keys.insert("~residual");
        for (const auto& k : keys) blocks[k].push_back(r.row_index);
    }
    return blocks;
}

inline std::vector<std::pair<int, int>> candidate_pairs(
    const std::map<std::string, std::vector<int>>& blocks) {
    std::set<std::pair<int, int>> pairs;
    for (const auto& [key, rows] : blocks)
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = i + 1; j < rows.size(); ++j)
                pairs.insert({std::min(rows[i], rows[j]), std::max(rows[i], rows[j])});
    return {pairs.begin(), pairs.end()};
}

/// Scores one pair. Hard rules first: differing non-null author ids bar the
/// pair outright (the curated key is authoritative), as do differing valid
/// ORCIDs; a shared author id decides Match the same way. Otherwise the
/// weight-renormalized similarity over the fields present in both records is
/// compared against the threshold. Ambiguous two-token names are scored in
/// both orientations and the better joint name contribution wins.
inline MatchScore score_pair(const CleanRecord& a, const CleanRecord& b,
                             const MatchWeights& weights, double threshold) {
    weights.validate();
    if (threshold < 0.0 || threshold > 1.0)
        throw ConfigError("matching: threshold must lie in [0, 1]");

    MatchScore s;
    s.a = std::min(a.row_index, b.row_index);
    s.b = std::max(a.row_index, b.row_index);

    double num = 0, den = 0;
    auto score_field = [&](const char* name, double weight, double sim) {
        s.field_scores[name] = sim;
        num += weight * sim;
        den += weight;
    };

    if (a.author_id && b.author_id)
        score_field("author_id", weights.author_id, *a.author_id == *b.author_id ? 1.0 : 0.0);
    if (a.orcid && b.orcid)
        score_field("orcid", weights.orcid, *a.orcid == *b.orcid ? 1.0 : 0.0);

    // Names: try the swapped orientation for Ambiguous members.
    const bool fam = a.family && b.family;
    const bool giv = a.given && b.given;
    if (fam || giv) {
        auto name_pair = [&](bool swap_a, bool swap_b) {
            auto fa = swap_a ? a.given : a.family, ga = swap_a ? a.family : a.given;
            auto fb = swap_b ? b.given : b.family, gb = swap_b ? b.family : b.given;
            double contrib = 0;
            if (fa && fb) contrib += weights.family * jaro_winkler(text::lower(*fa), text::lower(*fb));
            if (ga && gb) contrib += weights.given * jaro_winkler(text::lower(*ga), text::lower(*gb));
            return contrib;
        };
        const bool a_amb = a.name_order == NameOrder::Ambiguous && a.given && a.family;
        const bool b_amb = b.name_order == NameOrder::Ambiguous && b.given && b.family;
        double best = name_pair(false, false);
        if (a_amb) best = std::max(best, name_pair(true, false));
        if (b_amb) best = std::max(best, name_pair(false, true));
        if (a_amb && b_amb) best = std::max(best, name_pair(true, true));

        double fam_w = fam ? weights.family : 0.0;
        double giv_w = giv ? weights.given : 0.0;
        double joint = fam_w + giv_w;
        s.field_scores["name"] = joint > 0 ? best / joint : 0.0;
        num += best;
        den += joint;
    }

    if (a.birth_date && b.birth_date) {
        const BirthDate& da = *a.birth_date;
        const BirthDate& db = *b.birth_date;
        double sim = 0;
        if (da.full() && db.full())
            sim = da == db ? 1.0 : 0.0;
        else
            sim = da.year == db.year ? 0.5 : 0.0;
        score_field("birth_date", weights.birth_date, sim);
    }

    if (a.field_present(Field::Address) && b.field_present(Field::Address))
        score_field("address", weights.address,
                    jaro_winkler(text::lower(a.address->canonical()),
                                 text::lower(b.address->canonical())));

    s.total = den > 0 ? num / den : 0.0;

    if (a.author_id && b.author_id && *a.author_id != *b.author_id) {
        s.verdict = Verdict::Barred;
        s.rule = "author_id_conflict";
    } else if (a.orcid && b.orcid && *a.orcid != *b.orcid) {
        s.verdict = Verdict::Barred;
        s.rule = "orcid_conflict";
    } else if (a.author_id && b.author_id) {
        s.verdict = Verdict::Match;
        s.rule = "author_id_equal";
    } else {
        s.verdict = s.total >= threshold ? Verdict::Match : Verdict::NonMatch;
    }
    return s;
}

/// Scores every blocked candidate pair, in deterministic (a, b) order.
inline std::vector<MatchScore> score_blocked(const std::vector<CleanRecord>& records,
                                             const MatchWeights& weights,
                                             double threshold) {
    std::map<int, const CleanRecord*> by_row;
    for (const auto& r : records) by_row[r.row_index] = &r;
    std::vector<MatchScore> scores;
    for (auto [ra, rb] : candidate_pairs(block(records)))
        scores.push_back(score_pair(*by_row.at(ra), *by_row.at(rb), weights, threshold));
    return scores;
}

/// Union-find over Match edges. Every row appears in exactly one cluster;
/// rows untouched by any Match edge come out as singletons. Clusters are
/// ordered by their smallest member row, members ascending, and each cluster
/// carries the scores of all pairs that fell inside it.
inline std::vector<DuplicateCluster> cluster(const std::vector<MatchScore>& scores,
                                             const std::vector<int>& all_rows) {
    std::map<int, size_t> pos;
    for (size_t i = 0; i < all_rows.size(); ++i) pos[all_rows[i]] = i;

    UnionFind uf(all_rows.size());
    for (const auto& s : scores) {
        if (s.verdict != Verdict::Match) continue;
        auto ia = pos.find(s.a), ib = pos.find(s.b);
        if (ia == pos.end() || ib == pos.end()) continue;
        uf.unite(ia->second, ib->second);
    }

    std::map<size_t, int> root_min;
    for (int row : all_rows) {
        auto [it, inserted] = root_min.try_emplace(uf.find(pos[row]), row);
        if (!inserted && row < it->second) it->second = row;
    }
    std::map<int, std::vector<int>> by_root_min;  // min member row -> members
    for (int row : all_rows) by_root_min[root_min[uf.find(pos[row])]].push_back(row);

    std::vector<DuplicateCluster> clusters;
    for (auto& [min_row, members] : by_root_min) {
        DuplicateCluster c;
        std::sort(members.begin(), members.end());
        c.member_rows = members;
        std::set<int> member_set(members.begin(), members.end());
        for (const auto& s : scores)
            if (member_set.count(s.a) && member_set.count(s.b)) c.evidence.push_back(s);
        clusters.push_back(std::move(c));
    }
    return clusters;
}

}  // namespace riscleanse
