#include <gtest/gtest.h>

#include <random>

#include "riscleanse/match.hpp"
#include "testutil.hpp"

using namespace riscleanse;

namespace {

// The paper fixture after standardize+enrich, keyed by row.
std::vector<CleanRecord> fixture_records() {
    auto raw = ingest_csv(testutil::fixture_path("paper_table1.csv"), Schema::defaults());
    auto gaz = load_gazetteer(testutil::fixture_path("gazetteer.csv"));
    return testutil::cleanse_all(raw, gaz);
}

const CleanRecord& row(const std::vector<CleanRecord>& rs, int row_index) {
    for (const auto& r : rs)
        if (r.row_index == row_index) return r;
    throw std::logic_error("no such row");
}

MatchScore score_rows(const std::vector<CleanRecord>& rs, int a, int b) {
    return score_pair(row(rs, a), row(rs, b), MatchWeights{}, 0.85);
}

}  // namespace

TEST(Block, FixtureScottAndSvensonBlocks) {
    auto rs = fixture_records();
    auto blocks = block(rs);
    // All Scott-family rows (including the Scoth typo and the swapped
    // "Scott Alien") meet in S230; both Svenson rows meet in S152.
    ASSERT_TRUE(blocks.count("S230"));
    EXPECT_EQ(blocks["S230"], (std::vector<int>{1, 2, 3, 4, 5, 6}));
    ASSERT_TRUE(blocks.count("S152"));
    EXPECT_EQ(blocks["S152"], (std::vector<int>{7, 8}));
    // Shared author ids co-block.
    ASSERT_TRUE(blocks.count("id:353036"));
    EXPECT_EQ(blocks["id:353036"], (std::vector<int>{4, 5}));
}

TEST(Block, EmptyAndSingleton) {
    EXPECT_TRUE(block({}).empty());
    CleanRecord r;
    r.row_index = 1;
    r.family = "Scott";
    auto blocks = block({r});
    ASSERT_EQ(blocks.size(), 1u);
    EXPECT_EQ(blocks["S230"], (std::vector<int>{1}));
}

TEST(Block, RecordsLackingFamilyAndAuthorIdGoToResidualBlock) {
    CleanRecord r;
    r.row_index = 3;
    auto blocks = block({r});
    ASSERT_TRUE(blocks.count("~residual"));
    EXPECT_EQ(blocks["~residual"], (std::vector<int>{3}));
}

TEST(ScorePair, DifferingAuthorIdsAreBarred) {
    auto rs = fixture_records();
    auto s = score_rows(rs, 1, 4);
    EXPECT_EQ(s.verdict, Verdict::Barred);
    EXPECT_EQ(s.rule, "author_id_conflict");
}

TEST(ScorePair, SharedAuthorIdDecidesMatch) {
    auto rs = fixture_records();
    // Rows 4 and 5 disagree on the birth year and parse with swapped name
    // order; the shared curated key is what merges them.
    auto s = score_rows(rs, 4, 5);
    EXPECT_EQ(s.verdict, Verdict::Match);
    EXPECT_EQ(s.rule, "author_id_equal");
    auto s78 = score_rows(rs, 7, 8);
    EXPECT_EQ(s78.verdict, Verdict::Match);
}

TEST(ScorePair, RowSixJoinsViaRowThree) {
    auto rs = fixture_records();
    // Row 6 (no author id) matches row 3 on the re-hyphenated ORCID plus
    // name similarity; row 3 has no birth date to disagree on.
    auto s36 = score_rows(rs, 3, 6);
    EXPECT_EQ(s36.verdict, Verdict::Match);
    EXPECT_GE(s36.total, 0.85);
    // Against rows 1 and 2 the 1956-vs-1965 birth dates push the score
    // under the threshold.
    EXPECT_EQ(score_rows(rs, 1, 6).verdict, Verdict::NonMatch);
    EXPECT_EQ(score_rows(rs, 2, 6).verdict, Verdict::NonMatch);
}

TEST(ScorePair, SharedOrcidAloneDoesNotMergeAcrossClusters) {
    auto rs = fixture_records();
    // Row 5 carries Alien Scott's ORCID but belongs to 353036; against the
    // id-less row 6 the pair stays under the threshold. The orientation
    // search places the equal tokens (Alien/Alien) on the heavier family
    // slot: 0.35 + 0.20*1 + 0.15*jw(Scott,Scoth) over present weight 0.85.
    auto s = score_rows(rs, 5, 6);
    EXPECT_EQ(s.verdict, Verdict::NonMatch);
    EXPECT_NEAR(s.total, (0.35 + 0.20 + 0.15 * 0.92) / 0.85, 1e-9);
}

TEST(ScorePair, RecordAgainstItselfIsAPerfectMatch) {
    auto rs = fixture_records();
    auto s = score_pair(row(rs, 1), row(rs, 1), MatchWeights{}, 0.85);
    EXPECT_DOUBLE_EQ(s.total, 1.0);
    EXPECT_EQ(s.verdict, Verdict::Match);
}

TEST(ScorePair, YearOnlyDateScoresHalfOnMatchingYear) {
    auto rs = fixture_records();
    auto s = score_rows(rs, 7, 8);  // 1983-02-06 vs year-only 1983
    ASSERT_TRUE(s.field_scores.count("birth_date"));
    EXPECT_DOUBLE_EQ(s.field_scores["birth_date"], 0.5);
}

TEST(ScorePair, MissingFieldsRenormalizeInsteadOfScoringZero) {
    CleanRecord a, b;
    a.row_index = 1;
    b.row_index = 2;
    a.family = b.family = "Scott";
    a.given = b.given = "Alien";
    auto s = score_pair(a, b, MatchWeights{}, 0.85);
    EXPECT_DOUBLE_EQ(s.total, 1.0);  // only the name fields carry weight
    EXPECT_EQ(s.verdict, Verdict::Match);
}

TEST(ScorePair, InvalidWeightsOrThresholdAreConfigErrors) {
    CleanRecord a, b;
    MatchWeights negative;
    negative.family = -0.1;
    EXPECT_THROW(score_pair(a, b, negative, 0.5), ConfigError);
    MatchWeights zeros{0, 0, 0, 0, 0, 0};
    EXPECT_THROW(score_pair(a, b, zeros, 0.5), ConfigError);
    EXPECT_THROW(score_pair(a, b, MatchWeights{}, 1.01), ConfigError);
}

TEST(ScorePair, SymmetryOnRandomPairs) {
    std::mt19937 rng(6);
    Gazetteer gaz = testutil::pool_gazetteer();
    auto ds = testutil::make_dataset(rng, 30, 3);
    auto rs = testutil::cleanse_all(ds.records, gaz);
    for (int trial = 0; trial < 500; ++trial) {
        const CleanRecord& a = rs[rng() % rs.size()];
        const CleanRecord& b = rs[rng() % rs.size()];
        auto ab = score_pair(a, b, MatchWeights{}, 0.85);
        auto ba = score_pair(b, a, MatchWeights{}, 0.85);
        EXPECT_DOUBLE_EQ(ab.total, ba.total);
        EXPECT_EQ(ab.verdict, ba.verdict);
    }
}

TEST(Cluster, FixtureClustersMatchTheDerivedPartition) {
    auto rs = fixture_records();
    auto scores = score_blocked(rs, MatchWeights{}, 0.85);
    std::vector<int> all_rows;
    for (const auto& r : rs) all_rows.push_back(r.row_index);
    auto clusters = cluster(scores, all_rows);
    ASSERT_EQ(clusters.size(), 3u);
    EXPECT_EQ(clusters[0].member_rows, (std::vector<int>{1, 2, 3, 6}));
    EXPECT_EQ(clusters[1].member_rows, (std::vector<int>{4, 5}));
    EXPECT_EQ(clusters[2].member_rows, (std::vector<int>{7, 8}));
    // evidence stays within the cluster
    for (const auto& c : clusters) {
        std::set<int> members(c.member_rows.begin(), c.member_rows.end());
        for (const auto& s : c.evidence) {
            EXPECT_TRUE(members.count(s.a));
            EXPECT_TRUE(members.count(s.b));
        }
    }
}

TEST(Cluster, NoMatchEdgesYieldsSingletons) {
    auto clusters = cluster({}, {1, 2, 3});
    ASSERT_EQ(clusters.size(), 3u);
    for (size_t i = 0; i < 3; ++i)
        EXPECT_EQ(clusters[i].member_rows, (std::vector<int>{static_cast<int>(i) + 1}));
}

TEST(Cluster, MatchEdgesAreTransitivelyClosed) {
    MatchScore ab;
    ab.a = 1, ab.b = 2, ab.verdict = Verdict::Match;
    MatchScore bc;
    bc.a = 2, bc.b = 3, bc.verdict = Verdict::Match;
    auto clusters = cluster({ab, bc}, {1, 2, 3, 4});
    ASSERT_EQ(clusters.size(), 2u);
    EXPECT_EQ(clusters[0].member_rows, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(clusters[1].member_rows, (std::vector<int>{4}));
}

// Raising the threshold never adds a Match edge, and the cluster count is
// non-decreasing.
TEST(Cluster, ThresholdMonotonicity) {
    std::mt19937 rng(8);
    Gazetteer gaz = testutil::pool_gazetteer();
    auto ds = testutil::make_dataset(rng, 40, 4);
    auto rs = testutil::cleanse_all(ds.records, gaz);
    std::vector<int> all_rows;
    for (const auto& r : rs) all_rows.push_back(r.row_index);

    size_t prev_clusters = 0;
    std::set<std::pair<int, int>> prev_matches;
    bool first = true;
    for (double threshold : {0.0, 0.2, 0.4, 0.6, 0.8, 0.85, 0.9, 1.0}) {
        auto scores = score_blocked(rs, MatchWeights{}, threshold);
        std::set<std::pair<int, int>> matches;
        for (const auto& s : scores)
            if (s.verdict == Verdict::Match) matches.insert({s.a, s.b});
        size_t n_clusters = cluster(scores, all_rows).size();
        if (!first) {
            for (const auto& m : matches)
                EXPECT_TRUE(prev_matches.count(m)) << "edge appeared when threshold rose";
            EXPECT_GE(n_clusters, prev_clusters);
        }
        prev_matches = matches;
        prev_clusters = n_clusters;
        first = false;
    }
}

// Blocking soundness: on paper-style datasets the blocked Match-pair set
// equals exhaustive all-pairs scoring.
TEST(Block, BlockedMatchesEqualExhaustiveMatches) {
    std::mt19937 rng(9);
    Gazetteer gaz = testutil::pool_gazetteer();
    for (int trial = 0; trial < 10; ++trial) {
        auto ds = testutil::make_dataset(rng, 25, 4);
        auto rs = testutil::cleanse_all(ds.records, gaz);

        std::set<std::pair<int, int>> blocked;
        for (const auto& s : score_blocked(rs, MatchWeights{}, 0.85))
            if (s.verdict == Verdict::Match) blocked.insert({s.a, s.b});

        std::set<std::pair<int, int>> exhaustive;
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = i + 1; j < rs.size(); ++j) {
                auto s = score_pair(rs[i], rs[j], MatchWeights{}, 0.85);
                if (s.verdict == Verdict::Match) exhaustive.insert({s.a, s.b});
            }
        EXPECT_EQ(blocked, exhaustive);
    }
}
