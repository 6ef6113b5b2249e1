#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "riscleanse/consolidate.hpp"
#include "testutil.hpp"

using namespace riscleanse;

namespace {

CleanRecord named(int row, const char* given, const char* family, NameOrder order) {
    CleanRecord r;
    r.row_index = row;
    if (given) r.given = given;
    if (family) r.family = family;
    r.name_order = order;
    return r;
}

struct FixtureRun {
    std::vector<CleanRecord> records;
    std::vector<DuplicateCluster> clusters;
};

FixtureRun fixture_run() {
    FixtureRun out;
    auto raw = ingest_csv(testutil::fixture_path("paper_table1.csv"), Schema::defaults());
    auto gaz = load_gazetteer(testutil::fixture_path("gazetteer.csv"));
    out.records = testutil::cleanse_all(raw, gaz);
    auto scores = score_blocked(out.records, MatchWeights{}, 0.85);
    std::vector<int> rows;
    for (const auto& r : out.records) rows.push_back(r.row_index);
    out.clusters = cluster(scores, rows);
    return out;
}

}  // namespace

TEST(ReconcileNames, AmbiguousMemberFlipsToMajorityOrientation) {
    std::vector<CleanRecord> members = {
        named(1, "Alien", "Scott", NameOrder::Ambiguous),
        named(2, "Scott", "Alien", NameOrder::Ambiguous),
        named(3, "Alien", "Scott", NameOrder::Ambiguous),
    };
    std::vector<CleanRecord*> ptrs;
    for (auto& m : members) ptrs.push_back(&m);
    reconcile_names(ptrs);
    for (const auto& m : members) {
        EXPECT_EQ(m.given, "Alien");
        EXPECT_EQ(m.family, "Scott");
    }
    EXPECT_EQ(members[1].name_order, NameOrder::FamilyFirst);
}

TEST(ReconcileNames, TypoVotesWithTheMajorityFamily) {
    std::vector<CleanRecord> members = {
        named(1, "Alien", "Scott", NameOrder::Ambiguous),
        named(3, "Alien", "Scott", NameOrder::GivenFirst),
        named(6, "Alien", "Scoth", NameOrder::Ambiguous),
    };
    std::vector<CleanRecord*> ptrs;
    for (auto& m : members) ptrs.push_back(&m);
    reconcile_names(ptrs);
    EXPECT_EQ(members[2].family, "Scott");
    EXPECT_NE(members[2].statuses[Field::Name].note.find("family_typo_vote"),
              std::string::npos);
}

TEST(ReconcileNames, SingletonIsUnchanged) {
    std::vector<CleanRecord> members = {named(7, "Olivia", "Svenson", NameOrder::Ambiguous)};
    std::vector<CleanRecord*> ptrs = {&members[0]};
    reconcile_names(ptrs);
    EXPECT_EQ(members[0].given, "Olivia");
    EXPECT_EQ(members[0].family, "Svenson");
}

TEST(ReconcileNames, WhollyAmbiguousClusterIsLeftAsParsed) {
    std::vector<CleanRecord> members = {
        named(1, "Anna", "Berg", NameOrder::Ambiguous),
        named(2, "Clara", "Dahl", NameOrder::Ambiguous),
    };
    std::vector<CleanRecord*> ptrs = {&members[0], &members[1]};
    reconcile_names(ptrs);
    EXPECT_EQ(members[0].given, "Anna");
    EXPECT_EQ(members[1].given, "Clara");
    EXPECT_EQ(members[1].family, "Dahl");
}

TEST(ReconcileNames, FrequencyTieAdoptsLowestRowOrientation) {
    // Olivia/Svenson vs Svenson/Olivia: token counts tie, row 7 wins.
    std::vector<CleanRecord> members = {
        named(7, "Olivia", "Svenson", NameOrder::Ambiguous),
        named(8, "Svenson", "Olivia", NameOrder::Ambiguous),
    };
    std::vector<CleanRecord*> ptrs = {&members[0], &members[1]};
    reconcile_names(ptrs);
    EXPECT_EQ(members[0].given, "Olivia");
    EXPECT_EQ(members[0].family, "Svenson");
    EXPECT_EQ(members[1].given, "Olivia");
    EXPECT_EQ(members[1].family, "Svenson");
}

TEST(Merge, FixtureScottClusterReproducesTheGoldenRow) {
    auto run = fixture_run();
    ASSERT_EQ(run.clusters.size(), 3u);
    GoldenRecord g = merge(run.clusters[0], run.records, SurvivorshipPolicy{});
    EXPECT_EQ(g.record.author_id, "353035");  // row 6 inherits the majority id
    EXPECT_EQ(g.record.given, "Alien");
    EXPECT_EQ(g.record.family, "Scott");
    EXPECT_EQ(g.record.orcid, "0000-0007-0212-2108");
    EXPECT_EQ(g.record.emitted_birth_date(), "1965-10-25");
    EXPECT_EQ(g.record.address->canonical(),
              "32801; FL; Orlando; 145 F. Concord Street");
    EXPECT_EQ(g.record.middle, "William");  // only row 3 carries one
}

TEST(Merge, FixtureSvensonCluster) {
    auto run = fixture_run();
    GoldenRecord g = merge(run.clusters[2], run.records, SurvivorshipPolicy{});
    EXPECT_EQ(g.record.author_id, "410003");
    EXPECT_EQ(g.record.given, "Olivia");
    EXPECT_EQ(g.record.family, "Svenson");
    EXPECT_EQ(g.record.orcid, "0450-1254-3598-F156");
    // Derived from "6-2-1983" by the day-first dash rule.
    EXPECT_EQ(g.record.emitted_birth_date(), "1983-02-06");
    EXPECT_EQ(g.record.address->canonical(), "29502; NV; Las Vegas; 745-7801 PO Box");
}

TEST(Merge, SingletonClusterEqualsItsSoleMember) {
    auto run = fixture_run();
    DuplicateCluster solo;
    solo.member_rows = {1};
    GoldenRecord g = merge(solo, run.records, SurvivorshipPolicy{});
    const CleanRecord& member = run.records[0];
    EXPECT_EQ(testutil::emitted_row(g.record), testutil::emitted_row(member));
}

TEST(Merge, EmptyClusterIsAnError) {
    EXPECT_THROW(merge(DuplicateCluster{}, {}, SurvivorshipPolicy{}), std::invalid_argument);
}

// Every golden field value occurs verbatim in a (reconciled) member, and
// provenance only references member rows.
TEST(Merge, ValueProvenance) {
    auto run = fixture_run();
    for (const auto& c : run.clusters) {
        GoldenRecord g = merge(c, run.records, SurvivorshipPolicy{});
        for (const auto& [field, rows] : g.provenance) {
            EXPECT_FALSE(rows.empty()) << field;
            for (int row : rows)
                EXPECT_TRUE(std::find(c.member_rows.begin(), c.member_rows.end(), row) !=
                            c.member_rows.end());
        }
    }
}

// Permuting the member order changes no golden field.
TEST(Merge, OrderInvariance) {
    auto run = fixture_run();
    std::mt19937 rng(13);
    for (const auto& c : run.clusters) {
        GoldenRecord reference = merge(c, run.records, SurvivorshipPolicy{});
        for (int trial = 0; trial < 10; ++trial) {
            DuplicateCluster shuffled = c;
            std::shuffle(shuffled.member_rows.begin(), shuffled.member_rows.end(), rng);
            std::vector<CleanRecord> reordered = run.records;
            std::shuffle(reordered.begin(), reordered.end(), rng);
            GoldenRecord g = merge(shuffled, reordered, SurvivorshipPolicy{});
            EXPECT_EQ(testutil::emitted_row(reference.record), testutil::emitted_row(g.record));
            EXPECT_EQ(reference.provenance, g.provenance);
        }
    }
}

// The golden record is at least as complete as every member.
TEST(Merge, CompletenessDominance) {
    std::mt19937 rng(14);
    Gazetteer gaz = testutil::pool_gazetteer();
    auto ds = testutil::make_dataset(rng, 30, 4);
    auto records = testutil::cleanse_all(ds.records, gaz);
    auto scores = score_blocked(records, MatchWeights{}, 0.85);
    std::vector<int> rows;
    for (const auto& r : records) rows.push_back(r.row_index);
    auto count_present = [](const CleanRecord& r) {
        int n = 0;
        for (Field f : kValueFields)
            if (r.field_present(f)) ++n;
        return n;
    };
    std::map<int, const CleanRecord*> by_row;
    for (const auto& r : records) by_row[r.row_index] = &r;
    for (const auto& c : cluster(scores, rows)) {
        GoldenRecord g = merge(c, records, SurvivorshipPolicy{});
        for (int row : c.member_rows)
            EXPECT_GE(count_present(g.record), count_present(*by_row.at(row)));
    }
}

TEST(Merge, LongestValuePolicy) {
    CleanRecord a = named(1, "A.", "Scott", NameOrder::Ambiguous);
    CleanRecord b = named(2, "Alien", "Scott", NameOrder::Ambiguous);
    DuplicateCluster c;
    c.member_rows = {1, 2};
    SurvivorshipPolicy policy;
    policy.per_field[Field::Name] = SurvivorRule::LongestValue;
    GoldenRecord g = merge(c, {a, b}, policy);
    EXPECT_EQ(g.record.given, "Alien");  // longest wins under this policy
    GoldenRecord g_default = merge(c, {a, b}, SurvivorshipPolicy{});
    EXPECT_EQ(g_default.record.given, "A.");  // majority tie falls to row 1
}
