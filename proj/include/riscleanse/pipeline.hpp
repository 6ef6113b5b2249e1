#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "riscleanse/config.hpp"
#include "riscleanse/consolidate.hpp"
#include "riscleanse/gazetteer.hpp"
#include "riscleanse/match.hpp"
#include "riscleanse/parse.hpp"
#include "riscleanse/profile.hpp"
#include "riscleanse/record_io.hpp"
#include "riscleanse/standardize.hpp"

namespace riscleanse {

/// Every intermediate of one end-to-end run, so phases stay individually
/// observable and artifact writing is a pure serialization step.
struct PipelineResult {
    IngestStats ingest_stats;
    std::vector<RawRecord> raw;
    std::vector<ParsedRecord> parsed;
    std::vector<CleanRecord> standardized;  // post standardize+enrich, per-record only
    std::vector<MatchScore> scores;
    std::vector<DuplicateCluster> clusters;
    std::vector<CleanRecord> reconciled;  // cleansed rows after cluster reconciliation
    std::vector<GoldenRecord> goldens;
    QualityProfile before;
    QualityProfile after;
    ProfileDelta delta;
    std::vector<std::string> warnings;
};

/// ingest -> profile(before) -> parse -> standardize -> enrich -> block ->
/// score -> cluster -> reconcile -> merge -> profile(after).
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    const Lexicons lex = cfg.lexicons();
    const auto rules = resolve_rules(cfg.rule_ids);

    PipelineResult res;
    Gazetteer gaz = load_gazetteer(cfg.gazetteer, &res.warnings);

    res.raw = ingest_csv(cfg.input, cfg.schema, &res.ingest_stats);
    for (const auto& w : res.ingest_stats.warnings) res.warnings.push_back(w);

    for (const auto& raw : res.raw) {
        res.parsed.push_back(parse_record(raw, lex, cfg.strict_orcid));
        res.standardized.push_back(
            enrich(standardize(res.parsed.back(), lex, rules), gaz));
    }

    res.scores = score_blocked(res.standardized, cfg.weights, cfg.threshold);
    std::vector<int> all_rows;
    for (const auto& r : res.standardized) all_rows.push_back(r.row_index);
    res.clusters = cluster(res.scores, all_rows);

    res.reconciled = res.standardized;
    std::map<int, CleanRecord*> by_row;
    for (auto& r : res.reconciled) by_row[r.row_index] = &r;
    for (const auto& c : res.clusters) {
        if (c.member_rows.size() < 2) continue;
        std::vector<CleanRecord*> members;
        for (int row : c.member_rows) members.push_back(by_row.at(row));
        reconcile_cluster(members);
    }

    for (const auto& c : res.clusters)
        res.goldens.push_back(merge(c, res.reconciled, cfg.policy));

    std::map<int, const CleanRecord*> clean_by_row;
    for (const auto& r : res.standardized) clean_by_row[r.row_index] = &r;
    res.before = profile(res.raw, lex, cfg.strict_orcid, &res.clusters, &clean_by_row);

    std::vector<CleanRecord> golden_records;
    for (const auto& g : res.goldens) golden_records.push_back(g.record);
    res.after = profile(golden_records);
    res.delta = compare_profiles(res.before, res.after);
    return res;
}

// ---------------------------------------------------------------------------
// JSON artifact rendering (insertion-ordered keys for diff-stable output)

using ojson = nlohmann::ordered_json;

inline ojson to_json(const QualityIssue& issue) {
    return ojson{{"row", issue.row_index},
                 {"field", to_string(issue.field)},
                 {"kind", to_string(issue.kind)},
                 {"detail", issue.detail}};
}

inline ojson to_json(const QualityProfile& p) {
    ojson fields = ojson::object();
    for (const auto& [f, st] : p.fields) {
        fields[to_string(f)] = ojson{{"present", st.present},
                                     {"total", st.total},
                                     {"valid", st.valid},
                                     {"modal_count", st.modal_count},
                                     {"modal_format", st.modal_format},
                                     {"completeness", st.completeness()},
                                     {"validity", st.validity()},
                                     {"uniformity", st.uniformity()}};
    }
    ojson issues = ojson::array();
    for (const auto& issue : p.issues) issues.push_back(to_json(issue));
    return ojson{{"record_count", p.record_count},
                 {"fields", fields},
                 {"duplicated_records", p.duplicated_records},
                 {"duplicate_ratio", p.duplicate_ratio()},
                 {"consistency_violations", p.consistency_violations},
                 {"issues", issues}};
}

inline ojson to_json(const ProfileDelta& d) {
    ojson fields = ojson::object();
    for (const auto& [f, m] : d.fields)
        fields[to_string(f)] = ojson{{"completeness", m.completeness},
                                     {"validity", m.validity},
                                     {"uniformity", m.uniformity}};
    return ojson{{"fields", fields},
                 {"duplicate_ratio", d.duplicate_ratio},
                 {"consistency_violations", d.consistency_violations},
                 {"regression", d.regression}};
}

inline ojson to_json(const MatchScore& s) {
    ojson scores = ojson::object();
    for (const auto& [field, value] : s.field_scores) scores[field] = value;
    return ojson{{"a", s.a},         {"b", s.b},
                 {"field_scores", scores}, {"total", s.total},
                 {"verdict", to_string(s.verdict)}, {"rule", s.rule}};
}

inline ojson match_report_json(const PipelineResult& res) {
    ojson clusters = ojson::array();
    for (const auto& c : res.clusters) clusters.push_back(c.member_rows);
    ojson scores = ojson::array();
    for (const auto& s : res.scores) scores.push_back(to_json(s));
    return ojson{{"record_count", static_cast<int>(res.raw.size())},
                 {"clusters", clusters},
                 {"scores", scores}};
}

inline ojson provenance_json(const PipelineResult& res) {
    ojson out = ojson::array();
    for (const auto& g : res.goldens) {
        ojson prov = ojson::object();
        for (const auto& [field, rows] : g.provenance) prov[field] = rows;
        out.push_back(ojson{{"golden_row", g.record.row_index},
                            {"author_id", g.record.author_id ? ojson(*g.record.author_id)
                                                             : ojson(nullptr)},
                            {"cluster", g.cluster_rows},
                            {"provenance", prov}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Artifact writing with all-or-nothing semantics

namespace detail {

class ArtifactWriter {
  public:
    explicit ArtifactWriter(const std::string& out_dir) : dir_(out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory " + out_dir);
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write_text(const std::string& name, const std::string& content) {
        const std::string p = path(name);
        std::ofstream os(p, std::ios::binary);
        if (!os) fail(p);
        os << content;
        os.flush();
        if (!os) fail(p);
        written_.push_back(p);
    }

    void write_json(const std::string& name, const ojson& j) {
        write_text(name, j.dump(2) + "\n");
    }

    int write_records(const std::string& name, const std::vector<CleanRecord>& records) {
        const std::string p = path(name);
        int n = 0;
        try {
            n = emit_csv(records, p);
        } catch (...) {
            remove_partial(p);
            throw;
        }
        written_.push_back(p);
        return n;
    }

    /// Partial outputs are removed when a run fails mid-write.
    void rollback() {
        for (const auto& p : written_) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
        written_.clear();
    }

  private:
    void fail(const std::string& p) {
        rollback();
        remove_partial(p);
        throw IoError("cannot write " + p);
    }
    static void remove_partial(const std::string& p) {
        std::error_code ec;
        std::filesystem::remove(p, ec);
    }

    std::filesystem::path dir_;
    std::vector<std::string> written_;
};

}  // namespace detail

enum class RunMode { Clean, Profile, Match, Merge };

/// Executes one subcommand: logs to err, a one-line summary to out, data to
/// files only. Exit codes: 0 success, 1 configuration error, 2 I/O error.
inline int run_command(RunMode mode, const PipelineConfig& cfg,
                       std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        PipelineResult res = run_pipeline(cfg);
        for (const auto& w : res.warnings) err << "warning: " << w << "\n";

        detail::ArtifactWriter writer(cfg.out_dir);
        try {
            switch (mode) {
                case RunMode::Clean: {
                    writer.write_records("cleansed.csv", res.reconciled);
                    std::vector<CleanRecord> golden_records;
                    for (const auto& g : res.goldens) golden_records.push_back(g.record);
                    writer.write_records("golden.csv", golden_records);
                    writer.write_json("profile_before.json", to_json(res.before));
                    writer.write_json("profile_after.json", to_json(res.after));
                    writer.write_json("profile_delta.json", to_json(res.delta));
                    ojson issues = ojson::array();
                    for (const auto& issue : res.before.issues) issues.push_back(to_json(issue));
                    writer.write_json("issues.json", issues);
                    writer.write_json("provenance.json", provenance_json(res));
                    out << "clean: " << res.raw.size() << " records -> "
                        << res.goldens.size() << " golden records, "
                        << res.before.issues.size() << " issues, artifacts in "
                        << cfg.out_dir << "\n";
                    break;
                }
                case RunMode::Profile: {
                    writer.write_json("profile.json", to_json(res.before));
                    writer.write_text("profile.txt", render_profile_text(res.before));
                    out << "profile: " << res.raw.size() << " records, "
                        << res.before.issues.size() << " issues, artifacts in "
                        << cfg.out_dir << "\n";
                    break;
                }
                case RunMode::Match: {
                    writer.write_json("match.json", match_report_json(res));
                    out << "match: " << res.raw.size() << " records -> "
                        << res.clusters.size() << " clusters, " << res.scores.size()
                        << " scored pairs, artifacts in " << cfg.out_dir << "\n";
                    break;
                }
                case RunMode::Merge: {
                    std::vector<CleanRecord> golden_records;
                    for (const auto& g : res.goldens) golden_records.push_back(g.record);
                    writer.write_records("golden.csv", golden_records);
                    writer.write_json("provenance.json", provenance_json(res));
                    out << "merge: " << res.clusters.size() << " clusters -> "
                        << res.goldens.size() << " golden records, artifacts in "
                        << cfg.out_dir << "\n";
                    break;
                }
            }
        } catch (...) {
            writer.rollback();
            throw;
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return 2;
    }
}

inline int run_clean(const PipelineConfig& cfg, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    return run_command(RunMode::Clean, cfg, out, err);
}
inline int run_profile(const PipelineConfig& cfg, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    return run_command(RunMode::Profile, cfg, out, err);
}
inline int run_match(const PipelineConfig& cfg, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    return run_command(RunMode::Match, cfg, out, err);
}
inline int run_merge(const PipelineConfig& cfg, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    return run_command(RunMode::Merge, cfg, out, err);
}

}  // namespace riscleanse
