// riscleanse -- batch data-quality pipeline for researcher records.
//
// Subcommands mirror the pipeline phases: `profile` analyzes without
// touching anything, `match` reports duplicate clusters, `merge` writes
// golden records, `clean` runs the whole workflow. Configuration comes from
// a JSON file (--config, or the RISCLEANSE_CONFIG environment variable);
// every flag overrides its config key.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "riscleanse/riscleanse.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string input;
    std::string out_dir;
    double threshold = -1.0;  // <0 means "not set"
    bool strict_orcid = false;
    bool strict_orcid_set = false;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "pipeline config JSON (fallback: $RISCLEANSE_CONFIG)");
    cmd->add_option("--input", o.input, "input CSV (overrides config)");
    cmd->add_option("--out-dir", o.out_dir, "artifact directory (overrides config)");
    cmd->add_option("--threshold", o.threshold, "match threshold in [0,1] (overrides config)");
    cmd->add_flag_callback(
        "--strict-orcid",
        [&o] { o.strict_orcid = o.strict_orcid_set = true; },
        "enable ISO 7064 MOD 11-2 ORCID checksum validation");
}

int run(riscleanse::RunMode mode, const CliOverrides& o) {
    using namespace riscleanse;
    try {
        PipelineConfig cfg;
        if (auto path = resolve_config_path(o.config_path)) cfg = PipelineConfig::load(*path);
        if (!o.input.empty()) cfg.input = o.input;
        if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
        if (o.threshold >= 0.0) cfg.threshold = o.threshold;
        if (o.strict_orcid_set) cfg.strict_orcid = o.strict_orcid;
        return run_command(mode, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"data cleansing and quality profiling for researcher records"};
    app.require_subcommand(1);

    CliOverrides o;
    riscleanse::RunMode mode = riscleanse::RunMode::Clean;

    auto* clean = app.add_subcommand(
        "clean", "full pipeline: parse, standardize, enrich, match, merge, profile");
    auto* prof = app.add_subcommand("profile", "profile the input without modifying it");
    auto* match = app.add_subcommand("match", "report duplicate clusters and pair scores");
    auto* merge = app.add_subcommand("merge", "consolidate duplicate clusters into golden records");
    for (auto* cmd : {clean, prof, match, merge}) add_common_flags(cmd, o);

    clean->callback([&] { mode = riscleanse::RunMode::Clean; });
    prof->callback([&] { mode = riscleanse::RunMode::Profile; });
    match->callback([&] { mode = riscleanse::RunMode::Match; });
    merge->callback([&] { mode = riscleanse::RunMode::Merge; });

    CLI11_PARSE(app, argc, argv);
    return run(mode, o);
}
