#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "riscleanse/consolidate.hpp"
#include "riscleanse/errors.hpp"
#include "riscleanse/lexicon.hpp"
#include "riscleanse/match.hpp"
#include "riscleanse/record_io.hpp"
#include "riscleanse/standardize.hpp"

namespace riscleanse {

inline std::optional<Field> field_from_string(const std::string& s) {
    for (Field f : kValueFields)
        if (s == to_string(f)) return f;
    if (s == "record") return Field::Record;
    return std::nullopt;
}

inline SurvivorRule survivor_rule_from_string(const std::string& s) {
    for (SurvivorRule r : {SurvivorRule::MajorityNonNull, SurvivorRule::MostCompleteRecord,
                           SurvivorRule::LongestValue})
        if (s == to_string(r)) return r;
    throw ConfigError("consolidation: unknown survivorship rule '" + s +
                      "' (valid: majority_non_null, most_complete_record, longest_value)");
}

/// Everything one run needs, loadable from a single JSON file so runs are
/// reproducible. CLI flags override file values which override defaults.
struct PipelineConfig {
    std::string input;
    std::string out_dir = "out";
    std::string gazetteer;
    std::string titles_path;           // optional; built-in defaults otherwise
    std::string street_suffixes_path;  // optional
    Schema schema = Schema::defaults();
    std::vector<std::string> rule_ids = {"split_house_unit", "expand_pb"};
    std::optional<std::vector<std::pair<std::string, std::string>>> abbreviations;
    MatchWeights weights;
    double threshold = 0.85;
    SurvivorshipPolicy policy;
    bool strict_orcid = false;

    static PipelineConfig from_json(const nlohmann::json& j) {
        PipelineConfig c;
        try {
            if (j.contains("input")) c.input = j.at("input").get<std::string>();
            if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
            if (j.contains("gazetteer")) c.gazetteer = j.at("gazetteer").get<std::string>();
            if (j.contains("lexicons")) {
                const auto& lx = j.at("lexicons");
                if (lx.contains("titles")) c.titles_path = lx.at("titles").get<std::string>();
                if (lx.contains("street_suffixes"))
                    c.street_suffixes_path = lx.at("street_suffixes").get<std::string>();
            }
            if (j.contains("schema")) {
                c.schema.columns.clear();
                for (const auto& [key, value] : j.at("schema").items())
                    c.schema.columns[key] = value.get<std::string>();
            }
            if (j.contains("standardization")) {
                const auto& st = j.at("standardization");
                if (st.contains("rules"))
                    c.rule_ids = st.at("rules").get<std::vector<std::string>>();
                if (st.contains("abbreviations")) {
                    std::vector<std::pair<std::string, std::string>> abbr;
                    for (const auto& [key, value] : st.at("abbreviations").items())
                        abbr.emplace_back(key, value.get<std::string>());
                    c.abbreviations = abbr;
                }
            }
            if (j.contains("matching")) {
                const auto& m = j.at("matching");
                if (m.contains("weights")) {
                    const auto& w = m.at("weights");
                    auto get = [&](const char* key, double fallback) {
                        return w.contains(key) ? w.at(key).get<double>() : fallback;
                    };
                    c.weights.orcid = get("orcid", c.weights.orcid);
                    c.weights.family = get("family", c.weights.family);
                    c.weights.given = get("given", c.weights.given);
                    c.weights.birth_date = get("birth_date", c.weights.birth_date);
                    c.weights.address = get("address", c.weights.address);
                    c.weights.author_id = get("author_id", c.weights.author_id);
                }
                if (m.contains("threshold")) c.threshold = m.at("threshold").get<double>();
            }
            if (j.contains("consolidation")) {
                const auto& cons = j.at("consolidation");
                if (cons.contains("policy")) {
                    const auto& pol = cons.at("policy");
                    if (pol.contains("default"))
                        c.policy.default_rule =
                            survivor_rule_from_string(pol.at("default").get<std::string>());
                    if (pol.contains("per_field"))
                        for (const auto& [key, value] : pol.at("per_field").items()) {
                            auto f = field_from_string(key);
                            if (!f) throw ConfigError("consolidation: unknown field '" + key + "'");
                            c.policy.per_field[*f] =
                                survivor_rule_from_string(value.get<std::string>());
                        }
                }
            }
            if (j.contains("strict_orcid")) c.strict_orcid = j.at("strict_orcid").get<bool>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        return c;
    }

    static PipelineConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config: " + path + " is not valid JSON: " + e.what());
        }
        return from_json(j);
    }

    /// All weights non-negative with a positive sum, threshold in [0,1],
    /// known rule ids, and every referenced file present.
    void validate() const {
        weights.validate();
        if (threshold < 0.0 || threshold > 1.0)
            throw ConfigError("matching: threshold must lie in [0, 1]");
        resolve_rules(rule_ids);
        if (input.empty()) throw ConfigError("config: no input file given");
        if (gazetteer.empty()) throw ConfigError("config: no gazetteer path given");
        for (const std::string* path :
             {&input, &gazetteer, &titles_path, &street_suffixes_path}) {
            if (path->empty()) continue;
            if (!std::filesystem::exists(*path))
                throw ConfigError("config: referenced file does not exist: " + *path);
        }
    }

    Lexicons lexicons() const {
        Lexicons lex;
        if (!titles_path.empty()) lex.titles = load_word_list(titles_path);
        if (!street_suffixes_path.empty())
            lex.street_suffixes = load_word_list(street_suffixes_path);
        if (abbreviations) lex.abbreviations = *abbreviations;
        return lex;
    }
};

/// Resolves the config path: explicit flag, else the RISCLEANSE_CONFIG
/// environment variable.
inline std::optional<std::string> resolve_config_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("RISCLEANSE_CONFIG"); env && *env)
        return std::string(env);
    return std::nullopt;
}

}  // namespace riscleanse
