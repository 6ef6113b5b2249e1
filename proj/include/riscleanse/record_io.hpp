#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "riscleanse/csv.hpp"
#include "riscleanse/errors.hpp"
#include "riscleanse/record.hpp"
#include "riscleanse/text.hpp"

namespace riscleanse {

/// Maps the logical record fields onto CSV column headers so real CRIS
/// exports with different headers can be ingested. A file may carry the name
/// as one column ("name") or split ("first"/"last"); same for the address
/// ("address" vs "zip"/"state"/"city"/"street").
struct Schema {
    std::map<std::string, std::string> columns;  // logical key -> header

    static Schema defaults() {
        return Schema{{{"author_id", "Author ID"},
                       {"name", "Name"},
                       {"orcid", "ORCID"},
                       {"birth_date", "Birth Date"},
                       {"address", "Address"}}};
    }

    /// Matches the header written by emit_csv, for re-ingesting our own
    /// output.
    static Schema canonical() {
        return Schema{{{"author_id", "author_id"},
                       {"first", "first"},
                       {"last", "last"},
                       {"orcid", "orcid"},
                       {"birth_date", "birth_date"},
                       {"zip", "zip"},
                       {"state", "state"},
                       {"city", "city"},
                       {"street", "street"}}};
    }
};

struct IngestStats {
    int rows_ingested = 0;
    int rows_skipped = 0;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::optional<std::string> cell(const std::vector<std::string>& row,
                                       const std::map<std::string, int>& index,
                                       const Schema& schema, const std::string& key) {
    auto sit = schema.columns.find(key);
    if (sit == schema.columns.end()) return std::nullopt;
    auto iit = index.find(sit->second);
    if (iit == index.end() || iit->second >= static_cast<int>(row.size()))
        return std::nullopt;
    std::string v = text::trim(row[static_cast<size_t>(iit->second)]);
    if (v.empty()) return std::nullopt;
    return v;
}

}  // namespace detail

/// Reads a CSV with a header row into RawRecords, one per data row in file
/// order. Empty and whitespace-only cells become absent fields. Rows whose
/// field count does not match the header are skipped, counted, and reported
/// with their row number.
inline std::vector<RawRecord> ingest_csv(std::istream& in, const Schema& schema,
                                         IngestStats* stats = nullptr) {
    std::vector<std::string> header;
    if (!csv::read_row(in, header)) return {};  // empty file: no data rows

    std::map<std::string, int> index;
    for (size_t i = 0; i < header.size(); ++i)
        index[text::trim(header[i])] = static_cast<int>(i);

    // Every mapped column that this schema needs must exist. Name and
    // address accept either the joined or the split spelling.
    auto has = [&](const std::string& key) {
        auto it = schema.columns.find(key);
        return it != schema.columns.end() && index.count(it->second) > 0;
    };
    for (const auto& [key, col] : schema.columns) {
        if (!index.count(col)) {
            bool alt = (key == "name" && has("first") && has("last")) ||
                       ((key == "first" || key == "last") && has("name"));
            if (!alt)
                throw ConfigError("ingest: mapped column '" + col +
                                  "' (field " + key + ") not found in header");
        }
    }

    std::vector<RawRecord> records;
    std::vector<std::string> row;
    int row_no = 0;
    while (csv::read_row(in, row)) {
        ++row_no;
        if (row.size() == 1 && row[0].empty()) continue;  // trailing blank line
        if (row.size() != header.size()) {
            if (stats) {
                ++stats->rows_skipped;
                std::ostringstream msg;
                msg << "row " << row_no << ": expected " << header.size()
                    << " fields, got " << row.size() << "; skipped";
                stats->warnings.push_back(msg.str());
            }
            continue;
        }
        RawRecord r;
        r.row_index = static_cast<int>(records.size()) + 1;
        r.author_id = detail::cell(row, index, schema, "author_id");
        r.orcid_raw = detail::cell(row, index, schema, "orcid");
        r.birth_date_raw = detail::cell(row, index, schema, "birth_date");

        r.name = detail::cell(row, index, schema, "name");
        if (!r.name) {
            auto first = detail::cell(row, index, schema, "first");
            auto last = detail::cell(row, index, schema, "last");
            if (first && last) r.name = *first + " " + *last;
            else if (first) r.name = first;
            else if (last) r.name = last;
        }

        r.address_raw = detail::cell(row, index, schema, "address");
        if (!r.address_raw) {
            StructuredAddress a;
            a.zip = detail::cell(row, index, schema, "zip");
            a.state = detail::cell(row, index, schema, "state");
            a.city = detail::cell(row, index, schema, "city");
            a.street = detail::cell(row, index, schema, "street");
            if (!a.empty()) r.address_raw = a.canonical();
        }

        records.push_back(std::move(r));
        if (stats) ++stats->rows_ingested;
    }
    return records;
}

inline std::vector<RawRecord> ingest_csv(const std::string& path, const Schema& schema,
                                         IngestStats* stats = nullptr) {
    std::error_code ec;
    if (std::filesystem::exists(path, ec) && !std::filesystem::is_regular_file(path, ec))
        throw IoError("ingest: not a readable file: " + path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("ingest: cannot open " + path);
    return ingest_csv(in, schema, stats);
}

inline const char* kEmitHeader =
    "author_id,first,last,orcid,birth_date,zip,state,city,street";

/// Writes standardized records with the fixed header
/// `author_id,first,last,orcid,birth_date,zip,state,city,street`; absent
/// fields serialize as empty cells. Returns the number of data rows written.
inline int emit_csv(const std::vector<CleanRecord>& records, std::ostream& os) {
    os << kEmitHeader << '\n';
    int n = 0;
    for (const auto& r : records) {
        std::vector<std::string> row(9);
        auto put = [&](size_t i, const std::optional<std::string>& v) {
            if (v) row[i] = *v;
        };
        put(0, r.author_id);
        put(1, r.given);
        put(2, r.family);
        put(3, r.orcid);
        put(4, r.emitted_birth_date());
        if (r.address) {
            put(5, r.address->zip);
            put(6, r.address->state);
            put(7, r.address->city);
            put(8, r.address->street);
        }
        csv::write_row(os, row);
        ++n;
    }
    return n;
}

inline int emit_csv(const std::vector<CleanRecord>& records, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("emit: cannot open " + path + " for writing");
    int n = emit_csv(records, os);
    os.flush();
    if (!os) throw IoError("emit: write to " + path + " failed");
    return n;
}

}  // namespace riscleanse
