#pragma once

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "riscleanse/csv.hpp"
#include "riscleanse/errors.hpp"
#include "riscleanse/record.hpp"
#include "riscleanse/text.hpp"

namespace riscleanse {

/// zip -> (city, state) reference table with a reverse lookup keyed by
/// normalized city name. Read-only after load.
struct Gazetteer {
    struct Place {
        std::string city;
        std::string state;
    };
    std::map<std::string, Place> zip_to_place;
    // normalized city -> (zip, state); last row wins for repeated places
    std::map<std::string, std::pair<std::string, std::string>> city_to_zip_state;

    size_t size() const { return zip_to_place.size(); }

    const Place* lookup_zip(const std::string& zip) const {
        auto it = zip_to_place.find(zip);
        return it == zip_to_place.end() ? nullptr : &it->second;
    }

    /// City lookup, case-folded and whitespace-collapsed. When the record
    /// carries a state it must agree with the entry.
    const std::pair<std::string, std::string>* lookup_city(
        const std::string& city, const std::optional<std::string>& state) const {
        auto it = city_to_zip_state.find(text::normalize_place(city));
        if (it == city_to_zip_state.end()) return nullptr;
        if (state && *state != it->second.second) return nullptr;
        return &it->second;
    }
};

/// Loads a `zip,city,state` CSV. Malformed rows are skipped with a warning;
/// duplicate zips are last-wins with a warning; an empty file yields an empty
/// gazetteer (enrichment becomes the identity).
inline Gazetteer load_gazetteer(std::istream& in, std::vector<std::string>* warnings = nullptr) {
    Gazetteer g;
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };

    std::vector<std::string> row;
    if (!csv::read_row(in, row)) return g;  // zero-byte file
    int row_no = 0;
    while (csv::read_row(in, row)) {
        ++row_no;
        if (row.size() == 1 && row[0].empty()) continue;
        std::string zip = text::trim(row.size() > 0 ? row[0] : "");
        std::string city = text::trim(row.size() > 1 ? row[1] : "");
        std::string state = text::trim(row.size() > 2 ? row[2] : "");
        if (row.size() != 3 || !text::all_digits(zip) || zip.size() != 5 ||
            city.empty() || state.size() != 2) {
            warn("gazetteer row " + std::to_string(row_no) + ": malformed, skipped");
            continue;
        }
        state = text::upper(state);
        if (g.zip_to_place.count(zip))
            warn("gazetteer row " + std::to_string(row_no) + ": duplicate zip " + zip +
                 ", last entry wins");
        g.zip_to_place[zip] = Gazetteer::Place{city, state};
        g.city_to_zip_state[text::normalize_place(city)] = {zip, state};
    }
    return g;
}

inline Gazetteer load_gazetteer(const std::string& path,
                                std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("gazetteer: cannot open " + path);
    return load_gazetteer(in, warnings);
}

/// Fills missing address components from the gazetteer: zip -> city/state,
/// or city (+ optional state) -> zip and state. Filled fields get status
/// Enriched. Never overwrites a present value; a zip the gazetteer does not
/// know leaves the record unchanged (absent reference data is not an error).
inline CleanRecord enrich(CleanRecord record, const Gazetteer& gaz) {
    if (!record.address) return record;
    StructuredAddress& a = *record.address;
    bool filled = false;

    if (a.zip && (!a.city || !a.state)) {
        if (const auto* place = gaz.lookup_zip(*a.zip)) {
            if (!a.city) {
                a.city = place->city;
                filled = true;
            }
            if (!a.state) {
                a.state = place->state;
                filled = true;
            }
        }
    } else if (!a.zip && a.city) {
        if (const auto* entry = gaz.lookup_city(*a.city, a.state)) {
            a.zip = entry->first;
            filled = true;
            if (!a.state) a.state = entry->second;
        }
    }

    if (filled) {
        record.statuses[Field::Address].state = FieldState::Enriched;
        record.append_status_note(Field::Address, "gazetteer_fill");
    }
    return record;
}

}  // namespace riscleanse
