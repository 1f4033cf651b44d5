#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace twostar {

// Tabular result of one CLI run. Records are rows aligned with `columns`;
// cells are JSON scalars (number, string, bool, or null for empty fields).
// CSV output carries the header row and the records only, so identical runs
// produce byte-identical files; meta (seed, caps, timing) lives in the JSON
// form and on the terminal.
struct Report {
    std::string command;
    std::string version;
    nlohmann::json meta = nlohmann::json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> records;
    bool all_passed = true;

    void add_record(std::vector<nlohmann::json> cells);

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

std::string csv_escape(const std::string& field);

}  // namespace twostar
