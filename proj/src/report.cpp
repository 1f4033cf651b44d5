#include "twostar/report.hpp"

#include <sstream>
#include <stdexcept>

namespace twostar {

void Report::add_record(std::vector<nlohmann::json> cells) {
    if (cells.size() != columns.size())
        throw std::invalid_argument("Report::add_record: cell count does not match the column schema");
    records.push_back(std::move(cells));
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string Report::to_csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(columns[c]);
    }
    out << '\n';
    for (const auto& row : records) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            const auto& cell = row[c];
            if (cell.is_null()) continue;
            if (cell.is_string())
                out << csv_escape(cell.get<std::string>());
            else
                out << cell.dump();  // shortest round-trip form for numbers
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["meta"] = meta;
    j["meta"]["command"] = command;
    j["meta"]["version"] = version;
    j["meta"]["all_passed"] = all_passed;
    j["records"] = nlohmann::json::array();
    for (const auto& row : records) {
        nlohmann::json rec = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) rec[columns[c]] = row[c];
        j["records"].push_back(std::move(rec));
    }
    return j;
}

}  // namespace twostar
