#include "planestat/report.hpp"

#include <json.hpp>

namespace planestat {

namespace {

// RFC-style quoting; our cells are plain decimal strings, so quoting only
// triggers on metadata values that happen to contain commas.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

void write_csv(const StatReport& r, std::ostream& os) {
    os << "# " << kVersion << "\n";
    for (const auto& [k, v] : r.config) os << "# config " << k << "=" << v << "\n";
    for (const auto& [k, v] : r.meta) os << "# meta " << k << "=" << v << "\n";
    for (size_t i = 0; i < r.columns.size(); ++i) {
        if (i) os << ",";
        os << csv_escape(r.columns[i]);
    }
    os << "\n";
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << csv_escape(row[i]);
        }
        os << "\n";
    }
}

void write_json(const StatReport& r, std::ostream& os) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (size_t i = 0; i < r.columns.size() && i < row.size(); ++i) obj[r.columns[i]] = row[i];
        rows.push_back(obj);
    }
    j["rows"] = rows;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.meta) meta[k] = v;
    j["meta"] = meta;
    os << j.dump(2) << "\n";
}

} // namespace planestat
