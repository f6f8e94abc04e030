#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace planestat {

inline constexpr const char* kVersion = "planestat 1.0.0";

// A fully rendered run result: configuration echo, tabular rows of decimal
// strings, and run metadata (truncation indices, verdicts). CSV and JSON
// emissions share this structure, so their numeric content is identical by
// construction.
struct StatReport {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> meta;
};

void write_csv(const StatReport& r, std::ostream& os);
void write_json(const StatReport& r, std::ostream& os);

} // namespace planestat
