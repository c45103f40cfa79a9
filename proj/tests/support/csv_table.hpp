// Reader for the CLI's CSV output: "# key: value" header lines, one table, optional key,value record.
#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace csvt {

struct Table {
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::map<std::string, std::string> record;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }

    // Empty cells become nullopt.
    std::vector<std::optional<double>> numbers(const std::string& name) const {
        std::vector<std::optional<double>> out;
        const int c = column(name);
        if (c < 0) return out;
        for (const auto& r : rows) {
            if (static_cast<std::size_t>(c) >= r.size() || r[c].empty())
                out.push_back(std::nullopt);
            else
                out.push_back(std::strtod(r[c].c_str(), nullptr));
        }
        return out;
    }
};

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline Table parse(const std::string& text) {
    Table t;
    std::istringstream is(text);
    std::string line;
    bool in_record = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(": ");
            if (colon != std::string::npos) t.meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
            continue;
        }
        if (line == "key,value") {
            in_record = true;
            continue;
        }
        if (in_record) {
            const auto comma = line.find(',');
            t.record[line.substr(0, comma)] = comma == std::string::npos ? "" : line.substr(comma + 1);
        } else if (t.columns.empty()) {
            t.columns = split(line);
        } else {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

}  // namespace csvt
