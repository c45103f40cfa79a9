// output.hpp: CSV/JSON documents written by every command
#pragma once

#include <obist/params.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace obist::cli {

enum class Format { csv, json };

using Cell = std::variant<std::monostate, double, std::string, bool, long long>;

struct Document {
    std::string command;
    std::optional<SystemParams> params;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json record = nlohmann::ordered_json::object();  // key/value results
    std::vector<std::string> warnings;
};

std::string format_number(double v);

// CSV: '#' metadata lines, then the table or key,value record. No timestamps.
void write_csv(std::ostream& os, const Document& doc);
void write_json(std::ostream& os, const Document& doc);

nlohmann::ordered_json params_json(const SystemParams& p);

}  // namespace obist::cli
