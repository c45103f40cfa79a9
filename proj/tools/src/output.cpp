#include "output.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>

namespace obist::cli {

namespace {

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(long long v) const { return std::to_string(v); }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_number(v));
        }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

std::string scalar_text(const nlohmann::ordered_json& v) {
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

std::string format_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

nlohmann::ordered_json params_json(const SystemParams& p) {
    nlohmann::ordered_json j;
    j["C"] = p.C;
    j["xi"] = p.xi;
    j["N"] = p.N;
    if (p.raw) {
        j["g_rad_s"] = p.raw->g;
        j["kappa_rad_s"] = p.raw->kappa;
        j["gamma_rad_s"] = p.raw->gamma;
    }
    if (p.n_sc) j["n_sc"] = *p.n_sc;
    return j;
}

void write_csv(std::ostream& os, const Document& doc) {
    os << "# tool: obist " << OBIST_VERSION << '\n';
    os << "# command: " << doc.command << '\n';
    if (doc.params) {
        const auto pj = params_json(*doc.params);
        os << "# params:";
        for (const auto& [k, v] : pj.items()) os << ' ' << k << '=' << scalar_text(v);
        os << '\n';
    }
    for (const auto& [k, v] : doc.metadata.items()) os << "# " << k << ": " << scalar_text(v) << '\n';

    if (!doc.columns.empty()) {
        for (std::size_t i = 0; i < doc.columns.size(); ++i) os << (i ? "," : "") << doc.columns[i];
        os << '\n';
        for (const auto& row : doc.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
            os << '\n';
        }
    }
    if (!doc.record.empty()) {
        if (!doc.columns.empty()) os << '\n';
        os << "key,value\n";
        for (const auto& [k, v] : doc.record.items()) os << k << ',' << scalar_text(v) << '\n';
    }
}

void write_json(std::ostream& os, const Document& doc) {
    nlohmann::ordered_json j;
    j["tool"] = std::string("obist ") + OBIST_VERSION;
    j["command"] = doc.command;
    if (doc.params) j["params"] = params_json(*doc.params);
    j["metadata"] = doc.metadata;
    if (!doc.columns.empty()) {
        nlohmann::ordered_json data = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < doc.columns.size(); ++c) {
            auto col = nlohmann::ordered_json::array();
            for (const auto& row : doc.rows) col.push_back(c < row.size() ? cell_json(row[c]) : nlohmann::ordered_json(nullptr));
            data[doc.columns[c]] = col;
        }
        j["data"] = data;
    }
    if (!doc.record.empty()) j["result"] = doc.record;
    j["warnings"] = doc.warnings;
    os << j.dump(2) << '\n';
}

}  // namespace obist::cli
