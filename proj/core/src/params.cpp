#include "obist/params.hpp"

#include "obist/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace obist {

namespace {

constexpr double kConsistency = 1e-12;

double to_rad_per_s(double value, RateUnit unit) {
    return unit == RateUnit::mhz_cycles ? 2.0 * std::numbers::pi * 1e6 * value : value;
}

}  // namespace

std::string ValidationReport::summary() const {
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "; ";
        s += v;
    }
    return s;
}

ValidationReport validate(const SystemParams& p) {
    ValidationReport r;
    if (!(p.C > 0.0) || !std::isfinite(p.C)) r.violations.emplace_back("C must be positive");
    if (!(p.xi > 0.0) || !std::isfinite(p.xi)) r.violations.emplace_back("xi must be positive");
    if (p.N < 1) r.violations.emplace_back("N must be at least 1");
    if (p.phi0 != 0.0) r.violations.emplace_back("phi0 must be 0");

    if (p.raw) {
        const auto& w = *p.raw;
        if (!(w.g > 0.0) || !(w.kappa > 0.0) || !(w.gamma > 0.0)) {
            r.violations.emplace_back("raw rates must be positive");
        } else {
            const double two_c = 2.0 * static_cast<double>(p.N) * w.g * w.g / (w.kappa * w.gamma);
            if (!(std::abs(2.0 * p.C - two_c) <= kConsistency * 2.0 * std::abs(p.C))) {
                r.violations.emplace_back("derived C mismatch");
            }
            if (!(std::abs(p.xi - 2.0 * w.kappa / w.gamma) <= kConsistency * std::abs(p.xi))) {
                r.violations.emplace_back("derived xi mismatch");
            }
            const double nsc = w.gamma * w.gamma / (8.0 * w.g * w.g);
            if (!p.n_sc || std::abs(*p.n_sc - nsc) > kConsistency * nsc) {
                r.violations.emplace_back("n_sc mismatch");
            }
        }
    } else if (p.n_sc) {
        r.violations.emplace_back("n_sc set without raw rates");
    }
    return r;
}

SystemParams make_params(double C, double xi, std::int64_t N) {
    SystemParams p{C, xi, N, std::nullopt, std::nullopt, 0.0};
    const auto report = validate(p);
    if (!report.ok()) throw ValidationError(report.summary());
    return p;
}

SystemParams from_raw_rates(double g, double kappa, double gamma, std::int64_t N, RateUnit unit) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("g must be positive");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be positive");
    if (N < 1) throw ValidationError("N must be at least 1");

    RawRates w{to_rad_per_s(g, unit), to_rad_per_s(kappa, unit), to_rad_per_s(gamma, unit)};
    SystemParams p;
    p.N = N;
    p.C = static_cast<double>(N) * w.g * w.g / (w.kappa * w.gamma);
    p.xi = 2.0 * w.kappa / w.gamma;
    p.n_sc = w.gamma * w.gamma / (8.0 * w.g * w.g);
    p.raw = w;
    return p;
}

SystemParams params_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("parameter file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("parameter file must be a JSON object");

    static const std::set<std::string> dimensionless{"C", "xi"};
    static const std::set<std::string> rates{"g_MHz", "kappa_MHz", "gamma_MHz"};
    bool has_dimless = false;
    bool has_rates = false;
    for (const auto& [key, value] : j.items()) {
        if (dimensionless.count(key)) {
            has_dimless = true;
        } else if (rates.count(key)) {
            has_rates = true;
        } else if (key != "N") {
            throw ValidationError("unknown parameter key \"" + key + "\"");
        }
        if (!value.is_number()) throw ValidationError("parameter \"" + key + "\" must be a number");
    }
    if (has_dimless == has_rates) {
        throw ValidationError("exactly one of {C, xi, N} or {g_MHz, kappa_MHz, gamma_MHz, N} is required");
    }
    if (!j.contains("N")) throw ValidationError("missing parameter \"N\"");
    if (!j["N"].is_number_integer()) throw ValidationError("N must be an integer");
    const auto N = j["N"].get<std::int64_t>();

    auto need = [&](const char* key) {
        if (!j.contains(key)) throw ValidationError(std::string("missing parameter \"") + key + "\"");
        return j[key].get<double>();
    };
    if (has_dimless) return make_params(need("C"), need("xi"), N);
    return from_raw_rates(need("g_MHz"), need("kappa_MHz"), need("gamma_MHz"), N, RateUnit::mhz_cycles);
}

SystemParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open parameter file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return params_from_json(buf.str());
}

std::string to_json(const SystemParams& p) {
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
    return j.dump();
}

}  // namespace obist
