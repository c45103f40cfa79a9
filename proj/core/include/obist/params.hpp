// params.hpp: system parameters and dimensionless conventions
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace obist {

enum class RateUnit {
    rad_per_s,
    mhz_cycles,  // value is rate / (2 pi), in MHz
};

// Angular frequencies in rad/s.
struct RawRates {
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
};

struct SystemParams {
    double C = 0.0;    // cooperativity N g^2 / (kappa gamma)
    double xi = 0.0;   // rate ratio 2 kappa / gamma
    std::int64_t N = 1;
    std::optional<RawRates> raw;
    std::optional<double> n_sc;  // gamma^2 / (8 g^2), set only with raw rates
    double phi0 = 0.0;           // drive phase; always 0
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate(const SystemParams& p);

// Throws ValidationError listing every violation.
SystemParams make_params(double C, double xi, std::int64_t N);
SystemParams from_raw_rates(double g, double kappa, double gamma, std::int64_t N,
                            RateUnit unit = RateUnit::rad_per_s);

// Flat JSON object with exactly one of the key groups {C, xi, N} or
// {g_MHz, kappa_MHz, gamma_MHz, N}.
SystemParams params_from_json(std::string_view text);
SystemParams load_params_file(const std::string& path);
std::string to_json(const SystemParams& p);

// tau_bar = gamma tau / 2, y = 2 (omega - omega0) / gamma, s_bar = 2 s / gamma.
struct TimeFrequencyScales {
    static double tau_bar(double tau, double gamma) { return 0.5 * gamma * tau; }
    static double tau(double tau_bar, double gamma) { return 2.0 * tau_bar / gamma; }
    static double y(double detuning, double gamma) { return 2.0 * detuning / gamma; }
    static std::complex<double> spectral_s_bar(double y) { return {0.0, -y}; }
};

}  // namespace obist
