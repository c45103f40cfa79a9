// commands.hpp: run configuration and command implementations
#pragma once

#include "output.hpp"

#include <obist/errors.hpp>
#include <obist/params.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace obist::cli {

// Bad flags or ranges; exit code 2.
class UsageError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

struct RunConfig {
    std::string command;

    std::optional<std::string> params_file;
    std::optional<double> C;
    std::optional<double> xi;
    std::optional<long long> N;
    std::optional<double> g_mhz;
    std::optional<double> kappa_mhz;
    std::optional<double> gamma_mhz;

    std::optional<std::string> out;
    Format format = Format::csv;
    std::uint64_t seed = 0;
    std::optional<std::string> preset;

    std::optional<double> X;
    std::optional<double> Y;
    std::optional<std::string> branch;

    std::optional<double> xmin;
    std::optional<double> xmax;
    std::optional<double> ymax;
    std::optional<double> taumax;
    std::optional<std::size_t> points;

    std::string kind = "atomic";
    std::string method = "numeric";
    bool full_range = false;
    std::string variant = "atomic-weak";
    bool squeeze_spectrum = false;

    bool phase_sum = false;
    bool flux = false;
    std::optional<double> cube;
    std::size_t trials = 1000;
    std::optional<std::string> geometry;
    double theta = 1.5707963267948966;
    double solid_angle = 1e-2;
    std::optional<double> aux_g;
    std::optional<double> aux_kappa;

    bool list = false;
};

SystemParams resolve_params(const RunConfig& cfg);

Document cmd_curve(const RunConfig& cfg);
Document cmd_solve(const RunConfig& cfg);
Document cmd_spectrum(const RunConfig& cfg);
Document cmd_g2(const RunConfig& cfg);
Document cmd_squeeze(const RunConfig& cfg);
Document cmd_scatter(const RunConfig& cfg);
Document cmd_preset(const RunConfig& cfg);

Document dispatch(const RunConfig& cfg);

}  // namespace obist::cli
