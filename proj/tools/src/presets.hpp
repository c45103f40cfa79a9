// presets.hpp: figure-reproduction parameter sets
#pragma once

#include <obist/params.hpp>
#include <obist/spectra.hpp>
#include <obist/correlations.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace obist::cli {

struct Preset {
    std::string name;
    std::string command;  // "spectrum" or "g2"
    std::string description;
    SystemParams params;
    double X = 0.0;
    double half_width = 0.0;  // y half-range, or tau_bar maximum for g2
    std::size_t points = 0;
    std::vector<SpectrumMethod> methods;
    std::vector<G2Variant> variants;
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(std::string_view name);

}  // namespace obist::cli
