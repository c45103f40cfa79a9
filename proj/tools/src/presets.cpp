#include "presets.hpp"

#include <cmath>

namespace obist::cli {

namespace {

// Spectra do not depend on N; the value only fills the parameter record.
constexpr std::int64_t kSpectrumN = 1000;
constexpr double kWeakX = 0.01;

std::vector<Preset> build() {
    std::vector<Preset> out;
    out.push_back({"fig1a", "spectrum", "bad-cavity overlap, C=5, xi=500", make_params(5.0, 500.0, kSpectrumN),
                   kWeakX, 33.0, 6601, {SpectrumMethod::weak_closed, SpectrumMethod::bad_cavity}, {}});
    out.push_back({"fig1b", "spectrum", "good-cavity spectral hole, C=5, xi=0.01", make_params(5.0, 0.01, kSpectrumN),
                   kWeakX, 1.0, 2001, {SpectrumMethod::weak_closed, SpectrumMethod::good_cavity}, {}});
    out.push_back({"fig1c", "spectrum", "vacuum Rabi doublet, C=200, xi=1", make_params(200.0, 1.0, kSpectrumN),
                   kWeakX, 2.0 * std::sqrt(2.0 * 1.0 * 200.0), 4001,
                   {SpectrumMethod::weak_closed, SpectrumMethod::strong_coupling}, {}});
    out.push_back({"fig1d", "spectrum", "upper-branch triplet, X=20", make_params(5.0, 1.0, kSpectrumN), 20.0,
                   2.0 * std::sqrt(2.0) * 20.0, 4001, {SpectrumMethod::upper_branch}, {}});
    out.push_back({"fig2a", "g2", "atomic and forward g2, C=40, xi=0.176, N=310", make_params(40.0, 0.176, 310),
                   kWeakX, 10.0, 1001, {}, {G2Variant::atomic_weak, G2Variant::forward_weak}});
    out.push_back({"fig2b", "g2", "as fig2a with g halved, C=10", make_params(10.0, 0.176, 310), kWeakX, 10.0, 1001,
                   {}, {G2Variant::atomic_weak, G2Variant::forward_weak}});
    return out;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build();
    return all;
}

std::optional<Preset> find_preset(std::string_view name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

}  // namespace obist::cli
