// scattering.hpp: side-scattered flux, random-phase Monte Carlo, auxiliary emission channel
#pragma once

#include "obist/params.hpp"
#include "obist/spectra.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace obist {

using Position = std::array<double, 3>;  // units of the wavelength

struct ScatterGeometry {
    std::vector<Position> positions;
    Position direction{0.0, 0.0, 1.0};
    double theta = 0.0;        // polar angle from the drive polarization axis
    double solid_angle = 1.0;  // steradians, in (0, 4 pi]
    std::uint64_t rng_seed = 0;
};

void validate_geometry(const ScatterGeometry& g);

struct SideFlux {
    double shape = 0.0;          // (1/2) sin^2(theta) (X^2/(1+X^2))^2, multiplies N 3 gamma dOmega / (8 pi)
    double flux = 0.0;           // in units of gamma N
    double weak_form = 0.0;      // (3 dOmega / 8 pi) sin^2(theta) (X^2/2) X^2, units of gamma N
    double emission_rate = 0.0;  // weak-excitation R_gamma / (gamma N) = X^2 / 2
};

SideFlux side_flux(const SystemParams& p, double X, double theta, double solid_angle);

// (1/N) sum_{j != k} exp(-2 pi i rhat.(r_j - r_k)); real by construction.
double phase_sum(const std::vector<Position>& positions, const Position& direction);

struct PhaseSumStats {
    double mean_abs = 0.0;
    double max_abs = 0.0;
    double coherent_bound = 0.0;  // N - 1
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double min_pair_distance = 0.0;
    std::vector<std::string> warnings;
};

// Samples isotropic directions; trial i draws from its own stream derived from (seed, i).
PhaseSumStats phase_sum_monte_carlo(const ScatterGeometry& geometry, std::size_t trials);

std::vector<Position> sample_cube_positions(std::size_t N, double side, std::uint64_t seed);
std::vector<Position> positions_from_json(std::string_view text);
std::string to_json(const PhaseSumStats& s);

std::uint64_t splitmix64(std::uint64_t x);

struct AuxiliaryChannel {
    double g_aux = 0.0;
    double kappa_aux = 0.0;
};

struct AuxiliaryValidity {
    bool strong_damping = false;  // kappa_aux >= 10 g_aux
    bool weak_coupling = false;   // g_aux^2 / kappa_aux <= 0.1 g
    std::vector<std::string> warnings;
};

AuxiliaryValidity auxiliary_validity(const AuxiliaryChannel& ch, double g_main);

double auxiliary_prefactor(const AuxiliaryChannel& ch);

// (g_aux^2 / kappa_aux) times the atomic correlator.
std::complex<double> auxiliary_channel_correlation(const AuxiliaryChannel& ch, std::complex<double> atomic);

// Auxiliary photon-flux spectrum normalized by its own zero-delay value.
SpectrumSeries auxiliary_spectrum(const AuxiliaryChannel& ch, const SystemParams& p, double X,
                                  const std::vector<double>& y_grid);

}  // namespace obist
