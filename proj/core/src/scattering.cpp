#include "obist/scattering.hpp"

#include "obist/covariance.hpp"
#include "obist/errors.hpp"
#include "obist/lindyn.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace obist {

namespace {

constexpr double kPi = std::numbers::pi;

double min_pair_distance(const std::vector<Position>& r) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            const double dx = r[i][0] - r[j][0];
            const double dy = r[i][1] - r[j][1];
            const double dz = r[i][2] - r[j][2];
            best = std::min(best, std::sqrt(dx * dx + dy * dy + dz * dz));
        }
    }
    return best;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void validate_geometry(const ScatterGeometry& g) {
    const auto& d = g.direction;
    const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (!(std::abs(norm - 1.0) <= 1e-12)) throw ValidationError("direction must be a unit vector");
    if (!(g.solid_angle > 0.0 && g.solid_angle <= 4.0 * kPi)) {
        throw ValidationError("solid angle must lie in (0, 4 pi]");
    }
    for (const auto& r : g.positions) {
        if (!std::isfinite(r[0]) || !std::isfinite(r[1]) || !std::isfinite(r[2])) {
            throw ValidationError("non-finite atom position");
        }
    }
}

SideFlux side_flux(const SystemParams&, double X, double theta, double solid_angle) {
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    if (!(solid_angle > 0.0 && solid_angle <= 4.0 * kPi)) throw ValidationError("solid angle must lie in (0, 4 pi]");
    const double s2 = std::sin(theta) * std::sin(theta);
    const double sat = X * X / (1.0 + X * X);
    const double geom = 3.0 * solid_angle / (8.0 * kPi);
    SideFlux f;
    f.shape = 0.5 * s2 * sat * sat;
    f.flux = geom * f.shape;
    f.emission_rate = 0.5 * X * X;
    f.weak_form = geom * s2 * f.emission_rate * X * X;
    return f;
}

double phase_sum(const std::vector<Position>& positions, const Position& direction) {
    const auto n = positions.size();
    if (n < 2) throw ValidationError("phase sum needs at least 2 atoms");
    double re = 0.0;
    double im = 0.0;
    for (const auto& r : positions) {
        const double phase = -2.0 * kPi * (direction[0] * r[0] + direction[1] * r[1] + direction[2] * r[2]);
        re += std::cos(phase);
        im += std::sin(phase);
    }
    const double dn = static_cast<double>(n);
    return (re * re + im * im - dn) / dn;
}

PhaseSumStats phase_sum_monte_carlo(const ScatterGeometry& geometry, std::size_t trials) {
    validate_geometry(geometry);
    const auto n = geometry.positions.size();
    if (n < 2) throw ValidationError("phase-sum Monte Carlo needs N >= 2");
    if (trials == 0) throw ValidationError("trials must be positive");

    PhaseSumStats s;
    s.trials = trials;
    s.seed = geometry.rng_seed;
    s.coherent_bound = static_cast<double>(n) - 1.0;
    s.min_pair_distance = min_pair_distance(geometry.positions);
    if (s.min_pair_distance < 1.0) {
        std::ostringstream os;
        os << "minimum pair distance " << s.min_pair_distance << " is below one wavelength";
        s.warnings.push_back(os.str());
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        std::mt19937_64 rng(splitmix64(geometry.rng_seed ^ splitmix64(i)));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double cz = 2.0 * u(rng) - 1.0;
        const double phi = 2.0 * kPi * u(rng);
        const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
        const Position dir{sz * std::cos(phi), sz * std::sin(phi), cz};
        const double v = std::abs(phase_sum(geometry.positions, dir));
        sum += v;
        s.max_abs = std::max(s.max_abs, v);
    }
    s.mean_abs = sum / static_cast<double>(trials);
    return s;
}

std::vector<Position> sample_cube_positions(std::size_t N, double side, std::uint64_t seed) {
    if (!(side > 0.0)) throw ValidationError("cube side must be positive");
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<Position> out(N);
    for (auto& r : out) r = {u(rng), u(rng), u(rng)};
    return out;
}

std::vector<Position> positions_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("geometry file is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw ValidationError("geometry file must be a JSON list of [x, y, z]");
    std::vector<Position> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) throw ValidationError("each position must be [x, y, z]");
        for (const auto& c : e) {
            if (!c.is_number()) throw ValidationError("position coordinates must be numbers");
        }
        out.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
    }
    return out;
}

std::string to_json(const PhaseSumStats& s) {
    nlohmann::ordered_json j;
    j["mean_abs"] = s.mean_abs;
    j["max_abs"] = s.max_abs;
    j["coherent_bound"] = s.coherent_bound;
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    return j.dump();
}

AuxiliaryValidity auxiliary_validity(const AuxiliaryChannel& ch, double g_main) {
    if (!(ch.g_aux >= 0.0) || !(ch.kappa_aux > 0.0)) {
        throw ValidationError("auxiliary channel needs g_aux >= 0 and kappa_aux > 0");
    }
    AuxiliaryValidity v;
    v.strong_damping = ch.kappa_aux >= 10.0 * ch.g_aux;
    v.weak_coupling = auxiliary_prefactor(ch) <= 0.1 * g_main;
    if (!v.strong_damping) v.warnings.emplace_back("auxiliary mode is not strongly damped (kappa_aux < 10 g_aux)");
    if (!v.weak_coupling) v.warnings.emplace_back("auxiliary coupling is not weak (g_aux^2/kappa_aux > 0.1 g)");
    return v;
}

double auxiliary_prefactor(const AuxiliaryChannel& ch) {
    if (!(ch.kappa_aux > 0.0)) throw ValidationError("kappa_aux must be positive");
    return ch.g_aux * ch.g_aux / ch.kappa_aux;
}

std::complex<double> auxiliary_channel_correlation(const AuxiliaryChannel& ch, std::complex<double> atomic) {
    return auxiliary_prefactor(ch) * atomic;
}

SpectrumSeries auxiliary_spectrum(const AuxiliaryChannel& ch, const SystemParams& p, double X,
                                  const std::vector<double>& y_grid) {
    if (y_grid.empty()) throw ValidationError("frequency grid is empty");
    const auto J = build_jacobian(p, X, Regime::full);
    if (!is_stable(J)) throw RegimeError("linearization invalid on the unstable branch");
    const auto c0 = covariance_row(solve_lyapunov(J, build_diffusion(X)), AnchorRow::nu_star);
    const double zero_delay = auxiliary_channel_correlation(ch, c0[basis::nu]).real();
    if (!(std::abs(zero_delay) > 0.0)) throw NumericalError("no incoherent component");

    SpectrumSeries s;
    s.y = y_grid;
    s.kind = SpectrumKind::atomic;
    s.method = SpectrumMethod::numeric_resolvent;
    s.params = p;
    s.X = X;
    if (p.raw) {
        for (auto& w : auxiliary_validity(ch, p.raw->g).warnings) s.warnings.push_back(w);
    }
    s.values.reserve(y_grid.size());
    for (double y : y_grid) {
        const auto v = laplace_correlation_vector(J, c0, {0.0, -y});
        s.values.push_back(auxiliary_channel_correlation(ch, v[basis::nu]).real() / (kPi * zero_delay));
    }
    return s;
}

}  // namespace obist
