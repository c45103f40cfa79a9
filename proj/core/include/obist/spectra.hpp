// spectra.hpp: incoherent spectra (numeric resolvent and closed forms), anomalous transforms
#pragma once

#include "obist/covariance.hpp"
#include "obist/lindyn.hpp"
#include "obist/params.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace obist {

enum class SpectrumKind { atomic, forward, squeezing };

enum class SpectrumMethod {
    numeric_resolvent,
    weak_closed,
    bad_cavity,
    good_cavity,
    strong_coupling,
    upper_branch,
    upper_forward_lorentzian,
    upper_forward_bad_cavity,
};

std::string_view to_string(SpectrumKind k);
std::string_view to_string(SpectrumMethod m);
std::optional<SpectrumMethod> spectrum_method_from_string(std::string_view s);

struct NormalizationCheck {
    double integral = 0.0;
    double quadrature_error = 0.0;
    double tail_bound = 0.0;  // bound on |T| mass outside [-half_width, half_width]
    double half_width = 0.0;
    std::size_t points = 0;
    bool certified = false;
};

struct SpectrumSeries {
    std::vector<double> y;
    std::vector<double> values;
    SpectrumKind kind = SpectrumKind::atomic;
    SpectrumMethod method = SpectrumMethod::numeric_resolvent;
    std::optional<std::pair<double, double>> validity_window;
    bool unit_area = true;
    int tail_exponent = 2;
    std::vector<std::string> warnings;
    SystemParams params;
    double X = 0.0;
};

// A spectrum as a function of y together with its metadata.
class SpectrumModel {
public:
    // Full Jacobian and Lyapunov row; atomic reads (nu*, nu), forward reads (z*, z).
    static SpectrumModel numeric(const SystemParams& p, double X, SpectrumKind kind);
    static SpectrumModel closed_form(SpectrumMethod method, const SystemParams& p, double X);

    double operator()(double y) const { return eval_(y); }

    SpectrumSeries sample(const std::vector<double>& y_grid) const;
    NormalizationCheck certify_normalization(double tolerance = 1e-3) const;

    SpectrumKind kind() const { return kind_; }
    SpectrumMethod method() const { return method_; }
    bool unit_area() const { return unit_area_; }
    int tail_exponent() const { return tail_exponent_; }
    const std::optional<std::pair<double, double>>& validity_window() const { return window_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    double structure_scale() const { return scale_; }

private:
    SpectrumModel() = default;

    std::function<double(double)> eval_;
    SpectrumKind kind_ = SpectrumKind::atomic;
    SpectrumMethod method_ = SpectrumMethod::numeric_resolvent;
    bool unit_area_ = true;
    int tail_exponent_ = 2;
    std::optional<std::pair<double, double>> window_;
    std::vector<std::string> warnings_;
    double scale_ = 1.0;      // largest frequency scale of the structure
    double fine_width_ = 1.0; // finest feature width near y = 0
    SystemParams params_;
    double X_ = 0.0;
};

SpectrumSeries spectrum_numeric(const SystemParams& p, double X, SpectrumKind kind,
                                const std::vector<double>& y_grid);
SpectrumSeries spectrum_closed_form(SpectrumMethod method, const SystemParams& p, double X,
                                    const std::vector<double>& y_grid);

// Pointwise closed-form evaluation.
double closed_form_value(SpectrumMethod method, const SystemParams& p, double X, double y);

// Integrates f over an expanding sinh-spaced grid until the y^{-tail_exponent} tail
// bound falls below tolerance and grid refinement changes the integral by less than it.
NormalizationCheck certify_normalization(const std::function<double(double)>& f, int tail_exponent,
                                         double fine_width, double initial_half_width,
                                         double tolerance = 1e-3);

enum class AnomalousTransform { nu_star_z_star, nu_star_nu_star, nu_star_mu, nu_star_nu };

std::string_view to_string(AnomalousTransform w);

// Weak-excitation Laplace transforms of the nu* row. Throws NumericalError near a pole.
std::complex<double> anomalous_laplace(AnomalousTransform which, const SystemParams& p, double X,
                                       std::complex<double> s_bar);

// Re of the nu*nu* transform at s_bar = -iy; signed and not normalized.
SpectrumSeries squeezing_spectrum_atomic(const SystemParams& p, double X, const std::vector<double>& y_grid);

std::vector<double> symmetric_grid(double half_width, std::size_t points);

}  // namespace obist
