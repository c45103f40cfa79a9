// lindyn.hpp: linearized drift and diffusion in the (z, z*, nu, nu*, mu) basis
#pragma once

#include "obist/numerics.hpp"
#include "obist/params.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace obist {

namespace basis {
inline constexpr int z = 0;
inline constexpr int z_star = 1;
inline constexpr int nu = 2;
inline constexpr int nu_star = 3;
inline constexpr int mu = 4;
inline constexpr std::array<std::string_view, 5> labels{"z", "z*", "nu", "nu*", "mu"};
}  // namespace basis

using Matrix5 = Eigen::Matrix<double, 5, 5>;

enum class MatrixKind { jacobian, diffusion, covariance };
enum class Regime { full, weak, strong };

std::string_view to_string(MatrixKind k);
std::string_view to_string(Regime r);

// Jacobian and diffusion in units of gamma/2; covariance scaled by N.
struct FluctuationMatrix {
    Matrix5 entries = Matrix5::Zero();
    MatrixKind kind = MatrixKind::jacobian;

    double operator()(int r, int c) const { return entries(r, c); }
    std::string_view units() const;
};

FluctuationMatrix build_jacobian(const SystemParams& p, double X, Regime regime = Regime::full);

// diag(0, 0, -w, -w, 4w), w = 2 X^2 / (1 + X^2). Indefinite for X > 0.
FluctuationMatrix build_diffusion(double X);

struct RegimeThresholds {
    double weak_fraction = 0.1;  // weak requires X < weak_fraction * X-
    double strong_factor = 3.0;  // strong requires X > strong_factor * X+
};

// Warning text when X is outside the intended range of the regime, else nullopt.
// For C <= 4 the turning-point scale is replaced by 1.
std::optional<std::string> regime_warning(const SystemParams& p, double X, Regime regime,
                                          const RegimeThresholds& th = {});

double saturation_factor(double X, double xi);

struct WeakScales {
    std::complex<double> lambda_plus;
    std::complex<double> lambda_minus;
    std::complex<double> G_bar;  // purely imaginary when overdamped
    double A = 0.0;
    std::optional<double> g_prime;      // rad/s, needs raw rates
    std::optional<double> gamma_prime;  // rad/s
    std::optional<double> r;            // rad/s
    std::complex<double> rho_plus;
    std::complex<double> rho_minus;
    double K = 0.0;
};

// Takes C as given so that the degenerate C = 0 case can be evaluated.
WeakScales weak_scales(const SystemParams& p, double X);

std::complex<double> rabi_frequency_bar(double C, double xi);
double weak_A(double C, double xi);

numerics::ComplexVector jacobian_eigenvalues(const FluctuationMatrix& J);
bool is_stable(const FluctuationMatrix& J);

// {"kind", "units", "basis", "entries": 5x5 row-major}.
std::string to_json(const FluctuationMatrix& m);

}  // namespace obist
