#include "obist/lindyn.hpp"

#include "obist/errors.hpp"
#include "obist/steady_state.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace obist {

std::string_view to_string(MatrixKind k) {
    switch (k) {
        case MatrixKind::jacobian: return "jacobian";
        case MatrixKind::diffusion: return "diffusion";
        case MatrixKind::covariance: return "covariance";
    }
    return "unknown";
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::full: return "full";
        case Regime::weak: return "weak";
        case Regime::strong: return "strong";
    }
    return "unknown";
}

std::string_view FluctuationMatrix::units() const {
    switch (kind) {
        case MatrixKind::jacobian: return "gamma/2";
        case MatrixKind::diffusion: return "gamma/2";
        case MatrixKind::covariance: return "N-scaled";
    }
    return "";
}

FluctuationMatrix build_jacobian(const SystemParams& p, double X, Regime regime) {
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    using namespace basis;
    const double xi = p.xi;
    const double two_c = 2.0 * p.C;
    const double f = regime == Regime::weak ? 1.0 : 1.0 / (1.0 + X * X);

    FluctuationMatrix J;
    J.kind = MatrixKind::jacobian;
    auto& m = J.entries;
    m(z, z) = -xi;
    m(z, nu) = xi * two_c;
    m(z_star, z_star) = -xi;
    m(z_star, nu_star) = xi * two_c;
    m(nu, z) = -f;
    m(nu, nu) = -1.0;
    m(nu, mu) = X;
    m(nu_star, z_star) = -f;
    m(nu_star, nu_star) = -1.0;
    m(nu_star, mu) = X;
    m(mu, z) = X * f;
    m(mu, z_star) = X * f;
    m(mu, nu) = -X;
    m(mu, nu_star) = -X;
    m(mu, mu) = -2.0;

    if (regime == Regime::strong) {
        m(nu, z) = 0.0;
        m(nu_star, z_star) = 0.0;
        m(mu, z) = 0.0;
        m(mu, z_star) = 0.0;
    }
    return J;
}

FluctuationMatrix build_diffusion(double X) {
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    const double w = 2.0 * X * X / (1.0 + X * X);
    FluctuationMatrix D;
    D.kind = MatrixKind::diffusion;
    D.entries(basis::nu, basis::nu) = -w;
    D.entries(basis::nu_star, basis::nu_star) = -w;
    D.entries(basis::mu, basis::mu) = 4.0 * w;
    return D;
}

std::optional<std::string> regime_warning(const SystemParams& p, double X, Regime regime,
                                          const RegimeThresholds& th) {
    if (regime == Regime::full) return std::nullopt;
    const auto tp = turning_points(p.C);
    std::ostringstream os;
    if (regime == Regime::weak) {
        const double scale = tp.exists ? tp.X_minus : 1.0;
        const double limit = th.weak_fraction * scale;
        if (X < limit) return std::nullopt;
        os << "weak-excitation form used at X=" << X << " (expects X < " << limit << ")";
    } else {
        const double scale = tp.exists ? tp.X_plus : 1.0;
        const double limit = th.strong_factor * scale;
        if (X > limit) return std::nullopt;
        os << "strong-excitation form used at X=" << X << " (expects X > " << limit << ")";
    }
    return os.str();
}

double saturation_factor(double X, double xi) {
    return (X * X + (xi + 1.0) * (xi + 3.0)) / (2.0 * X * X + xi * (xi + 3.0));
}

std::complex<double> rabi_frequency_bar(double C, double xi) {
    return std::sqrt(std::complex<double>(2.0 * xi * C - 0.25 * (xi - 1.0) * (xi - 1.0), 0.0));
}

double weak_A(double C, double xi) { return 2.0 * C * (2.0 + xi + 2.0 * C) + (xi + 1.0) * (xi + 1.0); }

WeakScales weak_scales(const SystemParams& p, double X) {
    WeakScales s;
    const double xi = p.xi;
    const double C = p.C;
    s.G_bar = rabi_frequency_bar(C, xi);
    const std::complex<double> decay(-0.5 * (xi + 1.0), 0.0);
    const std::complex<double> i(0.0, 1.0);
    s.lambda_plus = decay + i * s.G_bar;
    s.lambda_minus = decay - i * s.G_bar;
    s.A = weak_A(C, xi);
    s.rho_plus = {-1.5, std::sqrt(2.0) * X};
    s.rho_minus = {-1.5, -std::sqrt(2.0) * X};
    s.K = saturation_factor(X, xi);
    if (p.raw) {
        const auto& w = *p.raw;
        const double n = static_cast<double>(p.N);
        const double detune = 0.5 * (w.kappa - 0.5 * w.gamma);
        const double gp2 = n * w.g * w.g - detune * detune;
        s.g_prime = std::sqrt(std::max(gp2, 0.0));
        s.gamma_prime = w.gamma * (1.0 + 2.0 * C);
        s.r = 0.5 * (w.kappa + 0.5 * w.gamma) * (w.kappa - 0.5 * *s.gamma_prime) / (w.kappa + 0.5 * *s.gamma_prime);
    }
    return s;
}

numerics::ComplexVector jacobian_eigenvalues(const FluctuationMatrix& J) {
    return numerics::eigenvalues(J.entries);
}

bool is_stable(const FluctuationMatrix& J) {
    if (J.kind != MatrixKind::jacobian) throw ValidationError("is_stable expects a jacobian");
    const auto ev = jacobian_eigenvalues(J);
    const double margin = numerics::default_tolerances().stability_margin;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (!(ev[k].real() < -margin)) return false;
    }
    return true;
}

std::string to_json(const FluctuationMatrix& m) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(m.kind);
    j["units"] = m.units();
    j["basis"] = {"z", "z*", "nu", "nu*", "mu"};
    auto rows = nlohmann::json::array();
    for (int r = 0; r < 5; ++r) {
        auto row = nlohmann::json::array();
        for (int c = 0; c < 5; ++c) row.push_back(m.entries(r, c));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j.dump();
}

}  // namespace obist
