#include "obist/correlations.hpp"

#include "obist/covariance.hpp"
#include "obist/errors.hpp"
#include "obist/lindyn.hpp"
#include "obist/steady_state.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace obist {

namespace {

using cplx = std::complex<double>;

// sin(G t)/G, continuous through G = 0 and for imaginary G.
cplx sin_over(cplx G, double t) {
    if (std::abs(G) * std::max(t, 1.0) < 1e-8) return t;
    return std::sin(G * t) / G;
}

// cos(G t) + k sin(G t)/G, real for real or imaginary G.
double oscillation(cplx G, double t, double k) { return (std::cos(G * t) + k * sin_over(G, t)).real(); }

void require_raw(const SystemParams& p, G2Variant v) {
    if (!p.raw) throw ValidationError(std::string(to_string(v)) + " requires raw rates g, kappa, gamma");
}

void require_impedance_matched(const SystemParams& p, G2Variant v) {
    if (p.xi != 1.0) {
        std::ostringstream os;
        os << to_string(v) << " requires xi = 1 (got xi=" << p.xi << ")";
        throw RegimeError(os.str());
    }
}

// Physical-rate bracket shared by the recast and pure-state forms.
double physical_bracket(const SystemParams& p, double tau_bar) {
    const auto& w = *p.raw;
    const double tau = TimeFrequencyScales::tau(tau_bar, w.gamma);
    const double n = static_cast<double>(p.N);
    const double gamma_prime = w.gamma * (1.0 + 2.0 * p.C);
    const double r = 0.5 * (w.kappa + 0.5 * w.gamma) * (w.kappa - 0.5 * gamma_prime) / (w.kappa + 0.5 * gamma_prime);
    const double detune = 0.5 * (w.kappa - 0.5 * w.gamma);
    const cplx g_prime = std::sqrt(cplx(n * w.g * w.g - detune * detune, 0.0));
    return std::exp(-0.5 * (w.kappa + 0.5 * w.gamma) * tau) * oscillation(g_prime, tau, r);
}

double g2_point(G2Variant v, const SystemParams& p, double X, double t) {
    const double xi = p.xi;
    const double C = p.C;
    const double n = static_cast<double>(p.N);
    const cplx G = rabi_frequency_bar(C, xi);
    const double envelope = std::exp(-0.5 * (xi + 1.0) * t);
    switch (v) {
        case G2Variant::atomic_weak: {
            const double a = 1.0 + xi + 2.0 * C;
            const double pre = 2.0 * a / (n * (xi + 1.0) * (1.0 + 2.0 * C));
            return 1.0 - pre * envelope * oscillation(G, t, (xi + 1.0) * (xi - 1.0 - 2.0 * C) / (2.0 * a));
        }
        case G2Variant::atomic_weak_recast: {
            const auto& w = *p.raw;
            const double gamma_prime = w.gamma * (1.0 + 2.0 * C);
            const double pre =
                2.0 * (w.kappa + 0.5 * gamma_prime) / (n * (w.kappa + 0.5 * w.gamma) * (1.0 + 2.0 * C));
            return 1.0 - pre * physical_bracket(p, t);
        }
        case G2Variant::forward_weak: {
            const double pre = 2.0 / n * (xi / (xi + 1.0)) * (4.0 * C * C / (1.0 + 2.0 * C));
            return 1.0 - pre * envelope * oscillation(G, t, 0.5 * (xi + 1.0));
        }
        case G2Variant::single_atom_pure_state: {
            const double b = 1.0 - physical_bracket(p, t);
            return b * b;
        }
        case G2Variant::side_large_c:
            return 1.0 + X * X * (2.0 * std::exp(-t) - std::exp(-2.0 * t));
        case G2Variant::atomic_impedance: {
            const double rt = std::sqrt(2.0 * C);
            return 1.0 - std::exp(-t) / (n * (1.0 + 2.0 * C)) *
                             (2.0 * (1.0 + C) * std::cos(rt * t) - rt * std::sin(rt * t));
        }
        case G2Variant::forward_impedance: {
            const double rt = std::sqrt(2.0 * C);
            return 1.0 - 4.0 * C * C / (n * (1.0 + 2.0 * C)) * std::exp(-t) *
                             (std::cos(rt * t) + std::sin(rt * t) / rt);
        }
        case G2Variant::atomic_strong: {
            const double x2 = X * X;
            const double pre = 2.0 * n * x2 / ((n + x2) * (n + x2));
            const double w = std::sqrt(2.0) * X;
            return 1.0 + pre * std::exp(-1.5 * t) * (std::cos(w * t) + std::sin(w * t) / (2.0 * w));
        }
    }
    throw ValidationError("unknown g2 variant");
}

void flag_negative(CorrelationSeries& s) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.values[i] < 0.0) {
            s.negative_flagged = true;
            std::ostringstream os;
            os << "g2 < 0 at tau_bar=" << s.tau_bar[i] << " (first of possibly several): linearization breakdown";
            s.warnings.push_back(os.str());
            return;
        }
    }
}

void require_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw ValidationError("delay grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0)) throw ValidationError("delays must be nonnegative");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("delay grid must be ascending");
    }
}

}  // namespace

std::string_view to_string(G2Variant v) {
    switch (v) {
        case G2Variant::atomic_weak: return "atomic-weak";
        case G2Variant::atomic_weak_recast: return "atomic-weak-recast";
        case G2Variant::forward_weak: return "forward-weak";
        case G2Variant::single_atom_pure_state: return "single-atom-pure-state";
        case G2Variant::side_large_c: return "side-large-C";
        case G2Variant::atomic_impedance: return "atomic-impedance";
        case G2Variant::forward_impedance: return "forward-impedance";
        case G2Variant::atomic_strong: return "atomic-strong";
    }
    return "unknown";
}

std::optional<G2Variant> g2_variant_from_string(std::string_view s) {
    for (auto v : {G2Variant::atomic_weak, G2Variant::atomic_weak_recast, G2Variant::forward_weak,
                   G2Variant::single_atom_pure_state, G2Variant::side_large_c, G2Variant::atomic_impedance,
                   G2Variant::forward_impedance, G2Variant::atomic_strong}) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

std::string_view to_string(VarianceMethod m) {
    return m == VarianceMethod::closed_form ? "closed-form" : "lyapunov";
}

CorrelationSeries g2_closed_form(G2Variant variant, const SystemParams& p, double X,
                                 const std::vector<double>& tau_bar_grid) {
    if (p.N < 1) throw ValidationError("N must be at least 1");
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    require_grid(tau_bar_grid);

    CorrelationSeries s;
    s.variant = std::string(to_string(variant));
    s.params = p;
    s.X = X;
    switch (variant) {
        case G2Variant::atomic_weak_recast:
        case G2Variant::single_atom_pure_state:
            require_raw(p, variant);
            break;
        case G2Variant::atomic_impedance:
        case G2Variant::forward_impedance:
            require_impedance_matched(p, variant);
            break;
        default: break;
    }
    switch (variant) {
        case G2Variant::atomic_weak:
        case G2Variant::atomic_weak_recast:
        case G2Variant::forward_weak:
        case G2Variant::atomic_impedance:
        case G2Variant::forward_impedance:
            if (auto w = regime_warning(p, X, Regime::weak)) s.warnings.push_back(*w);
            break;
        case G2Variant::atomic_strong: {
            if (auto w = regime_warning(p, X, Regime::strong)) s.warnings.push_back(*w);
            if (X * X > 0.1 * static_cast<double>(p.N)) {
                std::ostringstream os;
                os << "strong-excitation g2 expects X^2 << N (X^2=" << X * X << ", N=" << p.N << ")";
                s.warnings.push_back(os.str());
            }
            break;
        }
        case G2Variant::side_large_c:
            if (2.0 * p.C < 10.0) s.warnings.emplace_back("side-scattering form expects large 2C");
            break;
        case G2Variant::single_atom_pure_state: break;
    }

    s.tau_bar = tau_bar_grid;
    s.values.reserve(tau_bar_grid.size());
    for (double t : tau_bar_grid) s.values.push_back(g2_point(variant, p, X, t));
    flag_negative(s);
    return s;
}

CorrelationSeries g2_numeric(const SystemParams& p, double X, const std::vector<double>& tau_bar_grid) {
    if (p.N < 1) throw ValidationError("N must be at least 1");
    require_grid(tau_bar_grid);
    if (!(X > 0.0)) throw NumericalError("coherent amplitude vanishes");

    const auto J = build_jacobian(p, X, Regime::full);
    if (!is_stable(J)) throw RegimeError("linearization invalid on the unstable branch");
    const auto cov = solve_lyapunov(J, build_diffusion(X));
    const CorrelationVector c0 = covariance_row(cov, AnchorRow::nu_star);
    const CorrelationPropagator prop(J, c0);

    const double n_inv = 1.0 / static_cast<double>(p.N);
    const double pol = X / (1.0 + X * X);
    const double P = pol * pol;
    const double denom = P + n_inv * c0[basis::nu].real();

    CorrelationSeries s;
    s.variant = "numeric";
    s.params = p;
    s.X = X;
    s.tau_bar = tau_bar_grid;
    s.values.reserve(tau_bar_grid.size());
    double normal_share = 0.0;
    for (double t : tau_bar_grid) {
        const Vector5d v = real_part_checked(prop.at(t));
        const double normal = v[basis::nu];
        const double anomalous = v[basis::nu_star];
        const double mag = std::abs(normal) + std::abs(anomalous);
        if (mag > 0.0) normal_share = std::max(normal_share, std::abs(normal) / mag);
        s.values.push_back(1.0 + 2.0 * n_inv * P * (normal + anomalous) / (denom * denom));
    }
    s.diagnostics["normal_term_share"] = normal_share;
    s.diagnostics["eigendecomposition"] = prop.uses_eigendecomposition() ? 1.0 : 0.0;
    flag_negative(s);
    return s;
}

double anomalous_correlator_time(const SystemParams& p, double X, double tau_bar) {
    if (!(tau_bar >= 0.0)) throw ValidationError("tau_bar must be nonnegative");
    const double xi = p.xi;
    const double C = p.C;
    const cplx G = rabi_frequency_bar(C, xi);
    const double a = 1.0 + xi + 2.0 * C;
    const double pre = -X * X / ((xi + 1.0) * (1.0 + 2.0 * C));
    const double bracket = (a * std::cos(G * tau_bar) +
                            0.5 * (xi + 1.0) * (xi - 1.0 - 2.0 * C) * sin_over(G, tau_bar)).real();
    return pre * std::exp(-0.5 * (xi + 1.0) * tau_bar) * bracket;
}

QuadratureVariances quadrature_variances(const SystemParams& p, double X) {
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    QuadratureVariances q;
    const auto J = build_jacobian(p, X, Regime::full);
    const bool stable = is_stable(J);
    std::optional<FluctuationMatrix> cov;
    if (stable) cov = solve_lyapunov(J, build_diffusion(X));

    if (!regime_warning(p, X, Regime::weak)) {
        const auto row = weak_covariance_row(p, X);
        q.c_normal = row[basis::nu].real();
        q.c_anomalous = row[basis::nu_star].real();
        q.method = VarianceMethod::closed_form;
    } else {
        if (!cov) throw RegimeError("linearization invalid on the unstable branch");
        q.c_normal = (*cov)(basis::nu_star, basis::nu);
        q.c_anomalous = (*cov)(basis::nu_star, basis::nu_star);
        q.method = VarianceMethod::lyapunov;
    }

    const double jz = steady_moments(X).j_z;
    q.var_J0 = 0.5 * (q.c_normal - q.c_anomalous) - 0.25 * jz;
    q.var_Jpi2 = 0.5 * (q.c_normal + q.c_anomalous) - 0.25 * jz;
    q.squeezed = q.c_normal + q.c_anomalous < 0.0;
    if (q.c_normal != 0.0) q.ratio = std::abs(q.c_anomalous) / q.c_normal;
    if (cov && (*cov)(basis::z_star, basis::z) != 0.0) {
        q.field_ratio = std::abs((*cov)(basis::z, basis::z)) / (*cov)(basis::z_star, basis::z);
    }
    return q;
}

}  // namespace obist
