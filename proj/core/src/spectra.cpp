#include "obist/spectra.hpp"

#include "obist/errors.hpp"
#include "obist/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace obist {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kMuchGreater = 10.0;

cplx weak_denominator(const SystemParams& p, cplx s) { return (p.xi + s) * (1.0 + s) + 2.0 * p.xi * p.C; }

double eq_weak_closed(const SystemParams& p, double y) {
    const cplx s(0.0, -y);
    const double xi = p.xi;
    const double C = p.C;
    const double A = weak_A(C, xi);
    const cplx d = weak_denominator(p, s);
    const cplx first = (xi * (xi + 1.0) * (xi + 1.0) + s * A) / (A * d);
    const cplx second =
        (xi + 1.0) * (1.0 + 2.0 * C) * (xi + s) * ((xi + s) * (xi + 1.0) + 2.0 * C * s) / (A * d * d);
    return (first + second).real() / kPi;
}

double eq_bad_cavity(const SystemParams& p, double y) {
    const double b = 1.0 + 2.0 * p.C;
    const double q = b * b + y * y;
    return 2.0 * b * b * b / (kPi * q * q);
}

double eq_good_cavity(const SystemParams& p, double y) {
    const double xi = p.xi;
    const double C = p.C;
    const cplx iy(0.0, y);
    const double pre = 2.0 * (xi + 2.0 * C) * (C + 1.0);
    const cplx den = xi * (1.0 + 2.0 * C) - iy;
    const cplx first = (xi - 2.0 * iy * (xi + 2.0 * C) * (C + 1.0)) / (pre * den);
    const cplx second = (xi + 1.0) * (1.0 + 2.0 * C) * (xi - iy) * (xi - iy * (1.0 + 2.0 * C)) / (pre * den * den);
    return (first + second).real() / kPi;
}

double eq_strong_coupling(const SystemParams& p, double y) {
    const double a = 0.5 * (p.xi + 1.0);
    const double g = std::sqrt(2.0 * p.xi * p.C);
    const double a3 = a * a * a;
    const double qp = a * a + (y + g) * (y + g);
    const double qm = a * a + (y - g) * (y - g);
    return (a3 / (qp * qp) + a3 / (qm * qm)) / kPi;
}

double eq_upper_branch(double X, double y) {
    const cplx s(0.0, -y);
    const cplx b = (1.0 + s) * (2.0 + s);
    return ((X * X + b) / ((1.0 + s) * (2.0 * X * X + b))).real() / kPi;
}

double eq_upper_forward_lorentzian(const SystemParams& p, double y) {
    const cplx s(0.0, -y);
    return ((1.0 + p.xi + s) / ((p.xi + s) * (1.0 + s))).real() / kPi;
}

double eq_upper_forward_bad_cavity(const SystemParams& p, double X, double y) {
    const cplx s(0.0, -y);
    const double xi = p.xi;
    const cplx b = (1.0 + s) * (2.0 + s);
    const cplx v = 2.0 / (xi + s) + xi * (2.0 * X * X + 2.0 * b) / ((2.0 * X * X + b) * (1.0 + s) * (xi + s));
    return v.real() / kPi;
}

SpectrumKind kind_of(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::upper_forward_lorentzian:
        case SpectrumMethod::upper_forward_bad_cavity: return SpectrumKind::forward;
        default: return SpectrumKind::atomic;
    }
}

void check_weak_pole(const SystemParams& p, cplx s) {
    const auto ws = weak_scales(p, 0.0);
    const double tol = numerics::default_tolerances().pole_distance;
    if (std::abs(s - ws.lambda_plus) < tol || std::abs(s - ws.lambda_minus) < tol) {
        std::ostringstream os;
        os << "s_bar " << s << " is within 1e-9 of a pole of the weak-excitation transform";
        throw NumericalError(os.str());
    }
}

}  // namespace

std::string_view to_string(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::atomic: return "atomic";
        case SpectrumKind::forward: return "forward";
        case SpectrumKind::squeezing: return "squeezing";
    }
    return "unknown";
}

std::string_view to_string(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::numeric_resolvent: return "numeric";
        case SpectrumMethod::weak_closed: return "weak-closed";
        case SpectrumMethod::bad_cavity: return "bad-cavity";
        case SpectrumMethod::good_cavity: return "good-cavity";
        case SpectrumMethod::strong_coupling: return "strong-coupling";
        case SpectrumMethod::upper_branch: return "upper-branch";
        case SpectrumMethod::upper_forward_lorentzian: return "upper-forward-lorentzian";
        case SpectrumMethod::upper_forward_bad_cavity: return "upper-forward-bad-cavity";
    }
    return "unknown";
}

std::optional<SpectrumMethod> spectrum_method_from_string(std::string_view s) {
    for (auto m : {SpectrumMethod::numeric_resolvent, SpectrumMethod::weak_closed, SpectrumMethod::bad_cavity,
                   SpectrumMethod::good_cavity, SpectrumMethod::strong_coupling, SpectrumMethod::upper_branch,
                   SpectrumMethod::upper_forward_lorentzian, SpectrumMethod::upper_forward_bad_cavity}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

std::string_view to_string(AnomalousTransform w) {
    switch (w) {
        case AnomalousTransform::nu_star_z_star: return "nu*z*";
        case AnomalousTransform::nu_star_nu_star: return "nu*nu*";
        case AnomalousTransform::nu_star_mu: return "nu*mu";
        case AnomalousTransform::nu_star_nu: return "nu*nu";
    }
    return "unknown";
}

double closed_form_value(SpectrumMethod method, const SystemParams& p, double X, double y) {
    switch (method) {
        case SpectrumMethod::weak_closed: return eq_weak_closed(p, y);
        case SpectrumMethod::bad_cavity: return eq_bad_cavity(p, y);
        case SpectrumMethod::good_cavity: return eq_good_cavity(p, y);
        case SpectrumMethod::strong_coupling: return eq_strong_coupling(p, y);
        case SpectrumMethod::upper_branch: return eq_upper_branch(X, y);
        case SpectrumMethod::upper_forward_lorentzian: return eq_upper_forward_lorentzian(p, y);
        case SpectrumMethod::upper_forward_bad_cavity: return eq_upper_forward_bad_cavity(p, X, y);
        case SpectrumMethod::numeric_resolvent: break;
    }
    throw ValidationError("numeric spectrum has no closed form");
}

SpectrumModel SpectrumModel::numeric(const SystemParams& p, double X, SpectrumKind kind) {
    if (kind == SpectrumKind::squeezing) throw ValidationError("numeric spectrum supports atomic and forward kinds");
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    const auto J = build_jacobian(p, X, Regime::full);
    if (!is_stable(J)) throw RegimeError("linearization invalid on the unstable branch");
    const auto cov = solve_lyapunov(J, build_diffusion(X));
    const AnchorRow row = kind == SpectrumKind::atomic ? AnchorRow::nu_star : AnchorRow::z_star;
    const int readout = kind == SpectrumKind::atomic ? basis::nu : basis::z;
    const CorrelationVector c0 = covariance_row(cov, row);
    const double norm = c0[readout].real();
    if (!(std::abs(norm) > 0.0)) throw NumericalError("no incoherent component");

    const auto ev = jacobian_eigenvalues(J);
    const numerics::ComplexMatrix Jc = J.entries.cast<cplx>();

    SpectrumModel m;
    m.kind_ = kind;
    m.method_ = SpectrumMethod::numeric_resolvent;
    m.unit_area_ = true;
    m.tail_exponent_ = 2;
    m.params_ = p;
    m.X_ = X;
    double fine = 1.0;
    double coarse = 1.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        fine = std::min(fine, std::abs(ev[k].real()));
        coarse = std::max(coarse, std::abs(ev[k]));
    }
    m.fine_width_ = fine;
    m.scale_ = coarse;
    m.eval_ = [Jc, ev, c0, readout, norm](double y) {
        const cplx s(0.0, -y);
        for (Eigen::Index k = 0; k < ev.size(); ++k) {
            if (std::abs(s - ev[k]) < numerics::default_tolerances().pole_distance) {
                throw NumericalError("frequency lies on a pole of the resolvent");
            }
        }
        const numerics::ComplexMatrix A = s * numerics::ComplexMatrix::Identity(5, 5) - Jc;
        const numerics::ComplexVector v = numerics::solve_complex_linear(A, c0.entries);
        return v[readout].real() / (kPi * norm);
    };
    return m;
}

SpectrumModel SpectrumModel::closed_form(SpectrumMethod method, const SystemParams& p, double X) {
    if (method == SpectrumMethod::numeric_resolvent) return numeric(p, X, SpectrumKind::atomic);
    SpectrumModel m;
    m.kind_ = kind_of(method);
    m.method_ = method;
    m.params_ = p;
    m.X_ = X;
    m.eval_ = [method, p, X](double y) { return closed_form_value(method, p, X, y); };

    const double xi = p.xi;
    const double two_c = 2.0 * p.C;
    const double rabi = std::sqrt(2.0 * xi * p.C);
    std::ostringstream warn;
    switch (method) {
        case SpectrumMethod::weak_closed:
            if (auto w = regime_warning(p, X, Regime::weak)) m.warnings_.push_back(*w);
            m.tail_exponent_ = 4;
            m.fine_width_ = std::min({1.0, xi, 0.5 * (xi + 1.0)});
            m.scale_ = std::max({1.0, xi, 1.0 + two_c, rabi});
            break;
        case SpectrumMethod::bad_cavity:
            if (xi < kMuchGreater * std::max(1.0, two_c)) {
                warn << "bad-cavity form expects xi >> 1, 2C (xi=" << xi << ", 2C=" << two_c << ")";
                m.warnings_.push_back(warn.str());
            }
            m.tail_exponent_ = 4;
            m.fine_width_ = 1.0 + two_c;
            m.scale_ = 1.0 + two_c;
            break;
        case SpectrumMethod::good_cavity:
            if (xi > std::min(1.0, two_c) / kMuchGreater) {
                warn << "good-cavity form expects xi << 1, 2C (xi=" << xi << ", 2C=" << two_c << ")";
                m.warnings_.push_back(warn.str());
            }
            m.unit_area_ = false;
            m.tail_exponent_ = 2;
            m.window_ = std::make_pair(-2.0 * xi, 2.0 * xi);
            m.fine_width_ = xi;
            m.scale_ = std::max(1.0, 1.0 + two_c);
            break;
        case SpectrumMethod::strong_coupling:
            if (kMuchGreater * (xi + 1.0) > 2.0 * rabi) {
                warn << "strong-coupling form expects xi+1 << 2 sqrt(2 xi C) (xi+1=" << xi + 1.0
                     << ", 2 sqrt(2 xi C)=" << 2.0 * rabi << ")";
                m.warnings_.push_back(warn.str());
            }
            m.tail_exponent_ = 4;
            m.fine_width_ = 0.5 * (xi + 1.0);
            m.scale_ = std::max(1.0, rabi);
            break;
        case SpectrumMethod::upper_branch:
        case SpectrumMethod::upper_forward_lorentzian:
        case SpectrumMethod::upper_forward_bad_cavity:
            if (auto w = regime_warning(p, X, Regime::strong)) m.warnings_.push_back(*w);
            if (method == SpectrumMethod::upper_forward_lorentzian && X < kMuchGreater * xi) {
                warn << "upper-forward Lorentzian expects X >> xi (X=" << X << ", xi=" << xi << ")";
                m.warnings_.push_back(warn.str());
            }
            if (method == SpectrumMethod::upper_forward_bad_cavity && xi < kMuchGreater * std::max(1.0, X)) {
                warn << "upper-forward bad-cavity form expects xi >> X (X=" << X << ", xi=" << xi << ")";
                m.warnings_.push_back(warn.str());
            }
            m.unit_area_ = method != SpectrumMethod::upper_forward_bad_cavity;
            m.tail_exponent_ = 2;
            m.fine_width_ = std::min({1.0, xi});
            m.scale_ = std::max({1.0, std::sqrt(2.0) * X, method == SpectrumMethod::upper_branch ? 1.0 : xi});
            break;
        case SpectrumMethod::numeric_resolvent: break;
    }
    return m;
}

SpectrumSeries SpectrumModel::sample(const std::vector<double>& y_grid) const {
    if (y_grid.empty()) throw ValidationError("frequency grid is empty");
    SpectrumSeries s;
    s.y = y_grid;
    s.values.reserve(y_grid.size());
    for (double y : y_grid) s.values.push_back(eval_(y));
    s.kind = kind_;
    s.method = method_;
    s.validity_window = window_;
    s.unit_area = unit_area_;
    s.tail_exponent = tail_exponent_;
    s.warnings = warnings_;
    s.params = params_;
    s.X = X_;
    return s;
}

NormalizationCheck SpectrumModel::certify_normalization(double tolerance) const {
    return obist::certify_normalization(eval_, tail_exponent_, 0.05 * fine_width_, 10.0 * scale_, tolerance);
}

NormalizationCheck certify_normalization(const std::function<double(double)>& f, int tail_exponent,
                                         double fine_width, double initial_half_width, double tolerance) {
    if (tail_exponent < 2) throw ValidationError("tail exponent must be at least 2");
    if (!(fine_width > 0.0) || !(initial_half_width > 0.0)) throw ValidationError("widths must be positive");

    constexpr double kMaxHalfWidth = 1e9;
    constexpr std::size_t kMaxPoints = 1u << 22;

    // y = w sinh(u), u uniform on [-U, U]: spacing ~w near 0 and ~y du in the wings.
    auto integrate = [&](double L, std::size_t n) {
        const double U = std::asinh(L / fine_width);
        std::vector<double> y(n);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = -U + 2.0 * U * static_cast<double>(i) / static_cast<double>(n - 1);
            y[i] = fine_width * std::sinh(u);
        }
        y.front() = -L;
        y.back() = L;
        for (std::size_t i = 0; i < n; ++i) v[i] = f(y[i]);
        return numerics::trapezoid(y, v);
    };

    NormalizationCheck out;
    double L = initial_half_width;
    while (L <= kMaxHalfWidth) {
        const double p = static_cast<double>(tail_exponent);
        out.tail_bound = (std::abs(f(L)) + std::abs(f(-L))) * L / (p - 1.0);
        if (out.tail_bound < tolerance) break;
        L *= 2.0;
    }
    out.half_width = L;

    std::size_t n = 2049;
    double previous = integrate(L, n).value;
    while (true) {
        const std::size_t next = 2 * n - 1;
        const auto q = integrate(L, next);
        out.integral = q.value;
        out.quadrature_error = std::abs(q.value - previous) / 3.0;
        out.points = next;
        if (out.quadrature_error < 0.1 * tolerance || next >= kMaxPoints) break;
        previous = q.value;
        n = next;
    }
    out.certified = out.tail_bound < tolerance && out.quadrature_error < 0.1 * tolerance;
    return out;
}

SpectrumSeries spectrum_numeric(const SystemParams& p, double X, SpectrumKind kind,
                                const std::vector<double>& y_grid) {
    return SpectrumModel::numeric(p, X, kind).sample(y_grid);
}

SpectrumSeries spectrum_closed_form(SpectrumMethod method, const SystemParams& p, double X,
                                    const std::vector<double>& y_grid) {
    return SpectrumModel::closed_form(method, p, X).sample(y_grid);
}

std::complex<double> anomalous_laplace(AnomalousTransform which, const SystemParams& p, double X, cplx s) {
    check_weak_pole(p, s);
    const double xi = p.xi;
    const double C = p.C;
    const double b = 1.0 + 2.0 * C;
    const double x1 = xi + 1.0;
    const double X2 = X * X;
    const cplx d = weak_denominator(p, s);
    switch (which) {
        case AnomalousTransform::nu_star_z_star:
            return -2.0 * xi * C * X2 / (x1 * b) * (s + xi + 2.0 * (C + 1.0)) / d;
        case AnomalousTransform::nu_star_nu_star:
            return -X2 / (x1 * b) * ((1.0 + xi + 2.0 * C) * s + xi * x1) / d;
        case AnomalousTransform::nu_star_mu:
            return X2 * X * ((xi + s) * x1 + 2.0 * C * s) / (b * x1 * d);
        case AnomalousTransform::nu_star_nu: {
            const double A = weak_A(C, xi);
            const cplx first = (A * s + xi * x1 * x1) / (x1 * b * d);
            const cplx second = (xi + s) * ((xi + s) * x1 + 2.0 * C * s) / (d * d);
            return X2 * X2 / (x1 * b) * (first + second);
        }
    }
    throw ValidationError("unknown anomalous transform");
}

SpectrumSeries squeezing_spectrum_atomic(const SystemParams& p, double X, const std::vector<double>& y_grid) {
    if (y_grid.empty()) throw ValidationError("frequency grid is empty");
    SpectrumSeries s;
    s.y = y_grid;
    s.kind = SpectrumKind::squeezing;
    s.method = SpectrumMethod::weak_closed;
    s.unit_area = false;
    s.tail_exponent = 2;
    s.params = p;
    s.X = X;
    if (auto w = regime_warning(p, X, Regime::weak)) s.warnings.push_back(*w);
    s.values.reserve(y_grid.size());
    for (double y : y_grid) {
        s.values.push_back(anomalous_laplace(AnomalousTransform::nu_star_nu_star, p, X, {0.0, -y}).real());
    }
    return s;
}

std::vector<double> symmetric_grid(double half_width, std::size_t points) {
    if (!(half_width > 0.0)) throw ValidationError("grid half-width must be positive");
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    return numerics::linspace(-half_width, half_width, points);
}

}  // namespace obist
