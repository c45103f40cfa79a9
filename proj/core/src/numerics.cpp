#include "obist/numerics.hpp"

#include "obist/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace obist::numerics {

namespace {

template <typename M>
void require_finite_square(const M& a, const char* what) {
    if (a.rows() != a.cols()) throw ValidationError(std::string(what) + ": matrix must be square");
    if (a.rows() == 0) throw ValidationError(std::string(what) + ": empty matrix");
    if (a.rows() > kMaxDimension) throw ValidationError(std::string(what) + ": dimension exceeds 16");
    if (!a.allFinite()) throw ValidationError(std::string(what) + ": non-finite matrix entry");
}

std::string format_condition(double cond) {
    std::ostringstream os;
    os.precision(3);
    os << cond;
    return os.str();
}

double cubic_value(double b, double c, double d, double x) { return ((x + b) * x + c) * x + d; }
double cubic_slope(double b, double c, double x) { return (3.0 * x + 2.0 * b) * x + c; }

double newton_polish(double b, double c, double d, double x) {
    const double fx = cubic_value(b, c, d, x);
    const double dfx = cubic_slope(b, c, x);
    if (dfx == 0.0 || !std::isfinite(fx)) return x;
    const double candidate = x - fx / dfx;
    if (std::isfinite(candidate) && std::abs(cubic_value(b, c, d, candidate)) <= std::abs(fx)) {
        return candidate;
    }
    return x;
}

}  // namespace

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

double norm_inf(const ComplexMatrix& a) {
    return a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

double norm_inf(const RealMatrix& a) {
    return a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

double condition_estimate(const ComplexMatrix& a) {
    require_finite_square(a, "condition_estimate");
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const double rc = lu.rcond();
    return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

ComplexVector solve_complex_linear(const ComplexMatrix& a, const ComplexVector& b) {
    require_finite_square(a, "solve_complex_linear");
    if (b.size() != a.rows()) throw ValidationError("solve_complex_linear: right-hand side size mismatch");
    if (!b.allFinite()) throw ValidationError("solve_complex_linear: non-finite right-hand side");

    const auto& tol = default_tolerances();
    const double a_norm = norm_inf(a);
    if (a_norm == 0.0) throw NumericalError("singular matrix (zero matrix)");

    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < tol.pivot_relative * a_norm) {
        const double rc = lu.rcond();
        throw NumericalError("singular matrix (condition estimate " +
                             format_condition(rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity()) + ")");
    }
    ComplexVector x = lu.solve(b);
    const double residual = (a * x - b).cwiseAbs().maxCoeff();
    const double scale = a_norm * x.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff();
    if (!x.allFinite() || residual > tol.residual_relative * scale) {
        throw NumericalError("linear solve residual check failed (condition estimate " +
                             format_condition(1.0 / lu.rcond()) + ")");
    }
    return x;
}

RealVector solve_real_linear(const RealMatrix& a, const RealVector& b) {
    const ComplexVector x = solve_complex_linear(a.cast<cplx>(), b.cast<cplx>());
    return x.real();
}

ComplexVector eigenvalues(const RealMatrix& a) {
    require_finite_square(a, "eigenvalues");
    Eigen::EigenSolver<RealMatrix> es(a, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
    return es.eigenvalues();
}

MatrixExponential::MatrixExponential(ComplexMatrix a) : a_(std::move(a)) {
    require_finite_square(a_, "matrix_exponential");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a_, true);
    if (es.info() != Eigen::Success) return;
    const ComplexMatrix& v = es.eigenvectors();
    Eigen::PartialPivLU<ComplexMatrix> lu(v);
    const double rc = lu.rcond();
    if (!(rc > 0.0) || 1.0 / rc > default_tolerances().eigvec_condition_max) return;
    v_ = v;
    v_inv_ = lu.inverse();
    lambda_ = es.eigenvalues();
    use_eig_ = v_inv_.allFinite();
}

ComplexMatrix MatrixExponential::operator()(double t) const {
    const auto n = a_.rows();
    if (t == 0.0) return ComplexMatrix::Identity(n, n);
    if (use_eig_) {
        const ComplexVector e = (lambda_ * t).array().exp().matrix();
        return v_ * e.asDiagonal() * v_inv_;
    }
    const ComplexMatrix scaled = a_ * t;
    return scaled.exp();
}

ComplexVector MatrixExponential::apply(double t, const ComplexVector& v) const {
    if (t == 0.0) return v;
    if (use_eig_) {
        const ComplexVector coeff = v_inv_ * v;
        const ComplexVector e = (lambda_ * t).array().exp().matrix();
        return v_ * e.cwiseProduct(coeff);
    }
    return (*this)(t) * v;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t) {
    return MatrixExponential(a)(t);
}

Trajectory integrate_rk4(const OdeRhs& f, const RealVector& x0, double t_max, double dt,
                         std::size_t record_every) {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(t_max >= 0.0)) throw ValidationError("t_max must be nonnegative");
    if (record_every == 0) record_every = 1;

    const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
    Trajectory out;
    out.t.push_back(0.0);
    out.x.push_back(x0);

    RealVector x = x0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double h = std::min(dt, t_max - t);
        const RealVector k1 = f(t, x);
        const RealVector k2 = f(t + 0.5 * h, x + 0.5 * h * k1);
        const RealVector k3 = f(t + 0.5 * h, x + 0.5 * h * k2);
        const RealVector k4 = f(t + h, x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite()) {
            throw NumericalError("integration diverged at step " + std::to_string(i + 1));
        }
        if ((i + 1) % record_every == 0 || i + 1 == steps) {
            out.t.push_back(i + 1 == steps ? t_max : t + h);
            out.x.push_back(x);
        }
    }
    return out;
}

Trajectory integrate_linear_ode(const RealMatrix& a, const RealVector& x0, double t_max, double dt,
                                std::size_t record_every) {
    if (a.rows() != a.cols() || a.cols() != x0.size()) {
        throw ValidationError("integrate_linear_ode: dimension mismatch");
    }
    return integrate_rk4([&a](double, const RealVector& x) { return RealVector(a * x); }, x0, t_max, dt,
                         record_every);
}

QuadratureResult trapezoid(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size()) throw ValidationError("trapezoid: grid and values differ in length");
    if (x.size() < 2) throw ValidationError("trapezoid: need at least 2 points");
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) throw ValidationError("trapezoid: grid must be strictly ascending");
    }

    auto rule = [&](std::size_t stride) {
        double s = 0.0;
        std::size_t i = 0;
        while (i + stride < x.size()) {
            s += 0.5 * (x[i + stride] - x[i]) * (f[i] + f[i + stride]);
            i += stride;
        }
        if (i + 1 < x.size()) {
            const std::size_t last = x.size() - 1;
            s += 0.5 * (x[last] - x[i]) * (f[i] + f[last]);
        }
        return s;
    };

    QuadratureResult out;
    out.value = rule(1);
    if (x.size() >= 3) out.error_estimate = std::abs(out.value - rule(2)) / 3.0;
    return out;
}

std::vector<double> real_cubic_roots(double b, double c, double d) {
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    const double shift = -b / 3.0;

    std::vector<double> roots;
    if (disc < 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
        }
    } else {
        const double s = std::sqrt(disc);
        const double r = std::cbrt(-0.5 * q + s) + std::cbrt(-0.5 * q - s) + shift;
        const double r0 = newton_polish(b, c, d, r);
        roots.push_back(r0);
        // Deflate; a slightly negative discriminant here is a rounded double root.
        const double qb = b + r0;
        const double qc = c + qb * r0;
        double qdisc = qb * qb - 4.0 * qc;
        const double scale = std::max({1.0, qb * qb, std::abs(qc)});
        if (qdisc < 0.0 && qdisc > -1e-12 * scale) qdisc = 0.0;
        if (qdisc >= 0.0) {
            const double sq = std::sqrt(qdisc);
            roots.push_back(0.5 * (-qb - sq));
            roots.push_back(0.5 * (-qb + sq));
        }
    }
    for (double& r : roots) r = newton_polish(b, c, d, r);
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + h * static_cast<double>(i);
    out.back() = hi;
    return out;
}

}  // namespace obist::numerics
