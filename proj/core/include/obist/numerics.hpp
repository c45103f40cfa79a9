// numerics.hpp: small dense kernels: linear solves, expm, RK4, quadrature, cubic roots
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace obist::numerics {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Eigen::Index kMaxDimension = 16;

struct Tolerances {
    double pivot_relative = 1e-14;        // pivot floor relative to ||A||_inf
    double residual_relative = 1e-10;     // linear-solve and Lyapunov residuals
    double eigvec_condition_max = 1e8;    // expm falls back to Pade above this
    double stability_margin = 1e-12;      // Re(lambda) < -margin counts as stable
    double pole_distance = 1e-9;          // resolvent refuses closer poles
    double imaginary_residue = 1e-12;     // relative size of discarded imaginary parts
};

const Tolerances& default_tolerances();

double norm_inf(const ComplexMatrix& a);
double norm_inf(const RealMatrix& a);

// Reciprocal condition estimate in the infinity norm from an LU factorization.
double condition_estimate(const ComplexMatrix& a);

// Partial-pivoted LU. Throws NumericalError on a small pivot or a failed residual check.
ComplexVector solve_complex_linear(const ComplexMatrix& a, const ComplexVector& b);
RealVector solve_real_linear(const RealMatrix& a, const RealVector& b);

ComplexVector eigenvalues(const RealMatrix& a);

// exp(A t) with one cached factorization of A. Uses the eigendecomposition when
// the eigenvector matrix is well conditioned, Pade scaling-and-squaring otherwise.
class MatrixExponential {
public:
    explicit MatrixExponential(ComplexMatrix a);

    ComplexMatrix operator()(double t) const;
    ComplexVector apply(double t, const ComplexVector& v) const;
    bool uses_eigendecomposition() const { return use_eig_; }
    const ComplexMatrix& generator() const { return a_; }

private:
    ComplexMatrix a_;
    bool use_eig_ = false;
    ComplexMatrix v_;
    ComplexMatrix v_inv_;
    ComplexVector lambda_;
};

ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t);

struct Trajectory {
    std::vector<double> t;
    std::vector<RealVector> x;
};

using OdeRhs = std::function<RealVector(double, const RealVector&)>;

// Fixed-step classical RK4. Every record_every-th step and the endpoint are kept.
// A non-finite state throws NumericalError carrying the step index.
Trajectory integrate_rk4(const OdeRhs& f, const RealVector& x0, double t_max, double dt,
                         std::size_t record_every = 1);
Trajectory integrate_linear_ode(const RealMatrix& a, const RealVector& x0, double t_max,
                                double dt, std::size_t record_every = 1);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // |full - every-other-point| / 3, or 0 on too coarse a grid
};

QuadratureResult trapezoid(std::span<const double> x, std::span<const double> f);

// Real roots of x^3 + b x^2 + c x + d, ascending, each polished by one guarded Newton step.
std::vector<double> real_cubic_roots(double b, double c, double d);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace obist::numerics
