// covariance.hpp: steady covariance and two-time correlation vectors
#pragma once

#include "obist/lindyn.hpp"
#include "obist/numerics.hpp"
#include "obist/params.hpp"

#include <Eigen/Dense>

#include <complex>

namespace obist {

using Vector5c = Eigen::Matrix<std::complex<double>, 5, 1>;
using Vector5d = Eigen::Matrix<double, 5, 1>;

enum class AnchorRow { nu_star, z_star };
enum class CorrelationDomain { time, laplace };

int anchor_index(AnchorRow row);

// One covariance row propagated to delay tau_bar (time) or transformed to s_bar (laplace).
struct CorrelationVector {
    AnchorRow row = AnchorRow::nu_star;
    Vector5c entries = Vector5c::Zero();
    CorrelationDomain domain = CorrelationDomain::time;
    std::complex<double> at = 0.0;

    std::complex<double> operator[](int k) const { return entries[k]; }
};

// Solves J C + C J^T = -D over the 15 independent entries of symmetric C.
// Throws NumericalError("Lyapunov solve requires stable drift") for unstable J.
FluctuationMatrix solve_lyapunov(const FluctuationMatrix& J, const FluctuationMatrix& D);
double lyapunov_residual(const FluctuationMatrix& J, const FluctuationMatrix& C, const FluctuationMatrix& D);

CorrelationVector covariance_row(const FluctuationMatrix& C, AnchorRow row);

// Closed-form nu* row at tau_bar = 0 for weak excitation.
CorrelationVector weak_covariance_row(const SystemParams& p, double X);

struct StrongCovariance {
    CorrelationVector z_star_row;
    CorrelationVector nu_star_row;
};

// Closed-form rows for strong excitation; C^{z* mu} ~ 1/X is set to 0.
StrongCovariance strong_covariance_closed(const SystemParams& p, double X);

CorrelationVector evolve_correlation_vector(const FluctuationMatrix& J, const CorrelationVector& c0,
                                            double tau_bar);

// Reuses one factorization of J across many delays.
class CorrelationPropagator {
public:
    CorrelationPropagator(const FluctuationMatrix& J, const CorrelationVector& c0);

    CorrelationVector at(double tau_bar) const;
    bool uses_eigendecomposition() const { return expm_.uses_eigendecomposition(); }

private:
    numerics::MatrixExponential expm_;
    CorrelationVector c0_;
};

// (s_bar I - J)^{-1} c0. Throws NumericalError when s_bar is within 1e-9 of an eigenvalue of J.
CorrelationVector laplace_correlation_vector(const FluctuationMatrix& J, const CorrelationVector& c0,
                                             std::complex<double> s_bar);

// Drops imaginary parts after asserting they are below 1e-12 of the largest entry.
Vector5d real_part_checked(const CorrelationVector& v);

}  // namespace obist
