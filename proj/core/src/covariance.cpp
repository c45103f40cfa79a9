#include "obist/covariance.hpp"

#include "obist/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace obist {

namespace {

constexpr int kDim = 5;
constexpr int kUnknowns = kDim * (kDim + 1) / 2;

std::array<std::array<int, kDim>, kDim> packed_index() {
    std::array<std::array<int, kDim>, kDim> idx{};
    int k = 0;
    for (int i = 0; i < kDim; ++i) {
        for (int j = i; j < kDim; ++j) {
            idx[i][j] = k;
            idx[j][i] = k;
            ++k;
        }
    }
    return idx;
}

}  // namespace

int anchor_index(AnchorRow row) { return row == AnchorRow::nu_star ? basis::nu_star : basis::z_star; }

double lyapunov_residual(const FluctuationMatrix& J, const FluctuationMatrix& C, const FluctuationMatrix& D) {
    const Matrix5 r = J.entries * C.entries + C.entries * J.entries.transpose() + D.entries;
    return r.cwiseAbs().rowwise().sum().maxCoeff();
}

FluctuationMatrix solve_lyapunov(const FluctuationMatrix& J, const FluctuationMatrix& D) {
    if (J.kind != MatrixKind::jacobian) throw ValidationError("solve_lyapunov expects a jacobian");
    if (D.kind != MatrixKind::diffusion) throw ValidationError("solve_lyapunov expects a diffusion matrix");
    if (!is_stable(J)) throw NumericalError("Lyapunov solve requires stable drift");

    const auto idx = packed_index();
    numerics::RealMatrix M = numerics::RealMatrix::Zero(kUnknowns, kUnknowns);
    numerics::RealVector rhs(kUnknowns);
    const Matrix5& a = J.entries;
    // Row (i,j): sum_k a_ik C_kj + C_ik a_jk = -D_ij
    for (int i = 0; i < kDim; ++i) {
        for (int j = i; j < kDim; ++j) {
            const int row = idx[i][j];
            rhs[row] = -D.entries(i, j);
            for (int k = 0; k < kDim; ++k) {
                M(row, idx[k][j]) += a(i, k);
                M(row, idx[i][k]) += a(j, k);
            }
        }
    }
    const numerics::RealVector x = numerics::solve_real_linear(M, rhs);

    FluctuationMatrix C;
    C.kind = MatrixKind::covariance;
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) C.entries(i, j) = x[idx[i][j]];
    }

    const double d_norm = D.entries.cwiseAbs().rowwise().sum().maxCoeff();
    const double residual = lyapunov_residual(J, C, D);
    const double limit = numerics::default_tolerances().residual_relative * std::max(1.0, d_norm);
    if (!(residual <= limit)) {
        std::ostringstream os;
        os << "Lyapunov residual " << residual << " exceeds " << limit;
        throw NumericalError(os.str());
    }
    return C;
}

CorrelationVector covariance_row(const FluctuationMatrix& C, AnchorRow row) {
    if (C.kind != MatrixKind::covariance) throw ValidationError("covariance_row expects a covariance");
    CorrelationVector v;
    v.row = row;
    v.entries = C.entries.row(anchor_index(row)).transpose().cast<std::complex<double>>();
    return v;
}

CorrelationVector weak_covariance_row(const SystemParams& p, double X) {
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    const double C = p.C;
    const double xi = p.xi;
    const double b = 1.0 + 2.0 * C;
    const double x1 = xi + 1.0;
    const double X2 = X * X;
    const double X4 = X2 * X2;

    CorrelationVector v;
    v.row = AnchorRow::nu_star;
    v.entries[basis::z] = X4 * 2.0 * xi * C * (2.0 + xi + 2.0 * C) / (b * b * x1 * x1);
    v.entries[basis::z_star] = -X2 * 2.0 * xi * C / (b * x1);
    v.entries[basis::nu] = X4 * weak_A(C, xi) / (b * b * x1 * x1);
    v.entries[basis::nu_star] = -X2 * (1.0 + xi + 2.0 * C) / (x1 * b);
    v.entries[basis::mu] = X2 * X * (2.0 * C + xi + 1.0) / (b * x1);
    return v;
}

StrongCovariance strong_covariance_closed(const SystemParams& p, double X) {
    if (!(X > 0.0)) throw ValidationError("X must be positive");
    const double C = p.C;
    const double f = p.xi / (p.xi + 1.0);
    const double K = saturation_factor(X, p.xi);

    StrongCovariance s;
    s.z_star_row.row = AnchorRow::z_star;
    s.z_star_row.entries << 4.0 * C * C * f * K, 4.0 * C * C * f * (K - 1.0), 2.0 * C * f * K,
        2.0 * C * f * (K - 1.0), 0.0;
    s.nu_star_row.row = AnchorRow::nu_star;
    s.nu_star_row.entries << 2.0 * C * f * K, 2.0 * C * f * (K - 1.0), 1.0, 0.0, 0.0;
    return s;
}

CorrelationVector evolve_correlation_vector(const FluctuationMatrix& J, const CorrelationVector& c0,
                                            double tau_bar) {
    return CorrelationPropagator(J, c0).at(tau_bar);
}

CorrelationPropagator::CorrelationPropagator(const FluctuationMatrix& J, const CorrelationVector& c0)
    : expm_(J.entries.cast<std::complex<double>>()), c0_(c0) {
    if (c0.domain != CorrelationDomain::time || c0.at != 0.0) {
        throw ValidationError("initial correlation vector must be taken at tau_bar = 0");
    }
}

CorrelationVector CorrelationPropagator::at(double tau_bar) const {
    if (!(tau_bar >= 0.0)) throw ValidationError("tau_bar must be nonnegative");
    CorrelationVector v = c0_;
    v.at = tau_bar;
    if (tau_bar == 0.0) return v;
    v.entries = expm_.apply(tau_bar, c0_.entries);
    return v;
}

CorrelationVector laplace_correlation_vector(const FluctuationMatrix& J, const CorrelationVector& c0,
                                             std::complex<double> s_bar) {
    const auto ev = jacobian_eigenvalues(J);
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (std::abs(s_bar - ev[k]) < numerics::default_tolerances().pole_distance) {
            std::ostringstream os;
            os << "s_bar " << s_bar << " is within 1e-9 of the eigenvalue " << ev[k];
            throw NumericalError(os.str());
        }
    }
    const numerics::ComplexMatrix A =
        s_bar * numerics::ComplexMatrix::Identity(5, 5) - J.entries.cast<std::complex<double>>();
    CorrelationVector out;
    out.row = c0.row;
    out.domain = CorrelationDomain::laplace;
    out.at = s_bar;
    out.entries = numerics::solve_complex_linear(A, c0.entries);
    return out;
}

Vector5d real_part_checked(const CorrelationVector& v) {
    const double scale = v.entries.cwiseAbs().maxCoeff();
    const double imag = v.entries.imag().cwiseAbs().maxCoeff();
    if (imag > numerics::default_tolerances().imaginary_residue * std::max(scale, 1e-300) && imag > 1e-300) {
        std::ostringstream os;
        os << "unexpected imaginary residue " << imag << " in a real correlator";
        throw NumericalError(os.str());
    }
    return v.entries.real();
}

}  // namespace obist
