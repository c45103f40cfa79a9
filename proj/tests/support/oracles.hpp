// Test-only reference computations, kept independent of the library kernels.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace oracle {

using cplx = std::complex<double>;

// Vectorized Lyapunov equation over all 25 entries, no symmetry assumed:
// (I (x) J + J (x) I) vec(C) = -vec(D).
inline Eigen::Matrix<double, 5, 5> kron_lyapunov(const Eigen::Matrix<double, 5, 5>& J,
                                                 const Eigen::Matrix<double, 5, 5>& D) {
    Eigen::Matrix<double, 25, 25> K = Eigen::Matrix<double, 25, 25>::Zero();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                // row (i,j) of J C: sum_k J(i,k) C(k,j); of C J^T: sum_k C(i,k) J(j,k)
                K(i + 5 * j, k + 5 * j) += J(i, k);
                K(i + 5 * j, i + 5 * k) += J(j, k);
            }
    Eigen::Matrix<double, 25, 1> rhs;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) rhs(i + 5 * j) = -D(i, j);
    Eigen::Matrix<double, 25, 1> v = K.fullPivLu().solve(rhs);
    Eigen::Matrix<double, 5, 5> C;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) C(i, j) = v(i + 5 * j);
    return C;
}

// Cramer's rule with explicit cofactors.
inline std::array<cplx, 3> adjugate_solve(const std::array<std::array<cplx, 3>, 3>& a,
                                          const std::array<cplx, 3>& b) {
    auto det3 = [](const std::array<std::array<cplx, 3>, 3>& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const cplx d = det3(a);
    std::array<cplx, 3> x{};
    for (int c = 0; c < 3; ++c) {
        auto m = a;
        for (int r = 0; r < 3; ++r) m[r][c] = b[r];
        x[c] = det3(m) / d;
    }
    return x;
}

inline std::array<cplx, 2> inverse_2x2_apply(cplx a, cplx b, cplx c, cplx d, cplx u, cplx v) {
    const cplx det = a * d - b * c;
    return {(d * u - b * v) / det, (-c * u + a * v) / det};
}

using Vec = Eigen::VectorXd;

// Plain RK4 on x' = A x, returning the endpoint.
inline Vec rk4_linear(const Eigen::MatrixXd& A, Vec x, double t_max, double dt) {
    const int steps = static_cast<int>(std::lround(t_max / dt));
    const double h = t_max / steps;
    for (int n = 0; n < steps; ++n) {
        const Vec k1 = A * x;
        const Vec k2 = A * (x + 0.5 * h * k1);
        const Vec k3 = A * (x + 0.5 * h * k2);
        const Vec k4 = A * (x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

// Laplace transform int_0^T e^{-s t} x(t) dt of x' = A x by composite Simpson on an RK4 trajectory.
inline Eigen::VectorXcd laplace_quadrature(const Eigen::MatrixXd& A, const Vec& x0, cplx s, double T,
                                           int intervals) {
    if (intervals % 2) ++intervals;
    const double h = T / intervals;
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(x0.size());
    Vec x = x0;
    for (int n = 0; n <= intervals; ++n) {
        const double w = (n == 0 || n == intervals) ? 1.0 : (n % 2 ? 4.0 : 2.0);
        acc += w * std::exp(-s * (n * h)) * x.cast<cplx>();
        if (n < intervals) x = rk4_linear(A, x, h, h / 4.0);
    }
    return acc * (h / 3.0);
}

struct ProcessResult {
    int exit_code = -1;
    std::string out;
};

// Runs a shell command, capturing stdout; stderr is discarded.
inline ProcessResult run(const std::string& cmd) {
    ProcessResult r;
    const std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace oracle
