#include <doctest.h>

#include <obist/covariance.hpp>
#include <obist/errors.hpp>
#include <obist/lindyn.hpp>
#include <obist/params.hpp>
#include <obist/spectra.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace obist;
using cplx = std::complex<double>;

TEST_SUITE("covariance") {
    TEST_CASE("Lyapunov solve against the vectorized oracle") {
        for (auto [C, xi, X] : {std::tuple{5.0, 1.0, 0.05}, {5.0, 1.0, 1.0}, {5.0, 1.0, 3.0}, {40.0, 0.176, 0.3},
                                {200.0, 1.0, 0.01}, {5.0, 500.0, 0.01}, {2.0, 0.01, 5.0}}) {
            CAPTURE(C);
            CAPTURE(X);
            const auto p = make_params(C, xi, 1);
            const auto J = build_jacobian(p, X);
            const auto D = build_diffusion(X);
            const auto Cm = solve_lyapunov(J, D);
            const auto ref = oracle::kron_lyapunov(J.entries, D.entries);
            const double scale = std::max(1e-300, ref.cwiseAbs().maxCoeff());
            CHECK((Cm.entries - ref).cwiseAbs().maxCoeff() / scale < 1e-10);
            CHECK((Cm.entries - Cm.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
            CHECK(lyapunov_residual(J, Cm, D) <= 1e-10 * std::max(1.0, D.entries.norm()));
            CHECK(Cm.kind == MatrixKind::covariance);
        }
    }

    TEST_CASE("no noise, no fluctuations") {
        const auto p = make_params(5.0, 1.0, 1);
        CHECK(solve_lyapunov(build_jacobian(p, 0.0), build_diffusion(0.0)).entries.isZero());
    }

    TEST_CASE("unstable drift is refused") {
        const auto p = make_params(5.0, 1.0, 1);
        CHECK_THROWS_WITH_AS(solve_lyapunov(build_jacobian(p, 2.0), build_diffusion(2.0)),
                             "Lyapunov solve requires stable drift", NumericalError);
    }

    TEST_CASE("weak closed-form row") {
        const auto p = make_params(5.0, 1.0, 1);
        const double X = 0.05;
        const auto row = weak_covariance_row(p, X);
        CHECK(row.row == AnchorRow::nu_star);
        CHECK(row[basis::nu].real() == doctest::Approx(6.25e-6 * 134.0 / 484.0).epsilon(1e-9));
        CHECK(row[basis::nu].real() == doctest::Approx(1.730e-6).epsilon(1e-3));
        CHECK(row[basis::nu_star].real() == doctest::Approx(-X * X * 12.0 / 22.0).epsilon(1e-12));
        for (int k = 0; k < 5; ++k) CHECK(std::abs(weak_covariance_row(p, 0.0)[k]) == 0.0);
    }

    TEST_CASE("weak closed-form row scales as documented") {
        const auto p = make_params(5.0, 1.0, 1);
        const auto a = weak_covariance_row(p, 1e-3);
        const auto b = weak_covariance_row(p, 2e-3);
        CHECK(std::abs(b[basis::z] / a[basis::z]) == doctest::Approx(16.0));
        CHECK(std::abs(b[basis::z_star] / a[basis::z_star]) == doctest::Approx(4.0));
        CHECK(std::abs(b[basis::nu] / a[basis::nu]) == doctest::Approx(16.0));
        CHECK(std::abs(b[basis::nu_star] / a[basis::nu_star]) == doctest::Approx(4.0));
        CHECK(std::abs(b[basis::mu] / a[basis::mu]) == doctest::Approx(8.0));
    }

    TEST_CASE("weak closed form matches the full Lyapunov row at order X^2") {
        for (auto [C, xi] : {std::pair{5.0, 1.0}, {40.0, 0.176}, {2.0, 3.0}}) {
            const auto p = make_params(C, xi, 1);
            const double X = 1e-2;
            const auto lyap = covariance_row(solve_lyapunov(build_jacobian(p, X), build_diffusion(X)), AnchorRow::nu_star);
            const auto closed = weak_covariance_row(p, X);
            for (int k = 0; k < 5; ++k) {
                CAPTURE(k);
                CHECK(std::abs(lyap[k] - closed[k]) / std::abs(closed[k]) < 1e-2);
            }
        }
    }

    TEST_CASE("strong closed form") {
        const auto p = make_params(5.0, 1.0, 1);
        const auto s = strong_covariance_closed(p, 1e6);
        CHECK(s.nu_star_row[basis::nu].real() == 1.0);
        CHECK(s.nu_star_row[basis::nu_star].real() == 0.0);
        CHECK(s.nu_star_row[basis::mu].real() == 0.0);
        CHECK(s.z_star_row[basis::z].real() == doctest::Approx(25.0).epsilon(1e-5));
        CHECK(s.z_star_row[basis::mu].real() == 0.0);

        const double X = 100.0;
        const auto lyap = solve_lyapunov(build_jacobian(p, X), build_diffusion(X));
        const auto closed = strong_covariance_closed(p, X);
        const double K = saturation_factor(X, 1.0);
        CHECK(lyap(basis::z_star, basis::z) == doctest::Approx(4.0 * 25.0 * 0.5 * K).epsilon(0.05));
        CHECK(lyap(basis::nu_star, basis::nu) == doctest::Approx(1.0).epsilon(0.01));
        CHECK(std::abs(lyap(basis::nu_star, basis::nu_star)) < 0.01);
        CHECK(closed.z_star_row[basis::z].real() == doctest::Approx(lyap(basis::z_star, basis::z)).epsilon(0.05));
    }

    TEST_CASE("propagation") {
        const auto p = make_params(5.0, 1.0, 1);
        const double X = 0.05;
        const auto J = build_jacobian(p, X);
        const auto c0 = covariance_row(solve_lyapunov(J, build_diffusion(X)), AnchorRow::nu_star);
        const auto same = evolve_correlation_vector(J, c0, 0.0);
        for (int k = 0; k < 5; ++k) CHECK(same[k] == c0[k]);

        FluctuationMatrix decay;
        decay.entries = -Matrix5::Identity();
        const auto d = evolve_correlation_vector(decay, c0, 1.7);
        for (int k = 0; k < 5; ++k) CHECK(std::abs(d[k] - c0[k] * std::exp(-1.7)) < 1e-15);

        const CorrelationPropagator prop(J, c0);
        for (double t : {0.3, 2.0, 7.5}) {
            const auto ref = oracle::rk4_linear(J.entries, real_part_checked(c0), t, 1e-3);
            const auto v = real_part_checked(prop.at(t));
            CHECK((v - ref).cwiseAbs().maxCoeff() < 1e-10 * std::max(1e-12, ref.cwiseAbs().maxCoeff()) + 1e-18);
        }
    }

    TEST_CASE("weak-J propagation matches an independent integration") {
        const auto p = make_params(5.0, 1.0, 1);
        const double X = 0.05;
        const auto Jw = build_jacobian(p, X, Regime::weak);
        const auto c0 = weak_covariance_row(p, X);
        const CorrelationPropagator prop(Jw, c0);
        for (double t : {0.5, 1.0, 4.0}) {
            const auto ref = oracle::rk4_linear(Jw.entries, real_part_checked(c0), t, 1e-3);
            CHECK(std::abs(prop.at(t)[basis::nu_star].real() - ref(basis::nu_star)) < 1e-6);
        }
    }

    TEST_CASE("zero initial slope of the normal correlator") {
        const auto p = make_params(5.0, 1.0, 1);
        const double X = 0.05;
        const auto Jw = build_jacobian(p, X, Regime::weak);
        const auto c0 = weak_covariance_row(p, X);
        const auto slope = (Jw.entries.cast<cplx>() * c0.entries)(basis::nu);
        CHECK(std::abs(slope) <= 1e-10 * std::abs(c0[basis::nu]));
    }

    TEST_CASE("resolvent") {
        const auto p = make_params(5.0, 1.0, 1);
        const double X = 0.05;
        const auto J = build_jacobian(p, X);
        const auto c0 = covariance_row(solve_lyapunov(J, build_diffusion(X)), AnchorRow::nu_star);

        const cplx big(1e6, 0.0);
        const auto far = laplace_correlation_vector(J, c0, big);
        CHECK(far.domain == CorrelationDomain::laplace);
        CHECK((far.entries * big - c0.entries).norm() / c0.entries.norm() <= 1e-5);

        for (cplx s : {cplx(0.0, 0.0), cplx(0.0, -1.5), cplx(0.3, 4.0)}) {
            const auto v = laplace_correlation_vector(J, c0, s);
            const auto ref = oracle::laplace_quadrature(J.entries, real_part_checked(c0), s, 60.0, 12000);
            for (int k = 0; k < 5; ++k) CHECK(std::abs(v[k] - ref(k)) <= 1e-7 * ref.cwiseAbs().maxCoeff());
        }

        const auto pole = jacobian_eigenvalues(J)[0];
        CHECK_THROWS_AS(laplace_correlation_vector(J, c0, pole), NumericalError);
    }

    // The closed transforms are lowest order in X; the weak-J resolvent differs at O(X^2).
    TEST_CASE("weak resolvent at the origin") {
        const auto p = make_params(5.0, 1.0, 1);
        const double X = 0.05;
        const auto v = laplace_correlation_vector(build_jacobian(p, X, Regime::weak), weak_covariance_row(p, X), 0.0);
        CHECK(v[basis::z_star].real() == doctest::Approx(-1.343e-3).epsilon(2e-3));
        CHECK(v[basis::z_star].real() ==
              doctest::Approx(anomalous_laplace(AnomalousTransform::nu_star_z_star, p, X, 0.0).real()).epsilon(X * X));
    }

    TEST_CASE("anchor rows") {
        CHECK(anchor_index(AnchorRow::nu_star) == basis::nu_star);
        CHECK(anchor_index(AnchorRow::z_star) == basis::z_star);
    }

    TEST_CASE("imaginary residue check") {
        CorrelationVector v;
        v.entries << 1.0, cplx(2.0, 1e-14), 0.0, 0.0, 0.0;
        CHECK(real_part_checked(v)(1) == 2.0);
        v.entries(1) = cplx(2.0, 1e-3);
        CHECK_THROWS_AS(real_part_checked(v), NumericalError);
    }
}
