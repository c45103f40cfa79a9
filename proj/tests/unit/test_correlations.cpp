#include <doctest.h>

#include <obist/correlations.hpp>
#include <obist/covariance.hpp>
#include <obist/errors.hpp>
#include <obist/lindyn.hpp>
#include <obist/params.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace obist;

namespace {
double at0(G2Variant v, const SystemParams& p, double X) {
    return g2_closed_form(v, p, X, {0.0}).values.front();
}
}  // namespace

TEST_SUITE("correlations") {
    TEST_CASE("variant names round trip") {
        for (auto v : {G2Variant::atomic_weak, G2Variant::atomic_weak_recast, G2Variant::forward_weak,
                       G2Variant::single_atom_pure_state, G2Variant::side_large_c, G2Variant::atomic_impedance,
                       G2Variant::forward_impedance, G2Variant::atomic_strong})
            CHECK(g2_variant_from_string(to_string(v)) == v);
        CHECK(!g2_variant_from_string("bunched").has_value());
    }

    TEST_CASE("zero-delay values") {
        const double C = 40.0, xi = 0.176;
        const std::int64_t N = 310;
        const auto p = make_params(C, xi, N);
        const double expect = -2.0 * (1.0 + xi + 2.0 * C) / (N * (xi + 1.0) * (1.0 + 2.0 * C));
        CHECK(at0(G2Variant::atomic_weak, p, 0.01) - 1.0 == doctest::Approx(expect).epsilon(1e-12));
        CHECK(at0(G2Variant::atomic_weak, p, 0.01) - 1.0 == doctest::Approx(-5.50e-3).epsilon(1e-2));
        CHECK(at0(G2Variant::forward_weak, p, 0.01) == doctest::Approx(0.9237).epsilon(1e-4));
        CHECK(at0(G2Variant::side_large_c, p, 0.2) == doctest::Approx(1.04));
        CHECK(at0(G2Variant::atomic_strong, make_params(5, 1, 310), 5.0) ==
              doctest::Approx(1.0 + 2.0 * 310 * 25.0 / std::pow(335.0, 2)));
        CHECK(at0(G2Variant::atomic_strong, make_params(5, 1, 310), 5.0) == doctest::Approx(1.1381).epsilon(1e-4));
    }

    TEST_CASE("good-cavity antibunching tends to -2/N") {
        for (double C : {1.0, 10.0, 100.0}) {
            const auto p = make_params(C, 1e-3, 500);
            CHECK(at0(G2Variant::atomic_weak, p, 0.001) - 1.0 == doctest::Approx(-2.0 / 500).epsilon(1e-2));
        }
    }

    TEST_CASE("single atom in a pure state never gives two photons at once") {
        const auto p = from_raw_rates(1.0, 2.0, 3.0, 1);
        CHECK(at0(G2Variant::single_atom_pure_state, p, 0.001) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK_THROWS(g2_closed_form(G2Variant::single_atom_pure_state, make_params(1, 1, 1), 0.001, {0.0}));
    }

    TEST_CASE("recast form agrees with the scaled form") {
        const auto p = from_raw_rates(1.06, 0.88, 10.0, 310, RateUnit::mhz_cycles);
        const auto grid = numerics::linspace(0.0, 6.0, 61);
        const auto a = g2_closed_form(G2Variant::atomic_weak, p, 0.01, grid);
        const auto b = g2_closed_form(G2Variant::atomic_weak_recast, p, 0.01, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) CHECK(b.values[i] == doctest::Approx(a.values[i]).epsilon(1e-9));
    }

    TEST_CASE("impedance matched forms") {
        const auto p = make_params(7.0, 1.0, 50);
        const auto grid = numerics::linspace(0.0, 8.0, 81);
        const auto a = g2_closed_form(G2Variant::atomic_weak, p, 0.01, grid);
        const auto ai = g2_closed_form(G2Variant::atomic_impedance, p, 0.01, grid);
        const auto f = g2_closed_form(G2Variant::forward_weak, p, 0.01, grid);
        const auto fi = g2_closed_form(G2Variant::forward_impedance, p, 0.01, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(a.values[i] - ai.values[i]) <= 1e-12);
            CHECK(std::abs(f.values[i] - fi.values[i]) <= 1e-12);
        }
        CHECK_THROWS_AS(g2_closed_form(G2Variant::atomic_impedance, make_params(7, 2, 50), 0.01, grid), RegimeError);
    }

    TEST_CASE("long-delay limit") {
        const auto p = make_params(40.0, 0.176, 310);
        const std::vector<double> far{60.0};
        for (auto v : {G2Variant::atomic_weak, G2Variant::forward_weak})
            CHECK(g2_closed_form(v, p, 0.01, far).values[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(g2_numeric(p, 0.01, far).values[0] - 1.0) < 1e-6);
    }

    TEST_CASE("numeric g2 against the weak closed form") {
        const auto p = make_params(40.0, 0.176, 310);
        const auto grid = numerics::linspace(0.0, 10.0, 201);
        const auto num = g2_numeric(p, 0.01, grid);
        const auto cf = g2_closed_form(G2Variant::atomic_weak, p, 0.01, grid);
        double mag = 0.0, dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            mag = std::max(mag, std::abs(cf.values[i] - 1.0));
            dev = std::max(dev, std::abs(num.values[i] - cf.values[i]));
        }
        CHECK(dev <= 0.05 * mag);
        CHECK(num.diagnostics.count("normal_term_share") == 1);
    }

    TEST_CASE("numeric g2 against the strong closed form") {
        const auto p = make_params(5.0, 1.0, 1000000);
        const auto grid = numerics::linspace(0.0, 6.0, 121);
        const auto num = g2_numeric(p, 100.0, grid);
        const auto cf = g2_closed_form(G2Variant::atomic_strong, p, 100.0, grid);
        double mag = 0.0, dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            mag = std::max(mag, std::abs(cf.values[i] - 1.0));
            dev = std::max(dev, std::abs(num.values[i] - cf.values[i]));
        }
        CHECK(dev <= 0.05 * mag);
    }

    TEST_CASE("numeric g2 errors") {
        const auto p = make_params(5.0, 1.0, 10);
        CHECK_THROWS_WITH_AS(g2_numeric(p, 0.0, {0.0}), "coherent amplitude vanishes", NumericalError);
        CHECK_THROWS_AS(g2_numeric(p, 2.0, {0.0}), RegimeError);
    }

    TEST_CASE("anomalous correlator") {
        const auto p = make_params(5.0, 1.0, 1);
        const double X = 0.05;
        const auto c0 = weak_covariance_row(p, X);
        CHECK(anomalous_correlator_time(p, X, 0.0) == doctest::Approx(c0[basis::nu_star].real()).epsilon(1e-13));
        CHECK(std::abs(anomalous_correlator_time(p, X, 80.0)) < 1e-18);
        const auto Jw = build_jacobian(p, X, Regime::weak);
        for (double t : {0.4, 1.5, 5.0}) {
            const auto ref = oracle::rk4_linear(Jw.entries, real_part_checked(c0), t, 1e-3);
            CHECK(std::abs(anomalous_correlator_time(p, X, t) - ref(basis::nu_star)) < 1e-6);
        }
        // overdamped continuation; the closed form is lowest order in X
        const auto od = make_params(0.01, 5.0, 1);
        const auto c0od = weak_covariance_row(od, X);
        const auto ref = oracle::rk4_linear(build_jacobian(od, X, Regime::weak).entries, real_part_checked(c0od), 1.0, 1e-3);
        CHECK(anomalous_correlator_time(od, X, 1.0) == doctest::Approx(ref(basis::nu_star)).epsilon(2 * X * X));
    }

    TEST_CASE("quadrature variances") {
        const auto p = make_params(5.0, 1.0, 1);
        const auto vac = quadrature_variances(p, 0.0);
        CHECK(vac.var_J0 == doctest::Approx(0.25));
        CHECK(vac.var_Jpi2 == doctest::Approx(0.25));
        CHECK(!vac.squeezed);

        const auto q = quadrature_variances(p, 0.05);
        CHECK(q.squeezed);
        CHECK(q.c_normal + q.c_anomalous < 0.0);
        REQUIRE(q.ratio.has_value());
        CHECK(*q.ratio > 1.0);
        CHECK(q.method == VarianceMethod::closed_form);

        const auto small = quadrature_variances(p, 1e-4);
        CHECK(std::abs(small.var_J0 - 0.25) < 1e-6);
        CHECK(std::abs(small.var_Jpi2 - 0.25) < 1e-6);

        const auto strong = quadrature_variances(p, 1000.0);
        CHECK(strong.method == VarianceMethod::lyapunov);
        REQUIRE(strong.field_ratio.has_value());
        CHECK(std::abs(*strong.field_ratio - 1.0) <= 1e-3);
    }
}
