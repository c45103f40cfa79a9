#include <doctest.h>

#include <obist/errors.hpp>
#include <obist/params.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace obist;

namespace {
bool has_violation(const ValidationReport& r, const std::string& s) {
    return std::find(r.violations.begin(), r.violations.end(), s) != r.violations.end();
}
}  // namespace

TEST_SUITE("params") {
    TEST_CASE("raw rates in MHz reproduce the many-atom cooperativities") {
        const auto a = from_raw_rates(1.06, 0.88, 10.0, 310, RateUnit::mhz_cycles);
        CHECK(a.C == doctest::Approx(310.0 * 1.06 * 1.06 / (0.88 * 10.0)).epsilon(1e-12));
        CHECK(a.C == doctest::Approx(39.58).epsilon(1e-3));
        CHECK(a.xi == doctest::Approx(0.176).epsilon(1e-12));
        REQUIRE(a.raw.has_value());
        CHECK(a.raw->g == doctest::Approx(2.0 * M_PI * 1.06e6));

        const auto b = from_raw_rates(0.53, 0.88, 10.0, 310, RateUnit::mhz_cycles);
        CHECK(b.C == doctest::Approx(9.89).epsilon(1e-3));
    }

    TEST_CASE("unit rates") {
        const auto p = from_raw_rates(1.0, 1.0, 1.0, 1);
        CHECK(p.C == doctest::Approx(1.0));
        CHECK(p.xi == doctest::Approx(2.0));
        REQUIRE(p.n_sc.has_value());
        CHECK(*p.n_sc == doctest::Approx(0.125));
    }

    TEST_CASE("invalid raw rates name the field") {
        try {
            from_raw_rates(1.0, -1.0, 1.0, 1);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("kappa") != std::string::npos);
        }
        CHECK_THROWS_AS(from_raw_rates(1.0, 1.0, 1.0, 0), ValidationError);
        CHECK_THROWS_AS(from_raw_rates(0.0, 1.0, 1.0, 1), ValidationError);
    }

    TEST_CASE("validate") {
        CHECK(validate(make_params(5.0, 1.0, 100)).ok());

        SystemParams p;
        p.C = -1.0;
        p.xi = 1.0;
        CHECK(has_violation(validate(p), "C must be positive"));

        auto q = from_raw_rates(1.0, 1.0, 1.0, 4);
        q.C *= 1.1;
        CHECK(has_violation(validate(q), "derived C mismatch"));

        auto r = from_raw_rates(1.0, 1.0, 1.0, 4);
        r.xi *= 1.1;
        CHECK(has_violation(validate(r), "derived xi mismatch"));

        SystemParams s = make_params(5.0, 1.0, 1);
        s.phi0 = 0.3;
        CHECK(has_violation(validate(s), "phi0 must be 0"));

        SystemParams t = make_params(5.0, 1.0, 1);
        t.n_sc = 1.0;
        CHECK(has_violation(validate(t), "n_sc set without raw rates"));

        CHECK_THROWS_AS(make_params(0.0, 1.0, 1), ValidationError);
        CHECK_THROWS_AS(make_params(1.0, 1.0, 0), ValidationError);
    }

    TEST_CASE("every violation is reported together") {
        SystemParams p;
        p.C = -1.0;
        p.xi = 0.0;
        p.N = 0;
        const auto r = validate(p);
        CHECK(r.violations.size() == 3);
        CHECK(!r.summary().empty());
    }

    TEST_CASE("json round trip") {
        const auto p = params_from_json(R"({"C": 5, "xi": 1, "N": 100})");
        CHECK(p.C == 5.0);
        CHECK(p.xi == 1.0);
        CHECK(p.N == 100);
        const auto q = params_from_json(to_json(p));
        CHECK(q.C == p.C);
        CHECK(q.xi == p.xi);
        CHECK(q.N == p.N);

        const auto raw = params_from_json(R"({"g_MHz": 1.06, "kappa_MHz": 0.88, "gamma_MHz": 10, "N": 310})");
        CHECK(raw.xi == doctest::Approx(0.176));

        CHECK_THROWS_AS(params_from_json(R"({"C": 5, "xi": 1})"), ValidationError);
        CHECK_THROWS_AS(params_from_json(R"({"C": 5, "xi": 1, "N": 1, "bogus": 2})"), ValidationError);
        CHECK_THROWS_AS(params_from_json(R"({"C": 5, "xi": 1, "N": 1.5})"), ValidationError);
        CHECK_THROWS_AS(params_from_json(R"({"C": 5, "xi": 1, "N": 1, "g_MHz": 1})"), ValidationError);
        CHECK_THROWS(params_from_json("not json"));
    }

    TEST_CASE("params file") {
        const auto path = std::filesystem::temp_directory_path() / "obist_params_test.json";
        {
            std::ofstream f(path);
            f << R"({"C": 40, "xi": 0.176, "N": 310})";
        }
        const auto p = load_params_file(path.string());
        CHECK(p.N == 310);
        std::filesystem::remove(path);
        CHECK_THROWS(load_params_file("/nonexistent/params.json"));
    }

    TEST_CASE("scaled time and frequency") {
        const double gamma = 4.0;
        CHECK(TimeFrequencyScales::tau_bar(3.0, gamma) == doctest::Approx(6.0));
        CHECK(TimeFrequencyScales::tau(TimeFrequencyScales::tau_bar(0.7, gamma), gamma) == doctest::Approx(0.7));
        CHECK(TimeFrequencyScales::y(2.0, gamma) == doctest::Approx(1.0));
        CHECK(TimeFrequencyScales::spectral_s_bar(2.5) == std::complex<double>(0.0, -2.5));
    }
}
