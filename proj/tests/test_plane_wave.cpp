#include <doctest.h>

#include "hybridlie/plane_wave.hpp"
#include "test_helpers.hpp"

using namespace hybridlie;
using namespace hybridlie::testing;

TEST_CASE("pairing basics") {
    PlaneWave r({1, 0, 0}, {0, 0, 0});
    PlaneWave s({0, 0, 0}, {1, 0, 0});
    CHECK(planewave_pairing(r, s) == doctest::Approx(-1.0));
    CHECK(planewave_pairing(r, r) == doctest::Approx(0.0));

    PlaneWave r2({1, 2, 0}, {0, 0, 3});
    PlaneWave s2({0, 1, 1}, {2, 0, 0});
    CHECK(planewave_pairing(r2, s2) == doctest::Approx(1.0));
    CHECK(planewave_pairing(s2, r2) == doctest::Approx(-1.0));
}

TEST_CASE("product adds parameters and multiplies amplitudes") {
    PlaneWave r({1, 0}, {0, 2}, {2.0, 0.0});
    PlaneWave s({0, 1}, {3, 0}, {0.0, 1.0});
    PlaneWave p = r * s;
    CHECK(p.xr[0] == doctest::Approx(1.0));
    CHECK(p.xr[1] == doctest::Approx(1.0));
    CHECK(p.kr[0] == doctest::Approx(3.0));
    CHECK(p.kr[1] == doctest::Approx(2.0));
    CHECK(p.amplitude == std::complex<double>(0.0, 2.0));

    // Pointwise consistency.
    auto rng = seeded_rng(3);
    PhasePoint q = random_point(rng, 2);
    CHECK(std::abs(p.evaluate(q) - r.evaluate(q) * s.evaluate(q)) <= 1e-12);
}

TEST_CASE("bracket law {e_r, e_s} = v_rs e_{r+s} for random parameters") {
    auto rng = seeded_rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        int d = 1 + static_cast<int>(rng() % 3);
        std::vector<double> xr(d), kr(d), xs(d), ks(d);
        for (int i = 0; i < d; ++i) {
            xr[i] = u(rng);
            kr[i] = u(rng);
            xs[i] = u(rng);
            ks[i] = u(rng);
        }
        PlaneWave r(xr, kr), s(xs, ks);
        PlaneWaveSum lhs = collect(poisson_bracket(r, s));
        PlaneWave expected = r * s;
        expected.amplitude *= planewave_pairing(r, s);

        if (std::abs(expected.amplitude) < 1e-13) {
            CHECK(lhs.empty());
        } else {
            REQUIRE(lhs.size() == 1);
            CHECK(lhs[0].same_parameters(expected));
            CHECK(std::abs(lhs[0].amplitude - expected.amplitude) <= 1e-12);
        }
    }
}

TEST_CASE("F extraction: Poisson bracket gives F_rs = v_rs") {
    PlaneWave r({0.4, -1.0, 0.2}, {1.0, 0.3, 0.0});
    PlaneWave s({-0.3, 0.8, 1.1}, {0.2, -0.5, 0.9});
    auto F = planewave_F_extraction(
        [](const PlaneWave& a, const PlaneWave& b) { return poisson_bracket(a, b); }, r, s);
    REQUIRE(F.has_value());
    CHECK(F->real() == doctest::Approx(planewave_pairing(r, s)));
    CHECK(F->imag() == doctest::Approx(0.0));
}

TEST_CASE("F extraction: pointwise product gives F_rs = 1") {
    PlaneWave r({0.4, -1.0}, {1.0, 0.3});
    PlaneWave s({-0.3, 0.8}, {0.2, -0.5});
    auto F = planewave_F_extraction(
        [](const PlaneWave& a, const PlaneWave& b) { return PlaneWaveSum{a * b}; }, r, s);
    REQUIRE(F.has_value());
    CHECK(std::abs(*F - std::complex<double>(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("F extraction: bracket plus product gives v_rs + 1 (linearity)") {
    PlaneWave r({0.7, 0.1}, {0.9, -0.4});
    PlaneWave s({-0.2, 1.3}, {0.5, 0.6});
    auto F = planewave_F_extraction(
        [](const PlaneWave& a, const PlaneWave& b) {
            PlaneWaveSum sum = poisson_bracket(a, b);
            sum.push_back(a * b);
            return sum;
        },
        r, s);
    REQUIRE(F.has_value());
    CHECK(F->real() == doctest::Approx(planewave_pairing(r, s) + 1.0));
}

TEST_CASE("F extraction flags results that are not multiples of e_{r+s}") {
    PlaneWave r({1.0}, {0.0});
    PlaneWave s({0.0}, {1.0});
    auto F = planewave_F_extraction(
        [](const PlaneWave& a, const PlaneWave& b) {
            (void)b;
            return PlaneWaveSum{a};  // wrong support
        },
        r, s);
    CHECK_FALSE(F.has_value());
}
