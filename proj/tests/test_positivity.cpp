#include <doctest.h>

#include "hybridlie/named_observables.hpp"
#include "hybridlie/positivity.hpp"
#include "test_helpers.hpp"

using namespace hybridlie;
using namespace hybridlie::testing;

namespace {

BasisPtr make_basis(int n, double hbar = 1.0) {
    return std::make_shared<const SuBasis>(SuBasis::build(n, hbar));
}

}  // namespace

TEST_CASE("local spectrum: a + b.sigma has eigenvalues a -+ |b| (hbar = 2 makes q = sigma)") {
    auto basis = make_basis(2, 2.0);
    HybridObservable a = HybridObservable::classical(basis, PhasePolynomial::constant(3, 2.0));
    a.a(2) = PhasePolynomial::constant(3, 1.0);
    auto spec = local_spectrum(a, PhasePoint({0, 0, 0}, {0, 0, 0}));
    REQUIRE(spec.size() == 2);
    CHECK(spec[0] == doctest::Approx(1.0));
    CHECK(spec[1] == doctest::Approx(3.0));

    auto unit_spec = local_spectrum(HybridObservable::unit(basis, 3), PhasePoint({1, 0, 0}, {0, 1, 0}));
    CHECK(unit_spec[0] == doctest::Approx(1.0));
    CHECK(unit_spec[1] == doctest::Approx(1.0));

    HybridObservable xs = HybridObservable::zero(basis, 3);
    xs.a(0) = PhasePolynomial::variable(3, xvar(0));
    auto s = local_spectrum(xs, PhasePoint({3, 0, 0}, {0, 1, 0}));
    CHECK(s[0] == doctest::Approx(-3.0));
    CHECK(s[1] == doctest::Approx(3.0));
}

TEST_CASE("positivity margin over a scan and witness tracking") {
    auto basis = make_basis(2);
    auto points = halton_points(3, 60, 2.0);
    // A = (4 + x1) 1 is positive on the box |x1| <= 2 with margin >= 2.
    auto a = HybridObservable::classical(
        basis, PhasePolynomial::constant(3, 4.0) + PhasePolynomial::variable(3, xvar(0)));
    auto scan = positivity_margin(a, points);
    CHECK(scan.global_margin >= 2.0 - 1e-12);
    CHECK(scan.global_margin <= 4.0);
    for (double m : scan.margins) CHECK(m >= scan.global_margin);
    CHECK(scan.witness_index >= 0);

    // sigma_3-like observable is not positive.
    HybridObservable s3 = HybridObservable::zero(basis, 3);
    s3.a(2) = PhasePolynomial::constant(3, 2.0);  // q3 = sigma_3/2, so margin -1
    auto scan3 = positivity_margin(s3, points);
    CHECK(scan3.global_margin == doctest::Approx(-1.0));

    CHECK_THROWS_AS(positivity_margin(a, std::vector<PhasePoint>{}), std::invalid_argument);
}

TEST_CASE("density scan strips the envelope and sees the polynomial part") {
    auto basis = make_basis(2);
    PhasePoint center({1, 0, 0}, {0, 1, 0});
    GaussianField rho0 =
        PhasePolynomial::constant(3, 1.0) * GaussianField::unit(center, 0.4);
    std::vector<GaussianField> rvec(3, rho0.with_poly(PhasePolynomial(3)));
    rvec[2] = rho0.with_poly(PhasePolynomial::variable(3, xvar(0)));
    DensityField rho(basis, rho0, rvec, /*normalize=*/false);
    auto points = halton_points(3, 40, 2.0);
    auto scan = positivity_margin(rho, points);
    // alpha = 1, beta = x1 e_z: margin 1 - |x1|/2 can dip toward 0 but the
    // envelope never enters.
    CHECK(scan.global_margin >= -1e-12);
    CHECK(scan.global_margin < 0.8);
}

TEST_CASE("Heisenberg spin-orbit scenario develops a violation; bisection brackets it") {
    auto basis = make_basis(2);
    // a = 2 + x1, b = 0: positive on the sample box, and h = {a, L} feeds the
    // secular term of the evolution.
    auto a = HybridObservable::classical(
        basis, PhasePolynomial::constant(3, 2.0) + PhasePolynomial::variable(3, xvar(0)));
    auto points = halton_points(3, 40, 2.0, 0.4);
    const double g = 1.0;
    auto curve = heisenberg_spin_orbit_margin(a, g, points);
    auto report = violation_time(curve, 20.0 / g, 1e-6);
    REQUIRE(report.t_star.has_value());
    CHECK(*report.t_star > 0.0);
    CHECK(*report.t_star <= 20.0);
    CHECK(report.witness_index >= 0);
    // Margin flips sign across t*.
    CHECK(curve(*report.t_star - 1e-4).global_margin >= 0.0);
    CHECK(curve(*report.t_star + 1e-3).global_margin < 0.0);
}

TEST_CASE("Schrodinger parallel-spin scenario: alpha' = alpha - hbar beta / 2 drifts negative") {
    auto basis = make_basis(2);
    PhasePoint center({0, 0, 0}, {0, 0, 0});
    const double width = 1.0;
    // H = x1 q3 (h_q along e_z), beta(0) = (2 - k1) e_z, alpha(0) = 2:
    // beta is static, alpha gains t (hbar^2/4) {x1, beta} = -t hbar^2/4.
    GaussianField rho0 = PhasePolynomial::constant(3, 2.0) * GaussianField::unit(center, width);
    std::vector<GaussianField> rvec(3, rho0.with_poly(PhasePolynomial(3)));
    rvec[2] = rho0.with_poly(PhasePolynomial::constant(3, 2.0) -
                             PhasePolynomial::variable(3, kvar(3, 0)));
    DensityField rho(basis, rho0, rvec);  // normalization rescales both parts

    HybridObservable h = HybridObservable::zero(basis, 3);
    h.a(2) = PhasePolynomial::variable(3, xvar(0));

    // The adjoint chain is nilpotent here (ad^2 = 0), so a low-order series
    // evolves the state exactly.
    auto points = halton_points(3, 60, 2.0);
    auto curve = schrodinger_series_margin(rho, h, points, 2);
    CHECK(curve(0.0).global_margin >= 0.0);
    auto report = violation_time(curve, 20.0, 1e-6);
    REQUIRE(report.t_star.has_value());
    CHECK(*report.t_star <= 20.0);
}

TEST_CASE("purely classical control: margins never flip (free flow, terminating series)") {
    auto basis = make_basis(2);
    // H = k^2/2, A = (2 + x1^2) 1: A(t) = 2 + (x1 + t k1)^2 stays >= 2.
    auto h = HybridObservable::classical(basis, spin_half::momentum_squared(basis).a0() * 0.5);
    auto a = HybridObservable::classical(
        basis, PhasePolynomial::constant(3, 2.0) + PhasePolynomial::variable(3, xvar(0), 2));
    auto points = halton_points(3, 40, 2.0);
    // Degree-2 polynomial + free flow: the adjoint chain terminates at order 2.
    auto curve = heisenberg_series_margin(a, h, points, 3);
    auto report = violation_time(curve, 20.0, 1e-6, 100);
    CHECK_FALSE(report.t_star.has_value());
    // Spot-check margin preservation at a few times.
    for (double t : {0.5, 5.0, 20.0}) CHECK(curve(t).global_margin >= 2.0 - 1e-9);
}

TEST_CASE("purely quantal control: spectra are rotation invariant, no violation") {
    auto basis = make_basis(2);
    // H = q3, rho with constant beta: beta rotates about e_z at unit rate.
    PhasePoint center({0, 0, 0}, {0, 0, 0});
    GaussianField rho0 = PhasePolynomial::constant(3, 1.0) * GaussianField::unit(center, 1.0);
    std::vector<GaussianField> rvec(3, rho0.with_poly(PhasePolynomial(3)));
    rvec[0] = rho0.with_poly(PhasePolynomial::constant(3, 0.8));
    DensityField rho(basis, rho0, rvec);
    HybridObservable h = HybridObservable::zero(basis, 3);
    h.a(2) = PhasePolynomial::constant(3, 1.0);

    auto points = halton_points(3, 20, 1.5);
    // Constant coefficients: each adjoint application is a cheap rotation
    // step, so a high order is affordable and converges over [0, 20].
    auto curve = schrodinger_series_margin(rho, h, points, 60);
    auto report = violation_time(curve, 20.0, 1e-6, 100);
    CHECK_FALSE(report.t_star.has_value());
    double m0 = curve(0.0).global_margin;
    for (double t : {1.0, 7.0, 19.0})
        CHECK(curve(t).global_margin == doctest::Approx(m0).epsilon(1e-6));
}

TEST_CASE("purely quantal evolution preserves observable spectra pointwise") {
    auto basis = make_basis(2);
    auto rng = seeded_rng(701);
    HybridObservable h = HybridObservable::quantal(basis, 3, basis->q(0) + 0.5 * basis->q(1));
    auto a = random_observable(rng, basis, 3, 1, 2, 2);
    auto points = halton_points(3, 10, 1.5);
    const double t = 0.8;
    auto evolved = lie_series_heisenberg(a, h, t, 40);
    for (const auto& p : points) {
        auto s0 = local_spectrum(a, p);
        auto st = local_spectrum(evolved.value, p);
        for (size_t i = 0; i < s0.size(); ++i)
            CHECK(st[i] == doctest::Approx(s0[i]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("violation_time rejects a negative initial scan") {
    auto basis = make_basis(2);
    HybridObservable s3 = HybridObservable::zero(basis, 3);
    s3.a(2) = PhasePolynomial::constant(3, 2.0);
    auto points = halton_points(3, 10, 1.0, 0.3);
    auto curve = heisenberg_spin_orbit_margin(s3, 1.0, points);
    CHECK_THROWS_AS(violation_time(curve, 10.0, 1e-6), std::invalid_argument);
}

TEST_CASE("L-only dynamics also admits positivity violations (numerical search)") {
    // a = 1 + L1, b = 0 is positive on sample points with L1 > -1, yet the
    // bounded rotation term alone can exceed the small values of a.
    auto basis = make_basis(2);
    PhasePolynomial aL = PhasePolynomial::constant(3, 1.0) + PhasePolynomial::variable(3, 0);
    std::vector<PhasePolynomial> bL(3, PhasePolynomial(3));
    std::vector<Vector3d> Ls;
    for (const auto& p : halton_points(3, 200, 1.5, 0.3)) {
        Vector3d L = angular_momentum_at(p);
        if (1.0 + L(0) > 1e-3) Ls.push_back(L);
    }
    REQUIRE(Ls.size() > 50);
    const double g = 1.0, hbar = 1.0;
    bool violated = false;
    for (double t = 0.0; t <= 20.0 && !violated; t += 0.05) {
        for (const auto& L : Ls) {
            auto c = spin_orbit_components_L_only(aL, bL, g, t, L);
            if (c.a - 0.5 * hbar * c.b.norm() < 0.0) {
                violated = true;
                break;
            }
        }
    }
    CHECK(violated);
}
