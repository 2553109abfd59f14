#pragma once

#include <map>
#include <optional>
#include <string>

#include "hybridlie/brackets.hpp"

namespace hybridlie {

using Eigen::Matrix3d;
using Eigen::Vector3d;

inline Vector3d angular_momentum_at(const PhasePoint& p) {
    if (p.n_c() != 3) throw std::invalid_argument("angular_momentum_at: n_c must be 3");
    Vector3d x(p.x[0], p.x[1], p.x[2]), k(p.k[0], p.k[1], p.k[2]);
    return x.cross(k);
}

/// Rotation by angle theta about a unit axis (Rodrigues form).
Matrix3d axis_angle_rotation(const Vector3d& axis_unit, double theta);

/// The pointwise rotation field of the spin-orbit flow: at phase point p the
/// matrix R_t with axis L(p)/|L(p)| and angle -g t |L(p)|. R_0 = identity,
/// orthogonal with determinant one, R_t R_s = R_{t+s}.
struct RotationField {
    double g = 1.0;
    double t = 0.0;

    Matrix3d at(const Vector3d& L) const {
        double l = L.norm();
        if (l == 0.0) throw std::invalid_argument("RotationField: |L| = 0 is singular");
        return axis_angle_rotation(L / l, -g * t * l);
    }
    Matrix3d inverse_at(const Vector3d& L) const {
        double l = L.norm();
        if (l == 0.0) throw std::invalid_argument("RotationField: |L| = 0 is singular");
        return axis_angle_rotation(L / l, g * t * l);
    }
    Matrix3d at(const PhasePoint& p) const { return at(angular_momentum_at(p)); }
};

/// Truncated Lie-series propagator result. The remainder estimate is
/// ||ad^{K+1} A|| |t|^{K+1} / (K+1)! and the warning flag trips when it
/// exceeds 1e-6 of the input magnitude.
template <typename State>
struct LieSeries {
    State value;
    double remainder_estimate = 0.0;
    bool warning = false;
};

/// Iterated adjoints [A, ad_H A, ..., ad_H^{K+1} A] with ad_H = (., H).
std::vector<HybridObservable> heisenberg_ad_chain(const HybridObservable& a,
                                                  const HybridObservable& h, int order);

/// Iterated adjoints with ad_H = (H, .)' acting on the density matrix.
std::vector<DensityField> schrodinger_ad_chain(const DensityField& rho,
                                               const HybridObservable& h, int order);

/// A(t) = sum_{k=0}^{K} (t^k / k!) ad_H^k(A), solving dA/dt = (A, H).
LieSeries<HybridObservable> lie_series_heisenberg(const HybridObservable& a,
                                                  const HybridObservable& h, double t, int order);

/// rho(t) = sum_{k=0}^{K} (t^k / k!) ad_H^k(rho), solving d rho/dt = (H, rho)'.
/// Preserves <<rho>> to rounding and Hermiticity exactly.
LieSeries<DensityField> lie_series_schrodinger(const DensityField& rho,
                                               const HybridObservable& h, double t, int order);

/// Normalized expectation <A>_rho = int tr(rho A).
inline double expectation(const HybridObservable& a, const DensityField& rho) {
    return pair_expectation(a, rho);
}

// ---------------------------------------------------------------------------
// Closed-form spin-orbit evolution, H = g L.S with n = 2, n_c = 3 and the
// kinetic term dropped (large-mass limit). All evaluators are pointwise and
// reject the singular locus |L| <= eps_L where the formulas degenerate.
// ---------------------------------------------------------------------------

constexpr double kDefaultEpsL = 1e-8;

/// Classical part and spin components (a, b) of an evolved observable at one
/// point: a(t) = a(0), b(t) = R_t b(0) + g t (h.L / L^2) L
/// + (1/L^2)(R_t - 1)(L x h), with h = {a, L}.
struct SpinOrbitComponents {
    double a = 0.0;
    Vector3d b = Vector3d::Zero();
};

SpinOrbitComponents spin_orbit_components(const HybridObservable& a, double g, double t,
                                          const PhasePoint& p, double eps_L = kDefaultEpsL);

/// Evolved observable as a 2x2 matrix per point.
std::vector<Matrix> spin_orbit_closed_form(const HybridObservable& a, double g, double t,
                                           const std::vector<PhasePoint>& points,
                                           double eps_L = kDefaultEpsL);

/// Evolution restricted to observables that depend on the phase space only
/// through L: a(t) = a(0), b(t) = grad a + R_t (b(0) - grad a), gradients
/// with respect to L. Inputs are polynomials over three variables carried in
/// the x slots of an n_c = 3 polynomial.
SpinOrbitComponents spin_orbit_components_L_only(const PhasePolynomial& a_of_L,
                                                 const std::vector<PhasePolynomial>& b_of_L,
                                                 double g, double t, const Vector3d& L,
                                                 double eps_L = kDefaultEpsL);

/// Schrodinger-picture closed form: beta(t) = R_t^{-1} beta(0) and
/// alpha(t) = alpha(0) - (hbar^2/4L^2) tr(R_t^{-1} - 1) L.beta(0)
///   + (hbar^2/4L^2) sum_ij [g t L_i L_j - (R_t^{-1}-1)_{il} eps_{lmj} L_m] h_ij,
/// with h_ij = {L_i, beta_j(0)}.
struct SpinOrbitStateComponents {
    double alpha = 0.0;
    Vector3d beta = Vector3d::Zero();
};

SpinOrbitStateComponents spin_orbit_state_components(const DensityField& rho, double g, double t,
                                                     const PhasePoint& p,
                                                     double eps_L = kDefaultEpsL);

std::vector<Matrix> spin_orbit_schrodinger_closed_form(const DensityField& rho, double g, double t,
                                                       const std::vector<PhasePoint>& points,
                                                       double eps_L = kDefaultEpsL);

/// L-only variant of the state evolution:
/// alpha(t) = alpha(0) + (hbar^2/4) div (R_t^{-1} - 1) beta(0), divergence
/// with respect to L, evaluated with exact rotation-field derivatives.
SpinOrbitStateComponents spin_orbit_state_components_L_only(
    const PhasePolynomial& alpha_of_L, const std::vector<PhasePolynomial>& beta_of_L,
    double hbar, double g, double t, const Vector3d& L, double eps_L = kDefaultEpsL);

/// d/dL_m of the rotation R(theta(L), u(L)) with angle sign * g t |L| about
/// u = L/|L|; used by the L-only state evolution and verified against finite
/// differences in the tests.
Matrix3d rotation_derivative(double g, double t, double sign, const Vector3d& L, int m);

// ---------------------------------------------------------------------------
// Conservation reporting.
// ---------------------------------------------------------------------------

struct EvolutionReport {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> values;  // per quantity, per time
    std::map<std::string, double> drift;                // max |<Q>(t) - <Q>(0)|
    double truncation_estimate = 0.0;
};

/// Drift of each named expectation along the Schrodinger-picture evolution of
/// rho under H, evaluated on a strictly increasing time grid.
EvolutionReport conservation_report(const HybridObservable& h,
                                    const std::map<std::string, HybridObservable>& quantities,
                                    const DensityField& rho, const std::vector<double>& times,
                                    int order);

}  // namespace hybridlie
