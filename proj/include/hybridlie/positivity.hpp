#pragma once

#include <functional>

#include "hybridlie/dynamics.hpp"

namespace hybridlie {

/// Per-point smallest eigenvalue of a hybrid observable or state over a point
/// set; the global margin is the indexed minimum.
struct PositivityScan {
    std::vector<double> margins;
    double global_margin = 0.0;
    int witness_index = -1;
};

/// Sorted eigenvalues of the Hermitian matrix A(p). Rejects non-Hermitian
/// values (which cannot occur for real coefficient functions but can for
/// hand-built matrices fed through the matrix API).
std::vector<double> local_spectrum(const HybridObservable& a, const PhasePoint& p);

PositivityScan positivity_margin(const HybridObservable& a, const std::vector<PhasePoint>& points);

/// For a density field the Gaussian envelope is positive, so the polynomial
/// part alone decides the sign of the spectrum; it is what gets scanned.
PositivityScan positivity_margin(const DensityField& rho, const std::vector<PhasePoint>& points);

/// Margin curve provider: global positivity scan as a function of time.
using MarginCurve = std::function<PositivityScan(double)>;

struct ViolationReport {
    std::optional<double> t_star;
    int witness_index = -1;
    std::vector<std::pair<double, double>> margin_curve;  // (t, global margin)
};

/// Locates the smallest t in (0, t_max] where the global margin turns
/// negative: coarse scan (t_max / steps) then bisection to tolerance `tol`.
/// The initial scan must be positive.
ViolationReport violation_time(const MarginCurve& margin_at, double t_max, double tol,
                               int coarse_steps = 200);

/// Margin curves for the scenarios exercised by the positivity suite.
MarginCurve heisenberg_spin_orbit_margin(const HybridObservable& a, double g,
                                         std::vector<PhasePoint> points,
                                         double eps_L = kDefaultEpsL);
MarginCurve schrodinger_spin_orbit_margin(const DensityField& rho, double g,
                                          std::vector<PhasePoint> points,
                                          double eps_L = kDefaultEpsL);
/// Series-driven curves for Hamiltonians whose adjoint chain terminates or
/// converges over the scanned window (classical and quantal controls, and the
/// parallel-spin drift scenario where the chain is nilpotent).
MarginCurve heisenberg_series_margin(const HybridObservable& a, const HybridObservable& h,
                                     std::vector<PhasePoint> points, int order);
MarginCurve schrodinger_series_margin(const DensityField& rho, const HybridObservable& h,
                                      std::vector<PhasePoint> points, int order);

/// Deterministic low-discrepancy (Halton) points in the box
/// [-half_width, half_width]^{2 n_c}, optionally rejecting |L| < min_L
/// (n_c = 3 only).
std::vector<PhasePoint> halton_points(int n_c, int count, double half_width, double min_L = 0.0);

}  // namespace hybridlie
