#include "hybridlie/positivity.hpp"

#include <Eigen/Eigenvalues>

namespace hybridlie {

namespace {

std::vector<double> sorted_eigenvalues(const Matrix& m) {
    if (!is_hermitian(m, 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff())))
        throw std::invalid_argument("local_spectrum: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + m.rows());
    return out;
}

PositivityScan scan_minimum(const std::vector<Matrix>& values) {
    if (values.empty()) throw std::invalid_argument("positivity_margin: empty point set");
    PositivityScan scan;
    scan.margins.reserve(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        double m = sorted_eigenvalues(values[i]).front();
        scan.margins.push_back(m);
        if (scan.witness_index < 0 || m < scan.global_margin) {
            scan.global_margin = m;
            scan.witness_index = static_cast<int>(i);
        }
    }
    return scan;
}

}  // namespace

std::vector<double> local_spectrum(const HybridObservable& a, const PhasePoint& p) {
    return sorted_eigenvalues(a.evaluate(p));
}

PositivityScan positivity_margin(const HybridObservable& a, const std::vector<PhasePoint>& points) {
    std::vector<Matrix> values;
    values.reserve(points.size());
    for (const auto& p : points) values.push_back(a.evaluate(p));
    return scan_minimum(values);
}

PositivityScan positivity_margin(const DensityField& rho, const std::vector<PhasePoint>& points) {
    std::vector<Matrix> values;
    values.reserve(points.size());
    for (const auto& p : points) {
        // Envelope stripped: only the polynomial part decides the sign.
        Matrix m = rho.rho0().poly().evaluate(p) * rho.basis()->identity();
        for (int i = 0; i < rho.components(); ++i)
            m += rho.r(i).poly().evaluate(p) * rho.basis()->q(i);
        values.push_back(std::move(m));
    }
    return scan_minimum(values);
}

ViolationReport violation_time(const MarginCurve& margin_at, double t_max, double tol,
                               int coarse_steps) {
    if (!(t_max > 0.0) || coarse_steps < 2)
        throw std::invalid_argument("violation_time: bad scan parameters");
    PositivityScan initial = margin_at(0.0);
    if (initial.global_margin < 0.0)
        throw std::invalid_argument("violation_time: initial scan is not positive");

    ViolationReport report;
    double prev_t = 0.0;
    double first_neg = -1.0;
    int witness = -1;
    for (int j = 0; j <= coarse_steps; ++j) {
        double t = t_max * j / coarse_steps;
        PositivityScan s = margin_at(t);
        report.margin_curve.emplace_back(t, s.global_margin);
        if (s.global_margin < 0.0 && first_neg < 0.0) {
            first_neg = t;
            witness = s.witness_index;
            break;
        }
        prev_t = t;
    }
    if (first_neg < 0.0) return report;  // no violation found up to t_max

    double lo = prev_t, hi = first_neg;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        PositivityScan s = margin_at(mid);
        if (s.global_margin < 0.0) {
            hi = mid;
            witness = s.witness_index;
        } else {
            lo = mid;
        }
    }
    report.t_star = hi;
    report.witness_index = witness;
    return report;
}

MarginCurve heisenberg_spin_orbit_margin(const HybridObservable& a, double g,
                                         std::vector<PhasePoint> points, double eps_L) {
    return [a, g, points = std::move(points), eps_L](double t) {
        std::vector<Matrix> values = spin_orbit_closed_form(a, g, t, points, eps_L);
        PositivityScan scan;
        scan.margins.reserve(values.size());
        for (size_t i = 0; i < values.size(); ++i) {
            Eigen::SelfAdjointEigenSolver<Matrix> s(values[i], Eigen::EigenvaluesOnly);
            double m = s.eigenvalues().minCoeff();
            scan.margins.push_back(m);
            if (scan.witness_index < 0 || m < scan.global_margin) {
                scan.global_margin = m;
                scan.witness_index = static_cast<int>(i);
            }
        }
        return scan;
    };
}

MarginCurve schrodinger_spin_orbit_margin(const DensityField& rho, double g,
                                          std::vector<PhasePoint> points, double eps_L) {
    return [rho, g, points = std::move(points), eps_L](double t) {
        std::vector<Matrix> values = spin_orbit_schrodinger_closed_form(rho, g, t, points, eps_L);
        PositivityScan scan;
        scan.margins.reserve(values.size());
        for (size_t i = 0; i < values.size(); ++i) {
            Eigen::SelfAdjointEigenSolver<Matrix> s(values[i], Eigen::EigenvaluesOnly);
            double m = s.eigenvalues().minCoeff();
            scan.margins.push_back(m);
            if (scan.witness_index < 0 || m < scan.global_margin) {
                scan.global_margin = m;
                scan.witness_index = static_cast<int>(i);
            }
        }
        return scan;
    };
}

MarginCurve heisenberg_series_margin(const HybridObservable& a, const HybridObservable& h,
                                     std::vector<PhasePoint> points, int order) {
    auto chain = std::make_shared<std::vector<HybridObservable>>(heisenberg_ad_chain(a, h, order));
    return [chain, points = std::move(points), order](double t) {
        HybridObservable at = (*chain)[0];
        double w = 1.0;
        for (int k = 1; k <= order; ++k) {
            w *= t / k;
            at += (*chain)[k] * w;
        }
        return positivity_margin(at, points);
    };
}

MarginCurve schrodinger_series_margin(const DensityField& rho, const HybridObservable& h,
                                      std::vector<PhasePoint> points, int order) {
    auto chain = std::make_shared<std::vector<DensityField>>(schrodinger_ad_chain(rho, h, order));
    return [chain, points = std::move(points), order](double t) {
        DensityField at = (*chain)[0];
        double w = 1.0;
        for (int k = 1; k <= order; ++k) {
            w *= t / k;
            at += (*chain)[k] * w;
        }
        return positivity_margin(at, points);
    };
}

namespace {

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    int i = index;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

}  // namespace

std::vector<PhasePoint> halton_points(int n_c, int count, double half_width, double min_L) {
    static const int primes[12] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (2 * n_c > 12) throw std::invalid_argument("halton_points: n_c too large");
    std::vector<PhasePoint> points;
    points.reserve(count);
    int index = 1;
    while (static_cast<int>(points.size()) < count) {
        std::vector<double> x(n_c), k(n_c);
        for (int v = 0; v < n_c; ++v) {
            x[v] = (2.0 * halton(index, primes[v]) - 1.0) * half_width;
            k[v] = (2.0 * halton(index, primes[n_c + v]) - 1.0) * half_width;
        }
        ++index;
        PhasePoint p(std::move(x), std::move(k));
        if (min_L > 0.0 && n_c == 3 && angular_momentum_at(p).norm() < min_L) continue;
        points.push_back(std::move(p));
        if (index > 1000000) throw std::runtime_error("halton_points: rejection stalled");
    }
    return points;
}

}  // namespace hybridlie
