#include "hybridlie/dynamics.hpp"

#include <cmath>

namespace hybridlie {

namespace {

Matrix3d cross_matrix(const Vector3d& a) {
    Matrix3d m;
    m << 0.0, -a.z(), a.y(), a.z(), 0.0, -a.x(), -a.y(), a.x(), 0.0;
    return m;
}

Vector3d require_regular_L(const PhasePoint& p, double eps_L) {
    Vector3d L = angular_momentum_at(p);
    if (L.norm() <= eps_L)
        throw std::invalid_argument("spin-orbit closed form: point inside the singular locus |L| <= eps");
    return L;
}

void require_spin_half(const HybridObservable& a) {
    if (a.basis()->dim() != 2 || a.n_c() != 3)
        throw std::invalid_argument("spin-orbit closed form requires n = 2, n_c = 3");
}

}  // namespace

Matrix3d axis_angle_rotation(const Vector3d& u, double theta) {
    Matrix3d P = u * u.transpose();
    return std::cos(theta) * Matrix3d::Identity() + (1.0 - std::cos(theta)) * P +
           std::sin(theta) * cross_matrix(u);
}

std::vector<HybridObservable> heisenberg_ad_chain(const HybridObservable& a,
                                                  const HybridObservable& h, int order) {
    if (order < 1) throw std::invalid_argument("lie series: order must be >= 1");
    std::vector<HybridObservable> chain;
    chain.reserve(order + 2);
    chain.push_back(a);
    for (int k = 1; k <= order + 1; ++k) chain.push_back(heisenberg_bracket(chain.back(), h));
    return chain;
}

std::vector<DensityField> schrodinger_ad_chain(const DensityField& rho,
                                               const HybridObservable& h, int order) {
    if (order < 1) throw std::invalid_argument("lie series: order must be >= 1");
    std::vector<DensityField> chain;
    chain.reserve(order + 2);
    chain.push_back(rho);
    for (int k = 1; k <= order + 1; ++k) chain.push_back(schrodinger_bracket(h, chain.back()));
    return chain;
}

LieSeries<HybridObservable> lie_series_heisenberg(const HybridObservable& a,
                                                  const HybridObservable& h, double t, int order) {
    auto chain = heisenberg_ad_chain(a, h, order);
    HybridObservable value = chain[0];
    double weight = 1.0;
    for (int k = 1; k <= order; ++k) {
        weight *= t / k;
        value += chain[k] * weight;
    }
    weight *= t / (order + 1);
    LieSeries<HybridObservable> out{std::move(value),
                                    chain[order + 1].max_abs_coeff() * std::abs(weight), false};
    out.warning = out.remainder_estimate > 1e-6 * a.max_abs_coeff();
    return out;
}

LieSeries<DensityField> lie_series_schrodinger(const DensityField& rho,
                                               const HybridObservable& h, double t, int order) {
    auto chain = schrodinger_ad_chain(rho, h, order);
    DensityField value = chain[0];
    double weight = 1.0;
    for (int k = 1; k <= order; ++k) {
        weight *= t / k;
        value += chain[k] * weight;
    }
    weight *= t / (order + 1);
    LieSeries<DensityField> out{std::move(value),
                                chain[order + 1].max_abs_coeff() * std::abs(weight), false};
    out.warning = out.remainder_estimate > 1e-6 * rho.max_abs_coeff();
    return out;
}

SpinOrbitComponents spin_orbit_components(const HybridObservable& a, double g, double t,
                                          const PhasePoint& p, double eps_L) {
    require_spin_half(a);
    Vector3d L = require_regular_L(p, eps_L);
    const double l2 = L.squaredNorm();

    SpinOrbitComponents out;
    out.a = a.a0().evaluate(p);
    Vector3d b0(a.a(0).evaluate(p), a.a(1).evaluate(p), a.a(2).evaluate(p));
    Vector3d h;
    for (int j = 0; j < 3; ++j) h(j) = poisson_bracket(a.a0(), angular_momentum(j)).evaluate(p);

    Matrix3d R = RotationField{g, t}.at(L);
    out.b = R * b0 + (g * t * h.dot(L) / l2) * L + (R - Matrix3d::Identity()) * L.cross(h) / l2;
    return out;
}

std::vector<Matrix> spin_orbit_closed_form(const HybridObservable& a, double g, double t,
                                           const std::vector<PhasePoint>& points, double eps_L) {
    std::vector<Matrix> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        auto c = spin_orbit_components(a, g, t, p, eps_L);
        Matrix m = c.a * a.basis()->identity();
        for (int i = 0; i < 3; ++i) m += c.b(i) * a.basis()->q(i);
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

Vector3d gradient_L(const PhasePolynomial& f_of_L, const Vector3d& L) {
    PhasePoint p({L.x(), L.y(), L.z()}, {0.0, 0.0, 0.0});
    Vector3d g;
    for (int i = 0; i < 3; ++i) g(i) = f_of_L.derivative(xvar(i)).evaluate(p);
    return g;
}

double eval_L(const PhasePolynomial& f_of_L, const Vector3d& L) {
    return f_of_L.evaluate(PhasePoint({L.x(), L.y(), L.z()}, {0.0, 0.0, 0.0}));
}

}  // namespace

SpinOrbitComponents spin_orbit_components_L_only(const PhasePolynomial& a_of_L,
                                                 const std::vector<PhasePolynomial>& b_of_L,
                                                 double g, double t, const Vector3d& L,
                                                 double eps_L) {
    if (b_of_L.size() != 3)
        throw std::invalid_argument("spin_orbit_components_L_only: need three b components");
    if (L.norm() <= eps_L)
        throw std::invalid_argument("spin-orbit closed form: |L| <= eps is singular");
    SpinOrbitComponents out;
    out.a = eval_L(a_of_L, L);
    Vector3d grad = gradient_L(a_of_L, L);
    Vector3d b0(eval_L(b_of_L[0], L), eval_L(b_of_L[1], L), eval_L(b_of_L[2], L));
    Matrix3d R = RotationField{g, t}.at(L);
    out.b = grad + R * (b0 - grad);
    return out;
}

SpinOrbitStateComponents spin_orbit_state_components(const DensityField& rho, double g, double t,
                                                     const PhasePoint& p, double eps_L) {
    if (rho.basis()->dim() != 2 || rho.n_c() != 3)
        throw std::invalid_argument("spin-orbit closed form requires n = 2, n_c = 3");
    Vector3d L = require_regular_L(p, eps_L);
    const double l2 = L.squaredNorm();
    const double hbar2 = rho.basis()->hbar() * rho.basis()->hbar();

    SpinOrbitStateComponents out;
    Vector3d beta0(rho.r(0).evaluate(p), rho.r(1).evaluate(p), rho.r(2).evaluate(p));
    Matrix3d Rinv = RotationField{g, t}.inverse_at(L);
    Matrix3d W = Rinv - Matrix3d::Identity();
    out.beta = Rinv * beta0;

    // h_ij = {L_i, beta_j(0)} evaluated at the point.
    Matrix3d h;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            h(i, j) = poisson_bracket_state(angular_momentum(i), rho.r(j)).evaluate(p);

    double alpha = rho.rho0().evaluate(p);
    alpha -= hbar2 / (4.0 * l2) * W.trace() * L.dot(beta0);
    double coupling = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double kernel = g * t * L(i) * L(j);
            for (int l = 0; l < 3; ++l)
                for (int m = 0; m < 3; ++m) {
                    double eps = levi_civita(l, m, j);
                    if (eps != 0.0) kernel -= W(i, l) * eps * L(m);
                }
            coupling += kernel * h(i, j);
        }
    out.alpha = alpha + hbar2 / (4.0 * l2) * coupling;
    return out;
}

std::vector<Matrix> spin_orbit_schrodinger_closed_form(const DensityField& rho, double g, double t,
                                                       const std::vector<PhasePoint>& points,
                                                       double eps_L) {
    std::vector<Matrix> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        auto c = spin_orbit_state_components(rho, g, t, p, eps_L);
        Matrix m = c.alpha * rho.basis()->identity();
        for (int i = 0; i < 3; ++i) m += c.beta(i) * rho.basis()->q(i);
        out.push_back(std::move(m));
    }
    return out;
}

Matrix3d rotation_derivative(double g, double t, double sign, const Vector3d& L, int m) {
    const double l = L.norm();
    const Vector3d u = L / l;
    const double theta = sign * g * t * l;
    const double dtheta = sign * g * t * u(m);
    Vector3d du;
    for (int i = 0; i < 3; ++i) du(i) = ((i == m ? 1.0 : 0.0) - u(i) * u(m)) / l;

    Matrix3d P = u * u.transpose();
    Matrix3d dP = du * u.transpose() + u * du.transpose();
    const double c = std::cos(theta), s = std::sin(theta);
    return dtheta * (-s * Matrix3d::Identity() + s * P + c * cross_matrix(u)) +
           (1.0 - c) * dP + s * cross_matrix(du);
}

SpinOrbitStateComponents spin_orbit_state_components_L_only(
    const PhasePolynomial& alpha_of_L, const std::vector<PhasePolynomial>& beta_of_L,
    double hbar, double g, double t, const Vector3d& L, double eps_L) {
    if (beta_of_L.size() != 3)
        throw std::invalid_argument("spin_orbit_state_components_L_only: need three components");
    if (L.norm() <= eps_L)
        throw std::invalid_argument("spin-orbit closed form: |L| <= eps is singular");

    Vector3d beta0(eval_L(beta_of_L[0], L), eval_L(beta_of_L[1], L), eval_L(beta_of_L[2], L));
    Matrix3d Rinv = RotationField{g, t}.inverse_at(L);
    Matrix3d W = Rinv - Matrix3d::Identity();

    // div (R^{-1} - 1) beta(0) = sum_ij (d R^{-1}_ij / dL_i) beta_j
    //                          + (R^{-1} - 1)_ij d beta_j / dL_i.
    double div = 0.0;
    for (int i = 0; i < 3; ++i) {
        Matrix3d dR = rotation_derivative(g, t, +1.0, L, i);
        for (int j = 0; j < 3; ++j) {
            div += dR(i, j) * beta0(j);
            div += W(i, j) * gradient_L(beta_of_L[j], L)(i);
        }
    }
    SpinOrbitStateComponents out;
    out.alpha = eval_L(alpha_of_L, L) + hbar * hbar / 4.0 * div;
    out.beta = Rinv * beta0;
    return out;
}

EvolutionReport conservation_report(const HybridObservable& h,
                                    const std::map<std::string, HybridObservable>& quantities,
                                    const DensityField& rho, const std::vector<double>& times,
                                    int order) {
    if (times.empty()) throw std::invalid_argument("conservation_report: empty time grid");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("conservation_report: times must be strictly increasing");

    auto chain = schrodinger_ad_chain(rho, h, order);
    EvolutionReport report;
    report.times = times;

    double t_max_abs = 0.0;
    for (double t : times) t_max_abs = std::max(t_max_abs, std::abs(t));
    double tail_weight = 1.0;
    for (int k = 1; k <= order + 1; ++k) tail_weight *= t_max_abs / k;
    report.truncation_estimate = chain[order + 1].max_abs_coeff() * tail_weight;

    for (const auto& [name, q] : quantities) {
        std::vector<double> moments(order + 1);
        for (int k = 0; k <= order; ++k) moments[k] = pair_expectation(q, chain[k]);
        std::vector<double> vals;
        vals.reserve(times.size());
        double drift = 0.0;
        for (double t : times) {
            double v = 0.0, w = 1.0;
            for (int k = 0; k <= order; ++k) {
                v += w * moments[k];
                w *= t / (k + 1);
            }
            vals.push_back(v);
            drift = std::max(drift, std::abs(v - moments[0]));
        }
        report.values[name] = std::move(vals);
        report.drift[name] = drift;
    }
    return report;
}

}  // namespace hybridlie
