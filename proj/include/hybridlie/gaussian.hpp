#pragma once

#include <cmath>
#include <numbers>

#include "hybridlie/phase_poly.hpp"

namespace hybridlie {

/// Polynomial times a fixed isotropic Gaussian envelope,
///   F(x,k) = poly(x,k) * exp(-(|x-xc|^2 + |k-kc|^2) / (2 s^2)).
/// The class is closed under partial derivatives, multiplication by
/// polynomials and Poisson brackets against polynomials, and its phase-space
/// integral is exact (Gaussian moment recurrences).
class GaussianField {
  public:
    GaussianField(PhasePolynomial poly, PhasePoint center, double width)
        : poly_(std::move(poly)), center_(std::move(center)), width_(width) {
        if (center_.n_c() != poly_.n_c())
            throw std::invalid_argument("GaussianField: center dimension mismatch");
        if (!(width > 0.0) || !std::isfinite(width))
            throw std::invalid_argument("GaussianField: width must be positive");
    }

    static GaussianField unit(const PhasePoint& center, double width) {
        return GaussianField(PhasePolynomial::constant(center.n_c(), 1.0), center, width);
    }

    const PhasePolynomial& poly() const { return poly_; }
    const PhasePoint& center() const { return center_; }
    double width() const { return width_; }
    int n_c() const { return poly_.n_c(); }
    bool is_zero() const { return poly_.is_zero(); }

    bool same_envelope(const GaussianField& o, double tol = 0.0) const {
        if (n_c() != o.n_c()) return false;
        if (std::abs(width_ - o.width_) > tol) return false;
        for (int i = 0; i < n_c(); ++i) {
            if (std::abs(center_.x[i] - o.center_.x[i]) > tol) return false;
            if (std::abs(center_.k[i] - o.center_.k[i]) > tol) return false;
        }
        return true;
    }

    GaussianField with_poly(PhasePolynomial p) const {
        return GaussianField(std::move(p), center_, width_);
    }

    /// d/dvar of poly * envelope; the envelope contributes -(v - vbar)/s^2.
    GaussianField derivative(int var) const {
        double vbar = var < n_c() ? center_.x[var] : center_.k[var - n_c()];
        double inv_s2 = 1.0 / (width_ * width_);
        PhasePolynomial shift =
            PhasePolynomial::variable(n_c(), var) - PhasePolynomial::constant(n_c(), vbar);
        return with_poly(poly_.derivative(var) - poly_ * shift * (inv_s2));
    }

    double evaluate(const PhasePoint& p) const {
        if (p.n_c() != n_c())
            throw std::invalid_argument("GaussianField::evaluate: dimension mismatch");
        double expo = 0.0;
        for (int i = 0; i < n_c(); ++i) {
            double dx = p.x[i] - center_.x[i];
            double dk = p.k[i] - center_.k[i];
            expo += dx * dx + dk * dk;
        }
        return poly_.evaluate(p) * std::exp(-expo / (2.0 * width_ * width_));
    }

    GaussianField& operator+=(const GaussianField& o) {
        require_envelope(o);
        poly_ += o.poly_;
        return *this;
    }
    GaussianField& operator-=(const GaussianField& o) {
        require_envelope(o);
        poly_ -= o.poly_;
        return *this;
    }
    GaussianField& operator*=(double s) {
        poly_ *= s;
        return *this;
    }
    friend GaussianField operator+(GaussianField a, const GaussianField& b) { return a += b; }
    friend GaussianField operator-(GaussianField a, const GaussianField& b) { return a -= b; }
    friend GaussianField operator*(GaussianField a, double s) { return a *= s; }
    friend GaussianField operator*(double s, GaussianField a) { return a *= s; }
    friend GaussianField operator*(const PhasePolynomial& p, const GaussianField& f) {
        return f.with_poly(p * f.poly_);
    }

  private:
    void require_envelope(const GaussianField& o) const {
        if (!same_envelope(o))
            throw std::invalid_argument("GaussianField: envelope mismatch");
    }

    PhasePolynomial poly_;
    PhasePoint center_;
    double width_;
};

/// Exact integral of one monomial factor, int v^e exp(-(v-c)^2/(2 s^2)) dv.
/// Binomial expansion around the center; odd central moments vanish and the
/// even central moment of order 2m is s^{2m} (2m-1)!!.
inline double gaussian_monomial_integral(int e, double center, double s) {
    const double norm = std::sqrt(2.0 * std::numbers::pi) * s;
    double total = 0.0;
    double binom = 1.0;  // C(e, j), updated incrementally
    for (int j = 0; j <= e; ++j) {
        if (j % 2 == 0) {
            double moment = 1.0;  // s^j (j-1)!!
            for (int m = 1; m < j; m += 2) moment *= m * s * s;
            total += binom * std::pow(center, e - j) * moment;
        }
        binom = binom * (e - j) / (j + 1);
    }
    return norm * total;
}

/// Exact phase-space integral of a GaussianField over R^{2 n_c}.
inline double integrate(const GaussianField& f) {
    double total = 0.0;
    const auto& codec = f.poly().codec();
    for (const auto& [key, coeff] : f.poly().terms()) {
        double term = coeff;
        for (int v = 0; v < codec.nvars(); ++v) {
            double c = v < f.n_c() ? f.center().x[v] : f.center().k[v - f.n_c()];
            term *= gaussian_monomial_integral(codec.exponent(key, v), c, f.width());
        }
        total += term;
    }
    return total;
}

/// Poisson bracket of a polynomial observable against a Gaussian state
/// component; exact, and the result carries the state's envelope.
inline GaussianField poisson_bracket_state(const PhasePolynomial& a, const GaussianField& f) {
    if (a.n_c() != f.n_c())
        throw std::invalid_argument("poisson_bracket_state: dimension mismatch");
    GaussianField r = f.with_poly(PhasePolynomial(f.n_c()));
    for (int i = 0; i < a.n_c(); ++i) {
        r += a.derivative(xvar(i)) * f.derivative(kvar(a.n_c(), i));
        r -= a.derivative(kvar(a.n_c(), i)) * f.derivative(xvar(i));
    }
    return r;
}

}  // namespace hybridlie
