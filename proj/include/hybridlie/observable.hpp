#pragma once

#include <memory>
#include <vector>

#include "hybridlie/gaussian.hpp"
#include "hybridlie/phase_poly.hpp"
#include "hybridlie/su_basis.hpp"

namespace hybridlie {

using BasisPtr = std::shared_ptr<const SuBasis>;

/// Hybrid observable A = A0 * 1 + sum_i A_i q_i with real polynomial
/// coefficient functions over the traceless basis. Real coefficients make
/// every instance Hermitian by construction.
class HybridObservable {
  public:
    HybridObservable(BasisPtr basis, PhasePolynomial a0, std::vector<PhasePolynomial> avec)
        : basis_(std::move(basis)), a0_(std::move(a0)), avec_(std::move(avec)) {
        if (!basis_) throw std::invalid_argument("HybridObservable: null basis");
        if (avec_.size() != static_cast<size_t>(basis_->size()))
            throw std::invalid_argument("HybridObservable: coefficient count mismatch");
        for (const auto& p : avec_)
            if (p.n_c() != a0_.n_c())
                throw std::invalid_argument("HybridObservable: mixed classical dimensions");
    }

    static HybridObservable zero(BasisPtr basis, int n_c) {
        std::vector<PhasePolynomial> avec(basis->size(), PhasePolynomial(n_c));
        return HybridObservable(std::move(basis), PhasePolynomial(n_c), std::move(avec));
    }

    static HybridObservable classical(BasisPtr basis, PhasePolynomial c) {
        std::vector<PhasePolynomial> avec(basis->size(), PhasePolynomial(c.n_c()));
        return HybridObservable(std::move(basis), std::move(c), std::move(avec));
    }

    /// Embeds a constant Hermitian operator (purely quantal observable).
    static HybridObservable quantal(BasisPtr basis, int n_c, const Matrix& q);

    /// Identity observable.
    static HybridObservable unit(BasisPtr basis, int n_c) {
        return classical(std::move(basis), PhasePolynomial::constant(n_c, 1.0));
    }

    const BasisPtr& basis() const { return basis_; }
    int n_c() const { return a0_.n_c(); }
    int components() const { return static_cast<int>(avec_.size()); }
    const PhasePolynomial& a0() const { return a0_; }
    PhasePolynomial& a0() { return a0_; }
    const PhasePolynomial& a(int i) const { return avec_.at(i); }
    PhasePolynomial& a(int i) { return avec_.at(i); }
    const std::vector<PhasePolynomial>& avec() const { return avec_; }

    bool is_classical() const {
        for (const auto& p : avec_)
            if (!p.is_zero()) return false;
        return true;
    }

    bool is_quantal() const {
        if (!a0_.is_constant()) return false;
        for (const auto& p : avec_)
            if (!p.is_constant()) return false;
        return true;
    }

    bool is_zero() const { return a0_.is_zero() && is_classical(); }

    double max_abs_coeff() const {
        double m = a0_.max_abs_coeff();
        for (const auto& p : avec_) m = std::max(m, p.max_abs_coeff());
        return m;
    }

    /// Pointwise operator value A(p) = A0(p) 1 + sum_i A_i(p) q_i.
    Matrix evaluate(const PhasePoint& p) const {
        Matrix m = a0_.evaluate(p) * basis_->identity();
        for (int i = 0; i < components(); ++i) {
            double c = avec_[i].evaluate(p);
            if (c != 0.0) m += c * basis_->q(i);
        }
        return m;
    }

    HybridObservable& operator+=(const HybridObservable& o) {
        require_compatible(o);
        a0_ += o.a0_;
        for (int i = 0; i < components(); ++i) avec_[i] += o.avec_[i];
        return *this;
    }
    HybridObservable& operator-=(const HybridObservable& o) {
        require_compatible(o);
        a0_ -= o.a0_;
        for (int i = 0; i < components(); ++i) avec_[i] -= o.avec_[i];
        return *this;
    }
    HybridObservable& operator*=(double s) {
        a0_ *= s;
        for (auto& p : avec_) p *= s;
        return *this;
    }
    friend HybridObservable operator+(HybridObservable a, const HybridObservable& b) { return a += b; }
    friend HybridObservable operator-(HybridObservable a, const HybridObservable& b) { return a -= b; }
    friend HybridObservable operator*(HybridObservable a, double s) { return a *= s; }
    friend HybridObservable operator*(double s, HybridObservable a) { return a *= s; }

    /// Multiplication by a classical function (componentwise).
    HybridObservable scaled_by(const PhasePolynomial& c) const {
        HybridObservable r = *this;
        r.a0_ = c * a0_;
        for (auto& p : r.avec_) p = c * p;
        return r;
    }

    void require_compatible(const HybridObservable& o) const {
        if (basis_.get() != o.basis_.get())
            throw std::invalid_argument("HybridObservable: basis mismatch");
        if (n_c() != o.n_c())
            throw std::invalid_argument("HybridObservable: classical dimension mismatch");
    }

  private:
    BasisPtr basis_;
    PhasePolynomial a0_;
    std::vector<PhasePolynomial> avec_;
};

/// Hybrid density matrix rho(x,k) = rho0 * 1 + sum_i rho_i q_i with Gaussian
/// state components sharing one envelope. Construction enforces the
/// normalization int tr(rho) = 1; positivity is tracked, not enforced.
class DensityField {
  public:
    DensityField(BasisPtr basis, GaussianField rho0, std::vector<GaussianField> rvec,
                 bool normalize = true);

    static DensityField zero_like(const DensityField& proto) {
        GaussianField z = proto.rho0().with_poly(PhasePolynomial(proto.n_c()));
        std::vector<GaussianField> rvec(proto.components(), z);
        return DensityField(proto.basis(), z, std::move(rvec), false);
    }

    const BasisPtr& basis() const { return basis_; }
    int n_c() const { return rho0_.n_c(); }
    int components() const { return static_cast<int>(rvec_.size()); }
    const GaussianField& rho0() const { return rho0_; }
    const GaussianField& r(int i) const { return rvec_.at(i); }
    const std::vector<GaussianField>& rvec() const { return rvec_; }

    double max_abs_coeff() const {
        double m = rho0_.poly().max_abs_coeff();
        for (const auto& f : rvec_) m = std::max(m, f.poly().max_abs_coeff());
        return m;
    }

    /// int tr(rho) = n * int rho0 (the q_i are traceless).
    double total_trace() const { return basis_->dim() * integrate(rho0_); }

    Matrix evaluate(const PhasePoint& p) const {
        Matrix m = rho0_.evaluate(p) * basis_->identity();
        for (int i = 0; i < components(); ++i) m += rvec_[i].evaluate(p) * basis_->q(i);
        return m;
    }

    DensityField& operator+=(const DensityField& o);
    DensityField& operator*=(double s);
    friend DensityField operator+(DensityField a, const DensityField& b) { return a += b; }
    friend DensityField operator*(DensityField a, double s) { return a *= s; }
    friend DensityField operator*(double s, DensityField a) { return a *= s; }

    void require_compatible(const DensityField& o) const;

  private:
    BasisPtr basis_;
    GaussianField rho0_;
    std::vector<GaussianField> rvec_;
};

/// n x n matrix of complex phase-space polynomials: the operator-level
/// representation used by brackets that mix operator products with Poisson
/// brackets, and by the non-derivation checks.
class PolyMatrix {
  public:
    PolyMatrix(int n, int n_c)
        : n_(n), n_c_(n_c), entries_(static_cast<size_t>(n) * n, ComplexPolynomial(n_c)) {}

    static PolyMatrix identity(int n, int n_c) {
        PolyMatrix m(n, n_c);
        for (int i = 0; i < n; ++i) m.at(i, i) = ComplexPolynomial::constant(n_c, {1.0, 0.0});
        return m;
    }

    static PolyMatrix from_observable(const HybridObservable& obs);
    static PolyMatrix from_constant(const Matrix& q, int n_c);

    int n() const { return n_; }
    int n_c() const { return n_c_; }
    ComplexPolynomial& at(int i, int j) { return entries_[static_cast<size_t>(i) * n_ + j]; }
    const ComplexPolynomial& at(int i, int j) const {
        return entries_[static_cast<size_t>(i) * n_ + j];
    }

    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix scaled(Complex s) const;
    PolyMatrix adjoint() const;
    ComplexPolynomial trace() const;

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, e.max_abs_coeff());
        return m;
    }

    /// Largest coefficient magnitude of M - M^dagger.
    double hermiticity_defect() const { return (*this - adjoint()).max_abs_coeff(); }

    Matrix evaluate(const PhasePoint& p) const {
        Matrix m(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = at(i, j).evaluate(p);
        return m;
    }

  private:
    int n_;
    int n_c_;
    std::vector<ComplexPolynomial> entries_;
};

/// Entrywise Poisson bracket with matrix-ordered products,
/// sum_i (dA/dx_i * dB/dk_i - dA/dk_i * dB/dx_i).
PolyMatrix poisson_bracket(const PolyMatrix& a, const PolyMatrix& b);

/// Operator-level quantum bracket (A,B)_q = (AB - BA)/(i hbar).
PolyMatrix commutator_bracket(const PolyMatrix& a, const PolyMatrix& b, double hbar);

/// Hybrid observable -> matrix form and the exact inverse (coefficients must
/// come out real; the imaginary defect is returned for diagnostics).
HybridObservable observable_from_matrix(const PolyMatrix& m, const BasisPtr& basis,
                                        double* imag_defect = nullptr);

}  // namespace hybridlie
