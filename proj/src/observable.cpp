#include "hybridlie/observable.hpp"

namespace hybridlie {

HybridObservable HybridObservable::quantal(BasisPtr basis, int n_c, const Matrix& q) {
    if (!is_hermitian(q, 1e-10))
        throw std::invalid_argument("HybridObservable::quantal: operator not Hermitian");
    auto [scalar, coeffs] = expand_in_basis(q, *basis);
    PhasePolynomial a0 = PhasePolynomial::constant(n_c, scalar.real());
    std::vector<PhasePolynomial> avec;
    avec.reserve(basis->size());
    for (int i = 0; i < basis->size(); ++i)
        avec.push_back(PhasePolynomial::constant(n_c, coeffs(i).real()));
    return HybridObservable(std::move(basis), std::move(a0), std::move(avec));
}

DensityField::DensityField(BasisPtr basis, GaussianField rho0, std::vector<GaussianField> rvec,
                           bool normalize)
    : basis_(std::move(basis)), rho0_(std::move(rho0)), rvec_(std::move(rvec)) {
    if (!basis_) throw std::invalid_argument("DensityField: null basis");
    if (rvec_.size() != static_cast<size_t>(basis_->size()))
        throw std::invalid_argument("DensityField: component count mismatch");
    for (const auto& f : rvec_)
        if (!f.same_envelope(rho0_))
            throw std::invalid_argument("DensityField: components must share one envelope");
    if (normalize) {
        double tr = total_trace();
        if (!(tr > 0.0) || !std::isfinite(tr))
            throw std::invalid_argument("DensityField: total trace must be positive");
        double s = 1.0 / tr;
        rho0_ *= s;
        for (auto& f : rvec_) f *= s;
    }
}

DensityField& DensityField::operator+=(const DensityField& o) {
    require_compatible(o);
    rho0_ += o.rho0_;
    for (int i = 0; i < components(); ++i) rvec_[i] += o.rvec_[i];
    return *this;
}

DensityField& DensityField::operator*=(double s) {
    rho0_ *= s;
    for (auto& f : rvec_) f *= s;
    return *this;
}

void DensityField::require_compatible(const DensityField& o) const {
    if (basis_.get() != o.basis_.get())
        throw std::invalid_argument("DensityField: basis mismatch");
    if (!rho0_.same_envelope(o.rho0_))
        throw std::invalid_argument("DensityField: envelope mismatch");
}

PolyMatrix PolyMatrix::from_observable(const HybridObservable& obs) {
    const auto& basis = *obs.basis();
    PolyMatrix m(basis.dim(), obs.n_c());
    ComplexPolynomial a0 = to_complex(obs.a0());
    for (int r = 0; r < basis.dim(); ++r) m.at(r, r) += a0;
    for (int i = 0; i < obs.components(); ++i) {
        if (obs.a(i).is_zero()) continue;
        ComplexPolynomial ai = to_complex(obs.a(i));
        for (int r = 0; r < basis.dim(); ++r)
            for (int c = 0; c < basis.dim(); ++c) {
                Complex q = basis.q(i)(r, c);
                if (q != Complex(0.0, 0.0)) m.at(r, c) += ai * q;
            }
    }
    return m;
}

PolyMatrix PolyMatrix::from_constant(const Matrix& q, int n_c) {
    PolyMatrix m(static_cast<int>(q.rows()), n_c);
    for (int r = 0; r < m.n(); ++r)
        for (int c = 0; c < m.n(); ++c)
            if (q(r, c) != Complex(0.0, 0.0))
                m.at(r, c) = ComplexPolynomial::constant(n_c, q(r, c));
    return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    PolyMatrix r = *this;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(i, j) += o.at(i, j);
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    PolyMatrix r = *this;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(i, j) -= o.at(i, j);
    return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    PolyMatrix r(n_, n_c_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int l = 0; l < n_; ++l) {
                if (at(i, l).is_zero() || o.at(l, j).is_zero()) continue;
                r.at(i, j) += at(i, l) * o.at(l, j);
            }
    return r;
}

PolyMatrix PolyMatrix::scaled(Complex s) const {
    PolyMatrix r = *this;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(i, j) *= s;
    return r;
}

PolyMatrix PolyMatrix::adjoint() const {
    PolyMatrix r(n_, n_c_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            ComplexPolynomial conj(n_c_);
            const auto& src = at(j, i);
            for (const auto& [key, c] : src.terms())
                conj.add_term(src.codec().decode(key), std::conj(c));
            r.at(i, j) = std::move(conj);
        }
    return r;
}

ComplexPolynomial PolyMatrix::trace() const {
    ComplexPolynomial t(n_c_);
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

PolyMatrix poisson_bracket(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n() != b.n() || a.n_c() != b.n_c())
        throw std::invalid_argument("poisson_bracket: matrix dimension mismatch");
    const int n = a.n(), n_c = a.n_c();
    PolyMatrix r(n, n_c);
    for (int v = 0; v < n_c; ++v) {
        PolyMatrix dax(n, n_c), dak(n, n_c), dbx(n, n_c), dbk(n, n_c);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                dax.at(i, j) = a.at(i, j).derivative(xvar(v));
                dak.at(i, j) = a.at(i, j).derivative(kvar(n_c, v));
                dbx.at(i, j) = b.at(i, j).derivative(xvar(v));
                dbk.at(i, j) = b.at(i, j).derivative(kvar(n_c, v));
            }
        r = r + dax * dbk - dak * dbx;
    }
    return r;
}

PolyMatrix commutator_bracket(const PolyMatrix& a, const PolyMatrix& b, double hbar) {
    return (a * b - b * a).scaled(Complex(0.0, -1.0 / hbar));
}

HybridObservable observable_from_matrix(const PolyMatrix& m, const BasisPtr& basis,
                                        double* imag_defect) {
    if (m.n() != basis->dim())
        throw std::invalid_argument("observable_from_matrix: dimension mismatch");
    double defect = 0.0;
    ComplexPolynomial tr = m.trace();
    ComplexPolynomial a0c = tr * Complex(1.0 / basis->dim(), 0.0);
    defect = std::max(defect, max_imag_coeff(a0c));
    PhasePolynomial a0 = real_part(a0c);

    std::vector<PhasePolynomial> avec;
    avec.reserve(basis->size());
    const double inv = 2.0 / (basis->hbar() * basis->hbar());
    for (int i = 0; i < basis->size(); ++i) {
        // coeff_i = tr(M q_i) * 2 / hbar^2
        ComplexPolynomial ci(m.n_c());
        for (int r = 0; r < m.n(); ++r)
            for (int c = 0; c < m.n(); ++c) {
                Complex q = basis->q(i)(c, r);
                if (q != Complex(0.0, 0.0)) ci += m.at(r, c) * q;
            }
        ci *= Complex(inv, 0.0);
        defect = std::max(defect, max_imag_coeff(ci));
        avec.push_back(real_part(ci));
    }
    if (imag_defect) *imag_defect = defect;
    return HybridObservable(basis, std::move(a0), std::move(avec));
}

}  // namespace hybridlie
