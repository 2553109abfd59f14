#include "hybridlie/brackets.hpp"

namespace hybridlie {

HybridObservable heisenberg_bracket(const HybridObservable& a, const HybridObservable& b) {
    a.require_compatible(b);
    const auto& sc = a.basis()->structure();
    HybridObservable r = HybridObservable::zero(a.basis(), a.n_c());
    r.a0() = poisson_bracket(a.a0(), b.a0());
    for (int k = 0; k < a.components(); ++k) {
        if (!b.a(k).is_zero()) r.a(k) += poisson_bracket(a.a0(), b.a(k));
        if (!a.a(k).is_zero()) r.a(k) += poisson_bracket(a.a(k), b.a0());
    }
    for (const auto& e : sc.f_nonzero) {
        if (a.a(e.i).is_zero() || b.a(e.j).is_zero()) continue;
        r.a(e.k) += e.value * (a.a(e.i) * b.a(e.j));
    }
    return r;
}

HybridObservable ansatz_bracket(const HybridObservable& a, const HybridObservable& b,
                                double alpha, double beta, double gamma) {
    a.require_compatible(b);
    const auto& sc = a.basis()->structure();
    HybridObservable r = HybridObservable::zero(a.basis(), a.n_c());
    r.a0() = poisson_bracket(a.a0(), b.a0());
    for (int k = 0; k < a.components(); ++k) {
        if (!b.a(k).is_zero()) r.a(k) += poisson_bracket(a.a0(), b.a(k));
        if (!a.a(k).is_zero()) r.a(k) += poisson_bracket(a.a(k), b.a0());
    }
    if (alpha != 0.0) {
        for (int i = 0; i < a.components(); ++i) {
            if (a.a(i).is_zero() || b.a(i).is_zero()) continue;
            r.a0() += alpha * poisson_bracket(a.a(i), b.a(i));
        }
    }
    if (beta != 0.0) {
        for (const auto& e : sc.f_nonzero) {
            if (a.a(e.i).is_zero() || b.a(e.j).is_zero()) continue;
            r.a(e.k) += (beta * e.value) * (a.a(e.i) * b.a(e.j));
        }
    }
    if (gamma != 0.0) {
        for (const auto& e : sc.d_nonzero) {
            if (a.a(e.i).is_zero() || b.a(e.j).is_zero()) continue;
            r.a(e.k) += (gamma * e.value) * poisson_bracket(a.a(e.i), b.a(e.j));
        }
    }
    return r;
}

ComplexObservable complex_observable_from_matrix(const PolyMatrix& m, const BasisPtr& basis) {
    PolyMatrix adj = m.adjoint();
    PolyMatrix herm = (m + adj).scaled({0.5, 0.0});
    PolyMatrix anti = (m - adj).scaled({0.0, -0.5});  // (M - M^+)/(2i)
    return {observable_from_matrix(herm, basis), observable_from_matrix(anti, basis)};
}

PolyMatrix standard_bracket(const PolyMatrix& a, const PolyMatrix& b, double hbar) {
    PolyMatrix sym = poisson_bracket(a, b) - poisson_bracket(b, a);
    return commutator_bracket(a, b, hbar) + sym.scaled({0.5, 0.0});
}

ComplexObservable standard_bracket(const HybridObservable& a, const HybridObservable& b) {
    a.require_compatible(b);
    PolyMatrix r = standard_bracket(PolyMatrix::from_observable(a),
                                    PolyMatrix::from_observable(b), a.basis()->hbar());
    return complex_observable_from_matrix(r, a.basis());
}

PolyMatrix anderson_bracket(const PolyMatrix& a, const PolyMatrix& b, double hbar) {
    return commutator_bracket(a, b, hbar) + poisson_bracket(a, b);
}

ComplexObservable anderson_bracket(const HybridObservable& a, const HybridObservable& b) {
    a.require_compatible(b);
    PolyMatrix r = anderson_bracket(PolyMatrix::from_observable(a),
                                    PolyMatrix::from_observable(b), a.basis()->hbar());
    return complex_observable_from_matrix(r, a.basis());
}

HybridObservable schrodinger_bracket(const HybridObservable& h, const HybridObservable& b) {
    h.require_compatible(b);
    const auto& basis = *h.basis();
    const auto& sc = basis.structure();
    const double h2 = basis.hbar() * basis.hbar();
    HybridObservable r = HybridObservable::zero(h.basis(), h.n_c());
    r.a0() = poisson_bracket(h.a0(), b.a0());
    for (int k = 0; k < h.components(); ++k)
        if (!b.a(k).is_zero()) r.a(k) += poisson_bracket(h.a0(), b.a(k));
    for (const auto& e : sc.f_nonzero) {
        if (h.a(e.i).is_zero() || b.a(e.j).is_zero()) continue;
        r.a(e.k) += e.value * (h.a(e.i) * b.a(e.j));
    }
    // g_ij = (2/hbar^2) tr(q_i q_j) = delta_ij for an orthonormal basis.
    for (int i = 0; i < h.components(); ++i) {
        if (h.a(i).is_zero() || b.a(i).is_zero()) continue;
        r.a0() += (h2 / (2.0 * basis.dim())) * poisson_bracket(h.a(i), b.a(i));
    }
    return r;
}

DensityField schrodinger_bracket(const HybridObservable& h, const DensityField& rho) {
    if (h.basis().get() != rho.basis().get())
        throw std::invalid_argument("schrodinger_bracket: basis mismatch");
    if (h.n_c() != rho.n_c())
        throw std::invalid_argument("schrodinger_bracket: classical dimension mismatch");
    const auto& basis = *h.basis();
    const auto& sc = basis.structure();
    const double h2 = basis.hbar() * basis.hbar();

    DensityField out = DensityField::zero_like(rho);
    GaussianField r0 = poisson_bracket_state(h.a0(), rho.rho0());
    std::vector<GaussianField> rv;
    rv.reserve(rho.components());
    for (int k = 0; k < rho.components(); ++k)
        rv.push_back(poisson_bracket_state(h.a0(), rho.r(k)));
    for (const auto& e : sc.f_nonzero) {
        if (h.a(e.i).is_zero() || rho.r(e.j).is_zero()) continue;
        rv[e.k] += e.value * (h.a(e.i) * rho.r(e.j));
    }
    for (int i = 0; i < rho.components(); ++i) {
        if (h.a(i).is_zero() || rho.r(i).is_zero()) continue;
        r0 += (h2 / (2.0 * basis.dim())) * poisson_bracket_state(h.a(i), rho.r(i));
    }
    return DensityField(rho.basis(), std::move(r0), std::move(rv), /*normalize=*/false);
}

namespace {

HybridObservable apply_bracket(const BracketKind& kind, const HybridObservable& a,
                               const HybridObservable& b) {
    switch (kind.tag) {
        case BracketKind::Tag::Canonical: return heisenberg_bracket(a, b);
        case BracketKind::Tag::Ansatz:
            return ansatz_bracket(a, b, kind.alpha, kind.beta, kind.gamma);
        default:
            // Standard and Anderson iterate at operator level; see below.
            throw std::logic_error("apply_bracket: matrix-level kind");
    }
}

double jacobi_residual_matrix(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                              double hbar, bool standard, double* scale) {
    auto bk = [&](const PolyMatrix& x, const PolyMatrix& y) {
        return standard ? standard_bracket(x, y, hbar) : anderson_bracket(x, y, hbar);
    };
    PolyMatrix t1 = bk(a, bk(b, c));
    PolyMatrix t2 = bk(b, bk(c, a));
    PolyMatrix t3 = bk(c, bk(a, b));
    if (scale)
        *scale = std::max({1.0, t1.max_abs_coeff(), t2.max_abs_coeff(), t3.max_abs_coeff()});
    return (t1 + t2 + t3).max_abs_coeff();
}

}  // namespace

double jacobi_residual(const BracketKind& kind, const HybridObservable& a,
                       const HybridObservable& b, const HybridObservable& c,
                       double* scale) {
    a.require_compatible(b);
    a.require_compatible(c);
    if (kind.tag == BracketKind::Tag::Standard || kind.tag == BracketKind::Tag::Anderson) {
        return jacobi_residual_matrix(PolyMatrix::from_observable(a),
                                      PolyMatrix::from_observable(b),
                                      PolyMatrix::from_observable(c), a.basis()->hbar(),
                                      kind.tag == BracketKind::Tag::Standard, scale);
    }
    HybridObservable t1 = apply_bracket(kind, a, apply_bracket(kind, b, c));
    HybridObservable t2 = apply_bracket(kind, b, apply_bracket(kind, c, a));
    HybridObservable t3 = apply_bracket(kind, c, apply_bracket(kind, a, b));
    if (scale)
        *scale = std::max({1.0, t1.max_abs_coeff(), t2.max_abs_coeff(), t3.max_abs_coeff()});
    return (t1 + t2 + t3).max_abs_coeff();
}

double pair_expectation(const HybridObservable& x, const DensityField& rho) {
    if (x.basis().get() != rho.basis().get())
        throw std::invalid_argument("pair_expectation: basis mismatch");
    const auto& basis = *x.basis();
    // tr(X rho) = n X0 rho0 + sum_ij X_i rho_j tr(q_i q_j),
    // tr(q_i q_j) = (hbar^2/2) delta_ij.
    double total = basis.dim() * integrate(x.a0() * rho.rho0());
    const double w = 0.5 * basis.hbar() * basis.hbar();
    for (int i = 0; i < x.components(); ++i) {
        if (x.a(i).is_zero() || rho.r(i).is_zero()) continue;
        total += w * integrate(x.a(i) * rho.r(i));
    }
    return total;
}

double adjoint_identity_residual(const HybridObservable& a, const HybridObservable& h,
                                 const DensityField& rho, double* scale) {
    double lhs = pair_expectation(a, schrodinger_bracket(h, rho));
    double rhs = pair_expectation(heisenberg_bracket(a, h), rho);
    if (scale) *scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs);
}

}  // namespace hybridlie
