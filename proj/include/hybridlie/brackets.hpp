#pragma once

#include "hybridlie/observable.hpp"

namespace hybridlie {

/// Selects which hybrid dynamical bracket to exercise. Canonical is the Lie
/// bracket; Standard and Anderson are the negative controls; Ansatz is the
/// three-parameter family whose Jacobi landscape singles out (0, 1, 0).
struct BracketKind {
    enum class Tag { Canonical, Standard, Anderson, Ansatz };
    Tag tag = Tag::Canonical;
    double alpha = 0.0;
    double beta = 1.0;
    double gamma = 0.0;

    static BracketKind canonical() { return {Tag::Canonical, 0.0, 1.0, 0.0}; }
    static BracketKind standard() { return {Tag::Standard, 0.0, 1.0, 0.0}; }
    static BracketKind anderson() { return {Tag::Anderson, 0.0, 1.0, 0.0}; }
    static BracketKind ansatz(double a, double b, double g) { return {Tag::Ansatz, a, b, g}; }

    const char* name() const {
        switch (tag) {
            case Tag::Canonical: return "canonical";
            case Tag::Standard: return "standard";
            case Tag::Anderson: return "anderson";
            case Tag::Ansatz: return "ansatz";
        }
        return "?";
    }
};

/// The canonical hybrid Lie bracket,
///   (A, B) = {A0, B0} + {A0, B}.q + {A, B0}.q + (A x B).q,
/// with (A x B)^k = f_ijk A_i B_j. Bilinear, antisymmetric, satisfies the
/// Jacobi identity for any finite quantum dimension.
HybridObservable heisenberg_bracket(const HybridObservable& a, const HybridObservable& b);

/// Three-parameter bracket family on the coefficient representation:
///   (C q_i, C' q_j) = alpha {C,C'} delta_ij 1 + beta C C' f_ijk q_k
///                     + gamma {C,C'} d_ijk q_k,
/// extended bilinearly with the classical-sector rules. Ansatz(0,1,0)
/// coincides with the canonical bracket on all inputs.
HybridObservable ansatz_bracket(const HybridObservable& a, const HybridObservable& b,
                                double alpha, double beta, double gamma);

/// Observable extended to the complex span A = re + i im with both parts
/// Hermitian; brackets that mix operator products with Poisson brackets can
/// leave the Hermitian sector, and this keeps the full result.
struct ComplexObservable {
    HybridObservable re;
    HybridObservable im;

    double max_abs_coeff() const { return std::max(re.max_abs_coeff(), im.max_abs_coeff()); }
};

/// Splits M = H + i N with H, N Hermitian and expands both in the basis.
ComplexObservable complex_observable_from_matrix(const PolyMatrix& m, const BasisPtr& basis);

/// The frequently used antisymmetric bracket
///   (A,B)_s = (A,B)_q + (1/2)({A,B}_c - {B,A}_c),
/// computed at operator level. Antisymmetric, fails the Jacobi identity.
PolyMatrix standard_bracket(const PolyMatrix& a, const PolyMatrix& b, double hbar);
ComplexObservable standard_bracket(const HybridObservable& a, const HybridObservable& b);

/// The one-sided proposal (A,B)_a = (A,B)_q + {A,B}_c. Linear, behaves
/// correctly on decoupled sectors, but is not antisymmetric (and can leave
/// the Hermitian sector on diagonal arguments).
PolyMatrix anderson_bracket(const PolyMatrix& a, const PolyMatrix& b, double hbar);
ComplexObservable anderson_bracket(const HybridObservable& a, const HybridObservable& b);

/// Adjoint (Schrodinger-picture) bracket on two coefficient observables,
///   (A, B)' = {A0, B0} + {A0, B}.q + (A x B).q
///             + (hbar^2 / 2n) sum_ij g_ij {A_i, B_j},
/// with g_ij = (2/hbar^2) tr(q_i q_j). Note the {A, B0}.q term of the
/// Heisenberg bracket is absent; the bracket is neither antisymmetric nor a
/// derivation.
HybridObservable schrodinger_bracket(const HybridObservable& h, const HybridObservable& b);

/// Adjoint bracket driving the density matrix, d rho / dt = (H, rho)'.
DensityField schrodinger_bracket(const HybridObservable& h, const DensityField& rho);

/// Max-abs coefficient of the cyclic sum (A,(B,C)) + (B,(C,A)) + (C,(A,B))
/// under the chosen bracket; computed for every kind, never assumed zero.
/// `scale`, when given, receives the largest coefficient magnitude among the
/// double brackets, the natural yardstick for cancellation error.
double jacobi_residual(const BracketKind& kind, const HybridObservable& a,
                       const HybridObservable& b, const HybridObservable& c,
                       double* scale = nullptr);

/// Unnormalized pairing <<X rho>> = int tr(X rho), exact via Gaussian moments.
double pair_expectation(const HybridObservable& x, const DensityField& rho);

/// | <<A (H,rho)'>> - <<(A,H) rho>> |, the defining identity of the adjoint
/// bracket; `scale` receives max(1, |lhs|, |rhs|).
double adjoint_identity_residual(const HybridObservable& a, const HybridObservable& h,
                                 const DensityField& rho, double* scale = nullptr);

}  // namespace hybridlie
