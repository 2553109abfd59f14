#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

namespace hybridlie {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

/// Quantum dynamical bracket (A,B)_q = [A,B] / (i hbar). Hermitian inputs
/// give a Hermitian result.
inline Matrix commutator_bracket(const Matrix& a, const Matrix& b, double hbar) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("commutator_bracket: dimension mismatch");
    return (a * b - b * a) / Complex(0.0, hbar);
}

/// Unique split Q = c*1 + Qt with tr(Qt) = 0, c = tr(Q)/n.
inline std::pair<Complex, Matrix> traceless_split(const Matrix& q) {
    const auto n = q.rows();
    Complex c = q.trace() / static_cast<double>(n);
    return {c, q - c * Matrix::Identity(n, n)};
}

/// Structure constants of su(n) in the generalized Gell-Mann basis:
/// lam_i lam_j = (2/n) delta_ij + d_ijk lam_k + i f_ijk lam_k,
/// with f totally antisymmetric, d totally symmetric, f_ilm f_jlm = n delta_ij.
struct StructureConstants {
    int n = 0;
    int m = 0;  // n^2 - 1
    std::vector<double> f;  // dense, (i*m + j)*m + k
    std::vector<double> d;

    struct Entry {
        int i, j, k;
        double value;
    };
    std::vector<Entry> f_nonzero;
    std::vector<Entry> d_nonzero;

    double fijk(int i, int j, int k) const { return f[(static_cast<size_t>(i) * m + j) * m + k]; }
    double dijk(int i, int j, int k) const { return d[(static_cast<size_t>(i) * m + j) * m + k]; }
};

/// Generalized Gell-Mann basis of su(n) scaled by hbar: q_i = (hbar/2) lam_i.
/// Ordering contract (fixed so coefficient vectors are reproducible):
/// symmetric off-diagonal pairs in row-major order, then antisymmetric pairs
/// in the same order, then the diagonal matrices.
class SuBasis {
  public:
    static SuBasis build(int n, double hbar = 1.0);

    /// Wraps externally supplied matrices after validating hermiticity,
    /// tracelessness and the orthonormality tr(lam_i lam_j) = 2 delta_ij.
    static SuBasis from_matrices(int n, double hbar, std::vector<Matrix> lambdas);

    int dim() const { return n_; }
    double hbar() const { return hbar_; }
    int size() const { return static_cast<int>(lambdas_.size()); }

    const Matrix& lambda(int i) const { return lambdas_.at(i); }
    const Matrix& q(int i) const { return qs_.at(i); }
    Matrix identity() const { return Matrix::Identity(n_, n_); }

    const StructureConstants& structure() const;

  private:
    SuBasis(int n, double hbar, std::vector<Matrix> lambdas);

    int n_;
    double hbar_;
    std::vector<Matrix> lambdas_;
    std::vector<Matrix> qs_;
    mutable std::shared_ptr<const StructureConstants> structure_;
};

/// f_ijk = -(i/4) tr([lam_i, lam_j] lam_k), d_ijk = (1/4) tr({lam_i, lam_j} lam_k).
StructureConstants structure_constants(const SuBasis& basis);

/// Expansion Q = scalar*1 + sum_i coeff_i q_i; exact up to rounding, complex
/// coefficients allowed for non-Hermitian Q.
std::pair<Complex, Eigen::VectorXcd> expand_in_basis(const Matrix& q, const SuBasis& basis);

}  // namespace hybridlie
