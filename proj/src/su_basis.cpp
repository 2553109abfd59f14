#include "hybridlie/su_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace hybridlie {

SuBasis::SuBasis(int n, double hbar, std::vector<Matrix> lambdas)
    : n_(n), hbar_(hbar), lambdas_(std::move(lambdas)) {
    qs_.reserve(lambdas_.size());
    for (const auto& l : lambdas_) qs_.push_back(0.5 * hbar_ * l);
}

SuBasis SuBasis::build(int n, double hbar) {
    if (n < 2)
        throw std::invalid_argument("SuBasis: dimension must be at least 2");
    if (!(hbar > 0.0))
        throw std::invalid_argument("SuBasis: hbar must be positive");

    std::vector<Matrix> lambdas;
    lambdas.reserve(static_cast<size_t>(n) * n - 1);

    // Symmetric pairs: 1 at (j,k) and (k,j).
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Matrix m = Matrix::Zero(n, n);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            lambdas.push_back(m);
        }
    // Antisymmetric pairs: -i at (j,k), +i at (k,j).
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Matrix m = Matrix::Zero(n, n);
            m(j, k) = Complex(0.0, -1.0);
            m(k, j) = Complex(0.0, 1.0);
            lambdas.push_back(m);
        }
    // Diagonal matrices: sqrt(2/(l(l+1))) diag(1,...,1,-l,0,...,0).
    for (int l = 1; l < n; ++l) {
        Matrix m = Matrix::Zero(n, n);
        double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int j = 0; j < l; ++j) m(j, j) = scale;
        m(l, l) = -scale * l;
        lambdas.push_back(m);
    }
    return SuBasis(n, hbar, std::move(lambdas));
}

SuBasis SuBasis::from_matrices(int n, double hbar, std::vector<Matrix> lambdas) {
    if (n < 2)
        throw std::invalid_argument("SuBasis: dimension must be at least 2");
    if (!(hbar > 0.0))
        throw std::invalid_argument("SuBasis: hbar must be positive");
    if (lambdas.size() != static_cast<size_t>(n) * n - 1)
        throw std::invalid_argument("SuBasis: expected n^2-1 matrices");
    const double tol = 1e-10;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        const auto& li = lambdas[i];
        if (li.rows() != n || li.cols() != n)
            throw std::invalid_argument("SuBasis: matrix dimension mismatch");
        if (!is_hermitian(li, tol))
            throw std::invalid_argument("SuBasis: matrix not Hermitian");
        if (std::abs(li.trace()) > tol)
            throw std::invalid_argument("SuBasis: matrix not traceless");
        for (size_t j = 0; j <= i; ++j) {
            Complex g = (li * lambdas[j]).trace();
            double expected = i == j ? 2.0 : 0.0;
            if (std::abs(g - expected) > tol)
                throw std::invalid_argument("SuBasis: tr(lam_i lam_j) != 2 delta_ij");
        }
    }
    return SuBasis(n, hbar, std::move(lambdas));
}

const StructureConstants& SuBasis::structure() const {
    if (!structure_)
        structure_ = std::make_shared<const StructureConstants>(structure_constants(*this));
    return *structure_;
}

StructureConstants structure_constants(const SuBasis& basis) {
    const int m = basis.size();
    StructureConstants sc;
    sc.n = basis.dim();
    sc.m = m;
    sc.f.assign(static_cast<size_t>(m) * m * m, 0.0);
    sc.d.assign(static_cast<size_t>(m) * m * m, 0.0);

    const double tol = 1e-12;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Matrix comm = basis.lambda(i) * basis.lambda(j) - basis.lambda(j) * basis.lambda(i);
            Matrix anti = basis.lambda(i) * basis.lambda(j) + basis.lambda(j) * basis.lambda(i);
            for (int k = 0; k < m; ++k) {
                Complex fv = Complex(0.0, -0.25) * (comm * basis.lambda(k)).trace();
                Complex dv = 0.25 * (anti * basis.lambda(k)).trace();
                if (std::abs(fv.imag()) > tol || std::abs(dv.imag()) > tol)
                    throw std::runtime_error("structure_constants: non-real tensor entry");
                size_t idx = (static_cast<size_t>(i) * m + j) * m + k;
                double f = std::abs(fv.real()) > tol ? fv.real() : 0.0;
                double d = std::abs(dv.real()) > tol ? dv.real() : 0.0;
                sc.f[idx] = f;
                sc.d[idx] = d;
                if (f != 0.0) sc.f_nonzero.push_back({i, j, k, f});
                if (d != 0.0) sc.d_nonzero.push_back({i, j, k, d});
            }
        }
    return sc;
}

std::pair<Complex, Eigen::VectorXcd> expand_in_basis(const Matrix& q, const SuBasis& basis) {
    if (q.rows() != basis.dim() || q.cols() != basis.dim())
        throw std::invalid_argument("expand_in_basis: dimension mismatch");
    const double h2 = basis.hbar() * basis.hbar();
    Eigen::VectorXcd coeffs(basis.size());
    // tr(q_i q_j) = (hbar^2/2) delta_ij fixes the dual pairing.
    for (int i = 0; i < basis.size(); ++i)
        coeffs(i) = (q * basis.q(i)).trace() * 2.0 / h2;
    Complex scalar = q.trace() / static_cast<double>(basis.dim());
    return {scalar, coeffs};
}

}  // namespace hybridlie
